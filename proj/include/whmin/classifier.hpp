#pragma once

#include <Eigen/Core>
#include <functional>
#include <vector>

#include "whmin/feature.hpp"
#include "whmin/rng.hpp"
#include "whmin/word.hpp"

namespace whmin {

// Minimality classifier: a word is called minimal when the squared Mahalanobis
// distance of its feature vector to the minimal-class mean stays strictly
// below rho.
struct WminModel {
  int rank = 0;
  Eigen::VectorXd mu;
  Eigen::MatrixXd sigma_inv;
  double rho = 0;
  double alpha = 0;
  double ridge = 0;  // relative ridge applied before inversion
};

enum class Decision { minimal, non_minimal };

double mahalanobis_sq(const WminModel& model, const FeatureVector& f);
double mahalanobis_sq(const WminModel& model, const Word& u);  // requires |u| >= 2
Decision decide(const WminModel& model, const FeatureVector& f);
Decision decide(const WminModel& model, const Word& u);

struct WminTrainConfig {
  int sample_size = 0;      // >= 10 * feature_dim(rank)
  double alpha = 0.001;     // in (0, 0.5)
  int len_min = 10;         // >= 2
  int len_max = 250;
  double ridge_rel = 1e-6;
  double train_fraction = 0.8;  // mu/sigma split; rho comes from the rest
  // When set, resample words until the oracle accepts them (WR certification).
  std::function<bool(const Word&)> certify;
};

// mu and sigma from the training split of random cyclically reduced words;
// rho is the empirical (1-alpha) quantile of held-out distances.
WminModel train_wmin(int rank, const WminTrainConfig& cfg, Seed seed);

// Smallest sample value v with |{d_i < v}| >= ceil((1-alpha)*N); one ulp past
// the maximum when no sample value qualifies.
double empirical_quantile_threshold(std::vector<double> distances, double alpha);

// Enforces the stored-model invariants (symmetry within 1e-8, eigenvalues
// >= -1e-8 * trace/d); throws ParseError on violation.
void validate_sigma_inv(const Eigen::MatrixXd& sigma_inv);

}  // namespace whmin
