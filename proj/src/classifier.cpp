#include "whmin/classifier.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "whmin/errors.hpp"

namespace whmin {

double mahalanobis_sq(const WminModel& model, const FeatureVector& f) {
  if (static_cast<int>(f.size()) != model.mu.size()) {
    throw std::invalid_argument("mahalanobis_sq: feature dimension mismatch");
  }
  Eigen::Map<const Eigen::VectorXd> x(f.data(), static_cast<Eigen::Index>(f.size()));
  const Eigen::VectorXd diff = x - model.mu;
  return diff.dot(model.sigma_inv * diff);
}

double mahalanobis_sq(const WminModel& model, const Word& u) {
  if (u.rank() != model.rank) {
    throw std::invalid_argument("mahalanobis_sq: word rank " + std::to_string(u.rank()) +
                                " does not match model rank " + std::to_string(model.rank));
  }
  if (u.length() < 2) {
    throw std::invalid_argument("mahalanobis_sq: needs |u| >= 2, got " +
                                std::to_string(u.length()));
  }
  return mahalanobis_sq(model, feature_vector(u));
}

Decision decide(const WminModel& model, const FeatureVector& f) {
  // Strict comparison; a distance equal to rho is non-minimal.
  return mahalanobis_sq(model, f) < model.rho ? Decision::minimal : Decision::non_minimal;
}

Decision decide(const WminModel& model, const Word& u) {
  return mahalanobis_sq(model, u) < model.rho ? Decision::minimal : Decision::non_minimal;
}

double empirical_quantile_threshold(std::vector<double> distances, double alpha) {
  if (distances.empty()) {
    throw std::invalid_argument("empirical_quantile_threshold: no distances");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("empirical_quantile_threshold: alpha must be in (0,1)");
  }
  std::sort(distances.begin(), distances.end());
  const auto n = static_cast<double>(distances.size());
  const auto need =
      static_cast<std::size_t>(std::ceil((1.0 - alpha) * n - 1e-9));
  // The count of samples strictly below distances[k] is the index of the first
  // occurrence of that value.
  std::size_t first_of_value = 0;
  for (std::size_t k = 0; k < distances.size(); ++k) {
    if (k > 0 && distances[k] != distances[k - 1]) first_of_value = k;
    if (first_of_value >= need) return distances[k];
  }
  // No sample value keeps enough mass strictly below it; step just past the max.
  return std::nextafter(distances.back(), std::numeric_limits<double>::infinity());
}

void validate_sigma_inv(const Eigen::MatrixXd& sigma_inv) {
  if (sigma_inv.rows() != sigma_inv.cols() || sigma_inv.rows() == 0) {
    throw ParseError("sigma_inv must be a non-empty square matrix");
  }
  const double scale = std::max(1.0, sigma_inv.cwiseAbs().maxCoeff());
  const double asym = (sigma_inv - sigma_inv.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-8 * scale) {
    throw ParseError("sigma_inv asymmetry " + std::to_string(asym) + " exceeds tolerance");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sigma_inv, Eigen::EigenvaluesOnly);
  const double floor = -1e-8 * sigma_inv.trace() / static_cast<double>(sigma_inv.rows());
  if (eig.eigenvalues().minCoeff() < floor) {
    throw ParseError("sigma_inv is not positive semi-definite within tolerance");
  }
}

WminModel train_wmin(int rank, const WminTrainConfig& cfg, Seed seed) {
  const int d = feature_dim(rank);
  if (cfg.sample_size < 10 * d) {
    throw std::invalid_argument("train_wmin: sample_size must be >= 10*d = " +
                                std::to_string(10 * d));
  }
  if (!(cfg.alpha > 0.0 && cfg.alpha < 0.5)) {
    throw std::invalid_argument("train_wmin: alpha must be in (0, 0.5)");
  }
  if (cfg.len_min < 2 || cfg.len_max < cfg.len_min) {
    throw std::invalid_argument("train_wmin: need 2 <= len_min <= len_max");
  }
  if (!(cfg.train_fraction > 0.0 && cfg.train_fraction < 1.0)) {
    throw std::invalid_argument("train_wmin: train_fraction must be in (0,1)");
  }

  Rng rng(seed);
  const int total = cfg.sample_size;
  const int split = std::max(d + 2, static_cast<int>(cfg.train_fraction * total));
  if (split >= total) throw std::invalid_argument("train_wmin: empty held-out split");

  Eigen::MatrixXd train(split, d);
  std::vector<FeatureVector> held;
  held.reserve(static_cast<std::size_t>(total - split));
  for (int i = 0; i < total; ++i) {
    const int len = rng.range_int(cfg.len_min, cfg.len_max);
    Word w(rank);
    for (int tries = 0;; ++tries) {
      w = random_cyclically_reduced_word(rank, len, rng);
      if (!cfg.certify || cfg.certify(w)) break;
      if (tries >= 200) {
        throw TrainingError("train_wmin: could not certify a minimal word of length " +
                            std::to_string(len));
      }
    }
    const FeatureVector f = feature_vector(w);
    if (i < split) {
      train.row(i) = Eigen::Map<const Eigen::VectorXd>(f.data(), d);
    } else {
      held.push_back(f);
    }
  }

  WminModel model;
  model.rank = rank;
  model.alpha = cfg.alpha;
  model.ridge = cfg.ridge_rel;
  model.mu = train.colwise().mean().transpose();
  const Eigen::MatrixXd centered = train.rowwise() - model.mu.transpose();
  Eigen::MatrixXd sigma = (centered.adjoint() * centered) / static_cast<double>(split - 1);
  const double trace = sigma.trace();
  if (!(trace > 0)) throw TrainingError("train_wmin: degenerate covariance (zero trace)");
  // Feature vectors live on a simplex, so sigma is rank-deficient; the relative
  // ridge makes it invertible.
  sigma.diagonal().array() += cfg.ridge_rel * trace / static_cast<double>(d);
  Eigen::LDLT<Eigen::MatrixXd> ldlt(sigma);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) {
    throw TrainingError("train_wmin: covariance numerically singular even after ridge");
  }
  model.sigma_inv = ldlt.solve(Eigen::MatrixXd::Identity(d, d));
  model.sigma_inv = ((model.sigma_inv + model.sigma_inv.transpose()) / 2.0).eval();

  std::vector<double> dists;
  dists.reserve(held.size());
  for (const auto& f : held) dists.push_back(mahalanobis_sq(model, f));
  model.rho = empirical_quantile_threshold(std::move(dists), cfg.alpha);
  return model;
}

}  // namespace whmin
