#include "whmin/model_io.hpp"

#include <fstream>

#include "json.hpp"
#include "whmin/engines.hpp"
#include "whmin/errors.hpp"

namespace whmin {

namespace {

using nlohmann::json;

constexpr int kModelVersion = 1;

json vector_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

Eigen::VectorXd vector_from_json(const json& j, int dim, const char* key) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim) {
    throw ParseError(std::string("model field '") + key + "' must be an array of length " +
                     std::to_string(dim));
  }
  Eigen::VectorXd out(dim);
  for (int i = 0; i < dim; ++i) out[i] = j[static_cast<std::size_t>(i)].get<double>();
  return out;
}

}  // namespace

ModelBundle train_model_bundle(int rank, const BundleTrainConfig& cfg, Seed seed) {
  ModelBundle bundle;
  WminTrainConfig wcfg = cfg.wmin;
  // The classifier trains on raw random words by default; certification is
  // flag-gated and only available where WR is affordable.
  if (cfg.certify_training && rank <= 4) {
    wcfg.certify = wr_minimality_oracle(rank);
  }
  bundle.wmin = train_wmin(rank, wcfg, derive_seed(seed, 1));
  const MinimalityOracle oracle = default_minimality_oracle(rank, cfg.certify_training);
  CentroidTrainOptions centroid_options = cfg.centroid_options;
  // Rank 2 has no words with exactly one Nielsen reducer (the right/left pair
  // always reduces together there), so exclusive sampling cannot fill any
  // class; fall back to shared attribution.
  if (rank == 2) centroid_options.allow_shared_fallback = true;
  // From rank 6 up a uniform Whitehead automorphism touches most generators
  // and its image is reduced by many Nielsen automorphisms, starving the
  // exclusive classes; inflating with Nielsen automorphisms keeps them filled.
  if (rank >= 6) centroid_options.inflate_nielsen_only = true;
  bundle.centroids = train_centroids(rank, cfg.centroid_max_length, cfg.centroid_samples_per_class,
                                     derive_seed(seed, 2), oracle, centroid_options);
  return bundle;
}

std::string model_to_json(const ModelBundle& bundle) {
  json j;
  j["version"] = kModelVersion;
  j["rank"] = bundle.wmin.rank;
  j["alpha"] = bundle.wmin.alpha;
  j["ridge"] = bundle.wmin.ridge;
  j["mu"] = vector_to_json(bundle.wmin.mu);
  j["sigma_inv"] = matrix_to_json(bundle.wmin.sigma_inv);
  j["rho"] = bundle.wmin.rho;
  j["centroid_max_length"] = bundle.centroids.max_length;
  json cents = json::array();
  for (std::size_t k = 0; k < bundle.centroids.nielsen.size(); ++k) {
    json c;
    c["aut"] = to_string(bundle.centroids.nielsen[k]);
    c["count"] = bundle.centroids.sample_counts[k];
    json vec = json::array();
    for (double v : bundle.centroids.centroids[k]) vec.push_back(v);
    c["vector"] = std::move(vec);
    cents.push_back(std::move(c));
  }
  j["centroids"] = std::move(cents);
  return j.dump();
}

ModelBundle model_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed model file: ") + e.what());
  }
  try {
    const int version = j.at("version").get<int>();
    if (version != kModelVersion) {
      throw ParseError("unsupported model version " + std::to_string(version) + " (expected " +
                       std::to_string(kModelVersion) + ")");
    }
    ModelBundle bundle;
    const int rank = j.at("rank").get<int>();
    if (rank < 2) throw ParseError("model rank must be >= 2");
    const int d = feature_dim(rank);
    bundle.wmin.rank = rank;
    bundle.wmin.alpha = j.at("alpha").get<double>();
    bundle.wmin.ridge = j.at("ridge").get<double>();
    bundle.wmin.rho = j.at("rho").get<double>();
    bundle.wmin.mu = vector_from_json(j.at("mu"), d, "mu");
    const json& rows = j.at("sigma_inv");
    if (!rows.is_array() || static_cast<int>(rows.size()) != d) {
      throw ParseError("model field 'sigma_inv' must be a " + std::to_string(d) + "x" +
                       std::to_string(d) + " matrix");
    }
    bundle.wmin.sigma_inv.resize(d, d);
    for (int r = 0; r < d; ++r) {
      bundle.wmin.sigma_inv.row(r) =
          vector_from_json(rows[static_cast<std::size_t>(r)], d, "sigma_inv").transpose();
    }
    validate_sigma_inv(bundle.wmin.sigma_inv);

    bundle.centroids.rank = rank;
    bundle.centroids.max_length = j.at("centroid_max_length").get<int>();
    bundle.centroids.nielsen = enumerate_nielsen(rank);
    const auto classes = bundle.centroids.nielsen.size();
    bundle.centroids.centroids.assign(classes, {});
    bundle.centroids.sample_counts.assign(classes, 0);
    const json& cents = j.at("centroids");
    if (!cents.is_array() || cents.size() != classes) {
      throw ParseError("model must carry one centroid per Nielsen automorphism (" +
                       std::to_string(classes) + ")");
    }
    std::vector<bool> seen(classes, false);
    for (const auto& c : cents) {
      const NielsenAut aut = parse_nielsen(c.at("aut").get<std::string>());
      if (aut.target > rank || base_index(aut.multiplier) > rank) {
        throw ParseError("centroid automorphism outside model rank: " + to_string(aut));
      }
      const auto k = static_cast<std::size_t>(nielsen_enum_index(aut, rank));
      if (seen[k]) throw ParseError("duplicate centroid entry for " + to_string(aut));
      seen[k] = true;
      bundle.centroids.sample_counts[k] = c.at("count").get<std::int64_t>();
      if (bundle.centroids.sample_counts[k] < 1) {
        throw ParseError("centroid sample count must be positive for " + to_string(aut));
      }
      const json& vec = c.at("vector");
      if (!vec.is_array() || static_cast<int>(vec.size()) != d) {
        throw ParseError("centroid vector for " + to_string(aut) + " must have length " +
                         std::to_string(d));
      }
      FeatureVector f(static_cast<std::size_t>(d));
      for (int i = 0; i < d; ++i) f[static_cast<std::size_t>(i)] = vec[static_cast<std::size_t>(i)].get<double>();
      bundle.centroids.centroids[k] = std::move(f);
    }
    return bundle;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed model file: ") + e.what());
  }
}

void save_model(const ModelBundle& bundle, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open model file for writing: " + path.string());
  out << model_to_json(bundle) << '\n';
  if (!out) throw Error("failed writing model file: " + path.string());
}

ModelBundle load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open model file: " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return model_from_json(text);
}

}  // namespace whmin
