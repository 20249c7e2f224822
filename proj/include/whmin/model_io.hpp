#pragma once

#include <filesystem>
#include <string>

#include "whmin/classifier.hpp"
#include "whmin/heuristics.hpp"

namespace whmin {

// The WMIN classifier and the centroid table travel in one JSON file so a
// single --model flag configures the hybrid engines.
struct ModelBundle {
  WminModel wmin;
  CentroidModel centroids;

  int rank() const { return wmin.rank; }
};

struct BundleTrainConfig {
  WminTrainConfig wmin;
  int centroid_samples_per_class = 50;
  int centroid_max_length = 200;
  CentroidTrainOptions centroid_options;
  bool certify_training = false;  // force WR certification of training words
};

ModelBundle train_model_bundle(int rank, const BundleTrainConfig& cfg, Seed seed);

// UTF-8 JSON, version-checked; decimals round-trip exactly.
void save_model(const ModelBundle& bundle, const std::filesystem::path& path);
ModelBundle load_model(const std::filesystem::path& path);

std::string model_to_json(const ModelBundle& bundle);
ModelBundle model_from_json(const std::string& text);

}  // namespace whmin
