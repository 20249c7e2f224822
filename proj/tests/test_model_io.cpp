#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "whmin/engines.hpp"
#include "whmin/errors.hpp"
#include "whmin/model_io.hpp"

using namespace whmin;

namespace {

ModelBundle tiny_bundle() {
  static ModelBundle cached = [] {
    BundleTrainConfig cfg;
    cfg.wmin.sample_size = 800;
    cfg.wmin.alpha = 0.05;
    cfg.wmin.len_min = 6;
    cfg.wmin.len_max = 40;
    cfg.centroid_samples_per_class = 50;
    cfg.centroid_max_length = 30;
    cfg.centroid_options.min_length = 4;
    return train_model_bundle(2, cfg, Seed{61});
  }();
  return cached;
}

struct TempFile {
  std::filesystem::path path;
  explicit TempFile(const char* name)
      : path(std::filesystem::temp_directory_path() / name) {}
  ~TempFile() { std::error_code ec; std::filesystem::remove(path, ec); }
};

}  // namespace

TEST_SUITE("model_io") {

TEST_CASE("save/load round trip preserves every decision exactly") {
  const ModelBundle bundle = tiny_bundle();
  TempFile file("whmin_model_roundtrip.json");
  save_model(bundle, file.path);
  const ModelBundle loaded = load_model(file.path);

  CHECK(loaded.rank() == 2);
  CHECK(loaded.wmin.rho == bundle.wmin.rho);
  CHECK(loaded.wmin.alpha == bundle.wmin.alpha);
  CHECK(loaded.centroids.max_length == bundle.centroids.max_length);
  CHECK(loaded.centroids.sample_counts == bundle.centroids.sample_counts);

  Rng rng(Seed{62});
  for (int i = 0; i < 100; ++i) {
    const Word w = random_cyclically_reduced_word(2, rng.range_int(2, 40), rng);
    CHECK(mahalanobis_sq(loaded.wmin, w) == mahalanobis_sq(bundle.wmin, w));
    CHECK(decide(loaded.wmin, w) == decide(bundle.wmin, w));
    CHECK(centroid_order(w, loaded.centroids).items ==
          centroid_order(w, bundle.centroids).items);
  }

  // Serialization is deterministic.
  CHECK(model_to_json(bundle) == model_to_json(loaded));
}

TEST_CASE("malformed files are rejected with context") {
  const ModelBundle bundle = tiny_bundle();
  const std::string text = model_to_json(bundle);

  SUBCASE("truncated file") {
    CHECK_THROWS_AS(model_from_json(text.substr(0, text.size() / 2)), ParseError);
  }
  SUBCASE("bad version") {
    std::string other = text;
    const auto pos = other.find("\"version\":1");
    REQUIRE(pos != std::string::npos);
    other.replace(pos, 11, "\"version\":9");
    CHECK_THROWS_AS(model_from_json(other), ParseError);
  }
  SUBCASE("missing field") {
    CHECK_THROWS_AS(model_from_json("{\"version\":1,\"rank\":2}"), ParseError);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_model("/nonexistent/whmin.json"), Error);
  }
}

TEST_CASE("wrong-rank model fails at decide") {
  const ModelBundle bundle = tiny_bundle();
  const Word w = parse_word("x1 x2 x3", 3);
  CHECK_THROWS_AS(decide(bundle.wmin, w), std::invalid_argument);
}

TEST_CASE("certified training stays in range for low ranks") {
  BundleTrainConfig cfg;
  cfg.wmin.sample_size = 400;
  cfg.wmin.alpha = 0.05;
  cfg.wmin.len_min = 4;
  cfg.wmin.len_max = 20;
  cfg.centroid_samples_per_class = 50;
  cfg.centroid_max_length = 20;
  cfg.centroid_options.min_length = 4;
  cfg.certify_training = true;
  const ModelBundle bundle = train_model_bundle(2, cfg, Seed{63});
  CHECK(bundle.rank() == 2);
  CHECK(bundle.wmin.rho > 0.0);
}

}  // TEST_SUITE
