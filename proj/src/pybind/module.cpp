#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "whmin/bench.hpp"
#include "whmin/engines.hpp"
#include "whmin/errors.hpp"
#include "whmin/model_io.hpp"

namespace py = pybind11;
using namespace whmin;

namespace {

SearchConfig make_config(Algorithm algo, const ModelBundle* bundle, std::uint64_t seed,
                         int population, int generations, bool swr_in_hdwr) {
  SearchConfig cfg;
  cfg.algorithm = algo;
  if (bundle) {
    cfg.models.centroids = &bundle->centroids;
    cfg.models.wmin = &bundle->wmin;
  }
  cfg.seed = Seed{seed};
  cfg.swr.population = population;
  cfg.swr.generations = generations;
  if (!swr_in_hdwr) cfg.enable_swr_in_hdwr = false;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_whmin, m) {
  m.doc() = "Whitehead minimization for free groups: words, automorphisms, "
            "heuristics, the WMIN classifier and the WR/HDWR/HPWR engines.";

  py::register_exception<whmin::Error>(m, "WhminError");

  py::class_<Word>(m, "Word")
      .def(py::init([](const std::string& text, int rank) { return parse_word(text, rank); }),
           py::arg("text"), py::arg("rank"))
      .def_property_readonly("rank", &Word::rank)
      .def("letters",
           [](const Word& w) {
             return std::vector<int>(w.letters().begin(), w.letters().end());
           })
      .def("is_cyclically_reduced", &Word::is_cyclically_reduced)
      .def("__len__", &Word::length)
      .def("__str__", [](const Word& w) { return to_string(w); })
      .def("__repr__",
           [](const Word& w) {
             return "Word('" + to_string(w) + "', rank=" + std::to_string(w.rank()) + ")";
           })
      .def("__eq__", [](const Word& a, const Word& b) { return a == b; })
      .def("__hash__", [](const Word& w) {
        std::size_t h = std::hash<int>{}(w.rank());
        for (Letter l : w.letters()) h = h * 1099511628211ULL + static_cast<std::size_t>(l + 64);
        return h;
      });

  m.def("free_reduce",
        [](const std::vector<int>& letters, int rank) {
          std::vector<Letter> raw(letters.begin(), letters.end());
          return free_reduce(raw, rank);
        },
        py::arg("letters"), py::arg("rank"),
        "Freely reduce a raw letter sequence (+k = x_k, -k = its inverse).");
  m.def("cyclic_reduce", &cyclic_reduce, py::arg("word"));
  m.def("multiply", &multiply, py::arg("u"), py::arg("v"));
  m.def("inverse", py::overload_cast<const Word&>(&inverse), py::arg("word"));
  m.def("random_reduced_word",
        [](int rank, int length, std::uint64_t seed) {
          return random_reduced_word(rank, length, Seed{seed});
        },
        py::arg("rank"), py::arg("length"), py::arg("seed"));
  m.def("random_cyclically_reduced_word",
        [](int rank, int length, std::uint64_t seed) {
          return random_cyclically_reduced_word(rank, length, Seed{seed});
        },
        py::arg("rank"), py::arg("length"), py::arg("seed"));

  py::class_<NielsenAut>(m, "NielsenAut")
      .def("apply", &NielsenAut::apply, py::arg("word"))
      .def("__str__", [](const NielsenAut& t) { return to_string(t); })
      .def("__repr__", [](const NielsenAut& t) { return to_string(t); })
      .def("__eq__", [](const NielsenAut& a, const NielsenAut& b) { return a == b; });

  py::class_<WhiteheadAut>(m, "WhiteheadAut")
      .def("apply", &WhiteheadAut::apply, py::arg("word"))
      .def_property_readonly("rank", &WhiteheadAut::rank)
      .def("__str__", [](const WhiteheadAut& t) { return to_string(t); })
      .def("__repr__", [](const WhiteheadAut& t) { return to_string(t); })
      .def("__eq__", [](const WhiteheadAut& a, const WhiteheadAut& b) { return a == b; });

  m.def("nielsen_count", &nielsen_count, py::arg("rank"));
  m.def("whitehead_count", &whitehead_count, py::arg("rank"));
  m.def("enumerate_nielsen", &enumerate_nielsen, py::arg("rank"));
  m.def("enumerate_whitehead", &enumerate_whitehead, py::arg("rank"));
  m.def("apply_sequence", &apply_sequence, py::arg("sequence"), py::arg("word"));

  m.def("feature_vector",
        [](const Word& u, bool linear) {
          return feature_vector(u, linear ? GraphMode::linear : GraphMode::cyclic);
        },
        py::arg("word"), py::arg("linear") = false,
        "Whitehead-graph edge weights in the fixed edge order.");
  m.def("feature_dim", &feature_dim, py::arg("rank"));

  py::class_<ModelBundle>(m, "ModelBundle")
      .def_property_readonly("rank", &ModelBundle::rank)
      .def_property_readonly("rho", [](const ModelBundle& b) { return b.wmin.rho; })
      .def_property_readonly("alpha", [](const ModelBundle& b) { return b.wmin.alpha; })
      .def("save", [](const ModelBundle& b, const std::filesystem::path& path) {
        save_model(b, path);
      }, py::arg("path"));

  m.def("train_models",
        [](int rank, int samples, double alpha, int len_min, int len_max, int centroid_samples,
           int centroid_max_len, bool certify, std::uint64_t seed) {
          BundleTrainConfig cfg;
          cfg.wmin.sample_size = samples;
          cfg.wmin.alpha = alpha;
          cfg.wmin.len_min = len_min;
          cfg.wmin.len_max = len_max;
          cfg.centroid_samples_per_class = centroid_samples;
          cfg.centroid_max_length = centroid_max_len;
          cfg.certify_training = certify;
          return train_model_bundle(rank, cfg, Seed{seed});
        },
        py::arg("rank"), py::arg("samples") = 6000, py::arg("alpha") = 0.001,
        py::arg("len_min") = 100, py::arg("len_max") = 600, py::arg("centroid_samples") = 50,
        py::arg("centroid_max_len") = 200, py::arg("certify") = false, py::arg("seed") = 0,
        "Train the WMIN classifier and the centroid table for one rank.");
  m.def("load_models", &load_model, py::arg("path"));

  m.def("mahalanobis_sq",
        [](const ModelBundle& b, const Word& u) { return mahalanobis_sq(b.wmin, u); },
        py::arg("models"), py::arg("word"));
  m.def("decide",
        [](const ModelBundle& b, const Word& u) {
          return decide(b.wmin, u) == Decision::minimal ? "minimal" : "non-minimal";
        },
        py::arg("models"), py::arg("word"), "WMIN minimality decision for a word.");

  py::class_<ReductionResult>(m, "ReductionResult")
      .def_readonly("output", &ReductionResult::output)
      .def_readonly("applied", &ReductionResult::applied)
      .def_readonly("steps_total", &ReductionResult::steps_total)
      .def_readonly("steps_reducing", &ReductionResult::steps_reducing)
      .def_property_readonly(
          "terminated_by",
          [](const ReductionResult& r) { return to_string(r.terminated_by); })
      .def("__repr__", [](const ReductionResult& r) {
        return "ReductionResult(output_len=" + std::to_string(r.output.length()) +
               ", steps_total=" + std::to_string(r.steps_total) + ")";
      });

  m.def("wr", [](const Word& u) { return wr(u); }, py::arg("word"),
        "Exact greedy Whitehead reduction with a full-sweep certificate.");
  m.def("hdwr",
        [](const Word& u, const ModelBundle& models, std::uint64_t seed, int population,
           int generations, bool swr) {
          return hdwr(u, make_config(Algorithm::hdwr, &models, seed, population, generations,
                                     swr));
        },
        py::arg("word"), py::arg("models"), py::arg("seed") = 0, py::arg("population") = 30,
        py::arg("generations") = 100, py::arg("swr") = true,
        "Hybrid deterministic reduction (certified output).");
  m.def("hpwr",
        [](const Word& u, const ModelBundle& models, std::uint64_t seed, int population,
           int generations) {
          return hpwr(u, make_config(Algorithm::hpwr, &models, seed, population, generations,
                                     true));
        },
        py::arg("word"), py::arg("models"), py::arg("seed") = 0, py::arg("population") = 30,
        py::arg("generations") = 100,
        "Hybrid probabilistic reduction (classifier-terminated).");

  m.def("gen_dataset",
        [](const std::string& kind, int rank, int count, std::uint64_t seed, int len_min,
           int len_max, int auts_min, int auts_max, int max_word_length, double scale) {
          DatasetSpec spec;
          spec.kind = parse_dataset_kind(kind);
          spec.rank = rank;
          spec.count = count;
          spec.seed = Seed{seed};
          spec.len_min = len_min;
          spec.len_max = len_max;
          spec.auts_min = auts_min;
          spec.auts_max = auts_max;
          spec.max_word_length = max_word_length;
          spec.scale = scale;
          std::vector<std::pair<Word, std::optional<int>>> out;
          for (auto& lw : gen_dataset(spec)) {
            out.emplace_back(std::move(lw.word), lw.oracle_min_length);
          }
          return out;
        },
        py::arg("kind"), py::arg("rank"), py::arg("count"), py::arg("seed") = 0,
        py::arg("len_min") = 0, py::arg("len_max") = 0, py::arg("auts_min") = 1,
        py::arg("auts_max") = 20, py::arg("max_word_length") = 0, py::arg("scale") = 0.2,
        "Generate an s1/s10/sp test set as (word, oracle_min_length) pairs.");
}
