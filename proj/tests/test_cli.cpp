#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

#ifndef WHMIN_CLI_PATH
#define WHMIN_CLI_PATH ""
#endif

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / "whmin_cli_test") {
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

int run_cli(const std::string& args) {
  const std::string cmd = std::string(WHMIN_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// Drop the wall-clock column before determinism comparisons.
std::string strip_time(const std::string& csv) {
  std::istringstream in(csv);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string field;
    int idx = 0;
    while (std::getline(row, field, ',')) {
      if (idx != 6) out << field << ',';
      ++idx;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("gen is byte-identical under a fixed seed") {
  TempDir dir;
  const auto a = dir.path / "a.txt";
  const auto b = dir.path / "b.txt";
  REQUIRE(run_cli("gen --set sp --rank 3 --count 10 --seed 7 --out " + a.string()) == 0);
  REQUIRE(run_cli("gen --set sp --rank 3 --count 10 --seed 7 --out " + b.string()) == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(!slurp(a).empty());
}

TEST_CASE("usage errors exit with 1, data errors with 2") {
  TempDir dir;
  CHECK(run_cli("gen --set sp --rank 3 --count 1 --frobnicate 1 --out " +
                (dir.path / "x.txt").string()) == 1);
  CHECK(run_cli("nosuchcommand") == 1);
  CHECK(run_cli("") == 1);
  // Missing model file is a data error.
  CHECK(run_cli("classify --model " + (dir.path / "missing.json").string() + " --in " +
                (dir.path / "missing.txt").string()) == 2);
}

TEST_CASE("reduce rejects non-reduced input without --normalize") {
  TempDir dir;
  const auto data = dir.path / "raw.txt";
  std::ofstream(data) << "rank=2\nx1 X1 x2\n";
  const auto out = dir.path / "out.csv";
  CHECK(run_cli("reduce --algo wr --in " + data.string() + " --out " + out.string()) == 2);
  CHECK(run_cli("reduce --algo wr --normalize --in " + data.string() + " --out " +
                out.string()) == 0);
}

TEST_CASE("end-to-end: train, classify, reduce, percentile, bench") {
  TempDir dir;
  const auto model = dir.path / "model.json";
  // A deliberately small rank-2 model keeps this test quick.
  REQUIRE(run_cli("train --rank 2 --samples 800 --alpha 0.02 --len-min 4 --len-max 40 "
                  "--centroid-max-len 30 --seed 11 --out " +
                  model.string()) == 0);

  const auto data = dir.path / "s1.txt";
  REQUIRE(run_cli("gen --set s1 --rank 2 --count 20 --len-min 6 --len-max 24 --seed 12 --out " +
                  data.string()) == 0);

  SUBCASE("classify emits one line per word") {
    const auto cls = dir.path / "cls.csv";
    REQUIRE(run_cli("classify --model " + model.string() + " --in " + data.string() + " --out " +
                    cls.string()) == 0);
    int lines = 0;
    for (char ch : slurp(cls)) {
      if (ch == '\n') ++lines;
    }
    CHECK(lines == 21);  // header + 20 words
  }

  SUBCASE("reduce runs deterministically for any job count") {
    const auto r1 = dir.path / "r1.csv";
    const auto r2 = dir.path / "r2.csv";
    REQUIRE(run_cli("reduce --algo hdwr --model " + model.string() + " --in " + data.string() +
                    " --seed 5 --jobs 1 --out " + r1.string()) == 0);
    REQUIRE(run_cli("reduce --algo hdwr --model " + model.string() + " --in " + data.string() +
                    " --seed 5 --jobs 4 --out " + r2.string()) == 0);
    CHECK(strip_time(slurp(r1)) == strip_time(slurp(r2)));
  }

  SUBCASE("reduce without a model fails for hdwr but not wr") {
    const auto out = dir.path / "r.csv";
    CHECK(run_cli("reduce --algo hdwr --in " + data.string() + " --out " + out.string()) == 2);
    CHECK(run_cli("reduce --algo wr --in " + data.string() + " --out " + out.string()) == 0);
  }

  SUBCASE("model/dataset rank mismatch is a data error") {
    const auto data3 = dir.path / "s1_rank3.txt";
    REQUIRE(run_cli("gen --set s1 --rank 3 --count 4 --len-min 6 --len-max 20 --seed 13 --out " +
                    data3.string()) == 0);
    CHECK(run_cli("classify --model " + model.string() + " --in " + data3.string()) == 2);
    CHECK(run_cli("reduce --algo hdwr --model " + model.string() + " --in " + data3.string() +
                  " --out " + (dir.path / "r.csv").string()) == 2);
  }

  SUBCASE("percentile prints a report") {
    CHECK(run_cli("percentile --heuristic centroid --q 99 --set s1 --rank 2 --count 20 "
                  "--len-min 6 --len-max 24 --model " +
                  model.string() + " --seed 14") == 0);
    CHECK(run_cli("percentile --heuristic centroid --q 99 --set s1 --rank 2 --count 20 "
                  "--seed 14") == 2);  // centroid needs a model
  }

  SUBCASE("bench writes per-set records and summaries") {
    const auto out = dir.path / "bench";
    REQUIRE(run_cli("bench --rank 2 --model " + model.string() +
                    " --sets s1,sp --algos wr,hdwr --count 8 --seed 15 --out " + out.string()) ==
            0);
    CHECK(fs::exists(out / "s1_records.csv"));
    CHECK(fs::exists(out / "s1_summary.txt"));
    CHECK(fs::exists(out / "s1_summary.csv"));
    CHECK(fs::exists(out / "sp_records.csv"));
    const std::string summary = slurp(out / "s1_summary.txt");
    CHECK(summary.find("wr") != std::string::npos);
    CHECK(summary.find("hdwr") != std::string::npos);
  }
}

}  // TEST_SUITE
