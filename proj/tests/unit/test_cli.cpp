// Copyright 2026 The qhesim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <fstream>
#include <sstream>

#include "qhesim/cli.hpp"
#include "support.hpp"

using namespace qhesim;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args) {
  args.insert(args.begin(), "qhesim");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("qhesim_cli_test_" + std::to_string(++counter));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t col(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    FAIL("missing column " << name);
    return 0;
  }
  double num(std::size_t row, const std::string& name) const {
    return std::stod(rows[row][col(name)]);
  }
};

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(tok);
  return out;
}

Csv read_csv(const std::string& text) {
  Csv csv;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (csv.header.empty())
      csv.header = split(line);
    else
      csv.rows.push_back(split(line));
  }
  return csv;
}

std::string schedule_path(const char* name) {
  return (testing::data_dir() / "schedules" / (std::string(name) + ".json")).string();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("help and usage errors") {
  CHECK(run({"--help"}).code == kExitOk);
  CHECK(run({}).code == kExitValidation);
  CHECK(run({"teleport"}).code == kExitValidation);
  CHECK(run({"dynamics", "--shots", "many"}).code == kExitValidation);
}

TEST_CASE("validation errors leave no output") {
  TempDir d;
  const auto out = d.file("sweep.csv");
  const CliResult r = run({"sweep", "--cases", "10", "--out", out});
  CHECK(r.code == kExitValidation);
  CHECK_FALSE(r.err.empty());
  CHECK_FALSE(std::filesystem::exists(out));

  CHECK(run({"sweep", "--cases", "1", "--grid", "1x5", "--out", out}).code == kExitValidation);
  CHECK(run({"sweep", "--cases", "1", "--grid", "abc", "--out", out}).code == kExitValidation);
  CHECK_FALSE(std::filesystem::exists(out));

  {
    std::ofstream f(d.file("params.json"));
    f << R"({"beta_c": 5, "lamda": 0.5})";
  }
  CHECK(run({"dynamics", "--params", d.file("params.json"), "--out", out}).code == kExitValidation);
  CHECK(run({"dynamics", "--params", d.file("none.json")}).code == kExitValidation);
  CHECK(run({"power", "--schedule", d.file("none.json")}).code == kExitValidation);
  CHECK(run({"dynamics", "--backend", "quantum"}).code == kExitValidation);
  CHECK(run({"dynamics", "--gem", "maybe"}).code == kExitValidation);
  CHECK_FALSE(std::filesystem::exists(out));
}

TEST_CASE("dynamics in exact-probability mode reproduces theory") {
  const CliResult r = run({"dynamics", "--shots", "0", "--noise", "none", "--t-max", "4", "--t-step", "1"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.rfind("# qhesim dynamics config_hash=", 0) == 0);
  const Csv csv = read_csv(r.out);
  REQUIRE(csv.rows.size() == 5);
  const auto& g = testing::golden()["dynamics"];
  for (std::size_t k = 0; k < csv.rows.size(); ++k) {
    for (const char* lv : {"00", "11", "22"}) {
      const double theo = csv.num(k, std::string("theo_rho") + lv);
      CHECK(std::abs(csv.num(k, std::string("ideal_rho") + lv) - theo) < 1e-8);
    }
    const auto ref = testing::golden_pops(g["populations"]["eps0"][2 * k]);
    CHECK(std::abs(csv.num(k, "theo_rho00") - ref[0]) < 1e-8);
    CHECK(std::abs(csv.num(k, "theo_rho22") - ref[2]) < 1e-8);
    CHECK(csv.rows[k][csv.col("noisy_rho00")] == "nan");
  }
}

TEST_CASE("dynamics with noise: mitigation moves toward theory") {
  const CliResult r = run({"dynamics", "--shots", "4096", "--reps", "2", "--seed", "5", "--t-max", "2",
                           "--t-step", "1", "--initial", "eps2"});
  REQUIRE(r.code == kExitOk);
  const Csv csv = read_csv(r.out);
  for (std::size_t k = 0; k < csv.rows.size(); ++k) {
    double l1_raw = 0.0, l1_gem = 0.0, l1_ideal = 0.0;
    for (const char* lv : {"00", "11", "22"}) {
      const double theo = csv.num(k, std::string("theo_rho") + lv);
      l1_raw += std::abs(csv.num(k, std::string("noisy_rho") + lv) - theo);
      l1_gem += std::abs(csv.num(k, std::string("gem_rho") + lv) - theo);
      l1_ideal += std::abs(csv.num(k, std::string("ideal_rho") + lv) - theo);
    }
    CHECK(l1_gem < l1_raw);
    CHECK(l1_ideal < 0.06);
  }
}

TEST_CASE("outputs are byte-identical for a fixed seed") {
  TempDir d;
  const std::vector<std::string> base{"dynamics", "--shots", "512", "--reps", "1", "--seed", "99",
                                      "--t-max", "1", "--t-step", "0.5", "--out"};
  auto a = base;
  a.push_back(d.file("a.csv"));
  auto b = base;
  b.push_back(d.file("b.csv"));
  REQUIRE(run(a).code == kExitOk);
  REQUIRE(run(b).code == kExitOk);
  CHECK(slurp(d.file("a.csv")) == slurp(d.file("b.csv")));
  CHECK_FALSE(std::filesystem::exists(d.file("a.csv.tmp")));

  const std::vector<std::string> sw{"sweep", "--cases", "3", "--grid", "3x3", "--shots", "1024",
                                    "--reps", "1", "--seed", "4", "--threads", "2", "--out"};
  auto s1 = sw;
  s1.push_back(d.file("s1.csv"));
  auto s2 = sw;
  s2.push_back(d.file("s2.csv"));
  REQUIRE(run(s1).code == kExitOk);
  REQUIRE(run(s2).code == kExitOk);
  CHECK(slurp(d.file("s1.csv")) == slurp(d.file("s2.csv")));
}

TEST_CASE("power replay") {
  TempDir d;
  {
    std::ofstream f(d.file("work.json"));
    f << R"({"dt": 0.5, "gamma": 0.99, "steps": [{"d": "work", "u": 0.0}, {"d": "work", "u": 1.0}]})";
  }
  const CliResult w = run({"power", "--schedule", d.file("work.json"), "--steps", "50",
                           "--out", d.file("work.csv")});
  REQUIRE(w.code == kExitOk);
  const Csv wc = read_csv(slurp(d.file("work.csv")));
  REQUIRE(wc.rows.size() == 100);  // both backends
  for (std::size_t k = 0; k < wc.rows.size(); ++k) CHECK(wc.num(k, "avg_power") == 0.0);

  const CliResult c = run({"power", "--schedule", schedule_path("cycle1"), "--steps", "1000",
                           "--out", d.file("c1.csv"), "--summary", d.file("c1.json")});
  REQUIRE(c.code == kExitOk);
  const auto summary = io::read_json_file(d.file("c1.json"));
  CHECK(summary["max_abs_avg_power_difference"].get<double>() < 1e-6);
  CHECK(summary["exact"]["average_power"].get<double>() ==
        doctest::Approx(testing::golden()["cycles"]["cycle1"]["average_power"].get<double>()).epsilon(1e-9));
}

TEST_CASE("exact sweep writes a complete map") {
  TempDir d;
  const CliResult r = run({"sweep", "--cases", "1,2", "--backend", "exact", "--out", d.file("m.csv"),
                           "--summary", d.file("m.json")});
  REQUIRE(r.code == kExitOk);
  const Csv csv = read_csv(slurp(d.file("m.csv")));
  CHECK(csv.rows.size() == 2 * 441);
  for (std::size_t k = 0; k < csv.rows.size(); ++k) {
    const std::string& e = csv.rows[k][csv.col("er_p")];
    CHECK((e == "nan" || std::stod(e) == 0.0));
  }
  const auto s = io::read_json_file(d.file("m.json"));
  REQUIRE(s["cases"].is_array());
  CHECK(s["cases"].size() == 2);
  CHECK(s["cases"][0]["max_er_p"].get<double>() == 0.0);
}

}
