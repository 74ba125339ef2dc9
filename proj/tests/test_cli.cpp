// Copyright 2026 The sympform Authors
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "golden_cases.hpp"
#include "sympform/cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = sympform::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "sympform_test_cli";
  fs::create_directories(dir);
  return dir;
}

std::string write(const std::string& name, const std::string& text) {
  const fs::path path = scratch() / name;
  std::ofstream(path, std::ios::binary) << text;
  return path.string();
}

std::string gen(const std::string& name, std::vector<std::string> args) {
  const std::string path = (scratch() / name).string();
  args.insert(args.begin(), "gen");
  args.insert(args.end(), {"--output", path});
  REQUIRE(run(args).code == 0);
  return path;
}

json machine(const std::vector<std::string>& args) {
  auto full = args;
  full.insert(full.end(), {"--format", "machine"});
  const auto o = run(full);
  INFO(o.err);
  return json::parse(o.out);
}

}  // namespace

TEST_CASE("sha256 of known strings") {
  CHECK(sympform::cli::sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sympform::cli::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("gen identity then decompose") {
  const auto path = gen("id.json", {"--kind", "identity", "--n", "2"});
  const auto report = machine({"decompose", "--input", path});
  CHECK(report["command"] == "decompose");
  CHECK(report["status"] == "ok");
  CHECK(report["seed"] == 0);
  CHECK(report["tolerances"]["residual_tol"] == 1e-8);
  CHECK(report["inputs"][0]["sha256"].get<std::string>().size() == 64);
  const auto& N = report["result"]["canonical"]["N"];
  CHECK(N["rows"] == 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(N["data"][i * 4 + j].get<double>() == doctest::Approx(i == j ? 1.0 : 0.0));
  CHECK(report["result"]["verification"]["verdict"] == true);
  CHECK(report["result"]["verification"]["recon"].get<double>() <= 1e-15);
}

TEST_CASE("gen tmss then condense") {
  const auto path = gen("tmss.json", {"--kind", "tmss", "--r", "0.5"});
  const auto report = machine({"condense", "--input", path});
  REQUIRE(report["status"] == "ok");
  const auto& blocks = report["result"]["canonical"]["blocks"];
  REQUIRE(blocks.size() == 1);
  const double lambda = blocks[0]["re"].get<double>();
  CHECK(std::abs(lambda + 1.3810978455418155) <= 1e-9 * 1.3810978455418155);

  // The human rendering mentions the same number.
  const auto human = run({"condense", "--input", path});
  CHECK(human.code == 0);
  CHECK(human.out.find("-1.381097846") != std::string::npos);
}

TEST_CASE("seed and tolerance overrides are echoed") {
  const auto path = gen("rx.json", {"--kind", "random-x", "--n", "2", "--seed", "3"});
  const auto report = machine({"invariants", "--input", path, "--seed", "42", "--tol", "1e-9", "--gap", "1e-7"});
  CHECK(report["seed"] == 42);
  CHECK(report["tolerances"]["residual_tol"] == 1e-9);
  CHECK(report["tolerances"]["degeneracy_gap"] == 1e-7);
}

TEST_CASE("error paths and exit codes") {
  const auto singular = write("singular.json", R"({"rows": 2, "cols": 2, "data": [1, 2, 2, 4]})");
  auto o = run({"decompose", "--input", singular});
  CHECK(o.code == 2);
  CHECK(o.err.find("SingularInput") != std::string::npos);
  const auto report = machine({"decompose", "--input", singular});
  CHECK(report["status"] == "error");
  CHECK(report["error"]["kind"] == "SingularInput");

  const auto broken = write("broken.json", "{\"rows\": 2,");
  CHECK(run({"invariants", "--input", broken}).code == 1);

  const auto short_data = write("short.json", R"({"rows": 2, "cols": 2, "data": [1, 2, 3]})");
  CHECK(run({"invariants", "--input", short_data}).code == 1);

  CHECK(run({"invariants", "--input", (scratch() / "missing.json").string()}).code == 1);
  CHECK(run({"invariants", "--input", singular, "--bogus"}).code == 1);
  CHECK(run({"invariants"}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"gen", "--kind", "nonsense"}).code == 1);
  CHECK(run({"invariants", "--input", singular, "--format", "xml"}).code == 1);
  CHECK(run({"invariants", "--input", singular, "--tol", "-1"}).code == 1);

  const auto indefinite = write("indef.json", R"({"rows": 2, "cols": 2, "data": [1, 0, 0, -1]})");
  CHECK(run({"williamson", "--input", indefinite}).code == 2);

  const auto rep = gen("rep.json", {"--kind", "random-x", "--n", "1"});
  CHECK(run({"condense", "--input", rep}).code == 2);  // 2x2 has no party split
}

TEST_CASE("help exits cleanly") { CHECK(run({"--help"}).code == 0); }

TEST_CASE("validate-state layouts") {
  const auto tmss = gen("tmss1.json", {"--kind", "tmss", "--r", "1.0"});
  auto report = machine({"validate-state", "--input", tmss});
  CHECK(report["result"]["valid"] == true);
  CHECK(report["result"]["layout"] == "party-major");

  const auto thin = write("thin.json", R"({"rows": 2, "cols": 2, "data": [0.5, 0, 0, 0.5]})");
  report = machine({"validate-state", "--input", thin});
  CHECK(report["result"]["valid"] == false);
  CHECK(report["result"]["min_eig"].get<double>() == doctest::Approx(-0.5));
  CHECK(report["result"]["layout"] == "global");
}

TEST_CASE("witness accepts matrices and channels") {
  const auto cplx = write("cplx.json", R"({"rows": 4, "cols": 4,
      "data": [1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 2, 0, 0, -2, 1]})");
  auto report = machine({"witness", "--input", cplx});
  CHECK(report["result"]["verdict"] == "SqueezingWitnessed");

  const auto passive = gen("passive.json", {"--kind", "passive", "--n", "3", "--env-modes", "2", "--seed", "9"});
  report = machine({"witness", "--input", passive});
  CHECK(report["result"]["verdict"] == "Inconclusive");
}

TEST_CASE("every gen kind round-trips through its analysis") {
  const std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> cases = {
      {{"--kind", "identity", "--n", "3"}, {"invariants", "decompose", "williamson", "witness", "validate-state"}},
      {{"--kind", "tmss", "--n", "2", "--r", "0.3"}, {"condense", "validate-state"}},
      {{"--kind", "attenuator", "--n", "2", "--eta", "0.7"}, {"channel-normalize", "validate-channel", "witness"}},
      {{"--kind", "passive", "--n", "2", "--env-modes", "3"}, {"channel-normalize", "validate-channel", "witness"}},
      {{"--kind", "random-channel", "--n", "2"}, {"channel-normalize", "validate-channel", "witness"}},
      {{"--kind", "random-x", "--n", "4", "--seed", "1"}, {"invariants", "decompose", "witness"}},
      {{"--kind", "random-symplectic", "--n", "3", "--seed", "1"}, {"invariants", "decompose", "witness"}},
  };
  int k = 0;
  for (const auto& [gen_args, analyses] : cases) {
    const auto path = gen("rt" + std::to_string(k++) + ".json", gen_args);
    for (const auto& a : analyses) {
      const auto o = run({a, "--input", path, "--format", "machine"});
      INFO(a << " on " << gen_args[1] << ": " << o.err);
      CHECK(o.code == 0);
    }
  }
}

TEST_CASE("output file matches stdout") {
  const auto path = gen("id1.json", {"--kind", "identity", "--n", "1"});
  const auto o = run({"invariants", "--input", path, "--format", "machine"});
  const std::string target = (scratch() / "out.json").string();
  CHECK(run({"invariants", "--input", path, "--format", "machine", "--output", target}).code == 0);
  CHECK(sympform::golden::read_file(target) == o.out);
}

TEST_CASE("machine output is byte-stable and matches the golden files") {
  const fs::path golden_dir = SYMPFORM_GOLDEN_DIR;
  for (const auto& p : sympform::golden::pipelines()) {
    INFO(p.name);
    const auto first = sympform::golden::run_pipeline(p, scratch() / "a");
    const auto second = sympform::golden::run_pipeline(p, scratch() / "b");
    REQUIRE(first.gen_code == 0);
    REQUIRE(first.analyze_code == 0);
    CHECK(first.text == second.text);
    CHECK(first.text == sympform::golden::read_file(golden_dir / (p.name + ".json")));
  }
}
