// Copyright 2026 The torlab Authors
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

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "torlab/errors.hpp"
#include "torlab/lab.hpp"

using namespace torlab;
namespace fs = std::filesystem;

namespace {

const char* kPair = R"([experiment]
id = "lab-pair"
seed = 3
samples = 4

[matrix.S]
rows = [[2, 1], [1, 1]]

[matrix.T]
rows = [[1, 1], [1, 2]]

[game]
rounds = 20

[target]
points = [["0", "0"]]

[horizons]
equidist = 1000
avoid = 100
box = 2

[entropy]
orbit = 4000

[dimension]
source = "cantor"
points = 20000
)";

ExperimentRecord run_text(std::string_view cmd, unsigned parallel = 1) {
  RunOptions o;
  o.parallel = parallel;
  return run(cmd, parse_config(kPair), o);
}

void same_outputs(const ExperimentRecord& a, const ExperimentRecord& b) {
  REQUIRE(a.outputs.size() == b.outputs.size());
  for (std::size_t i = 0; i < a.outputs.size(); ++i) {
    CHECK(a.outputs[i].name == b.outputs[i].name);
    CHECK(a.outputs[i].content == b.outputs[i].content);
  }
  CHECK(a.summary == b.summary);
  CHECK(a.config_text == b.config_text);
}

}  // namespace

TEST_SUITE("lab") {

TEST_CASE("classify writes one line per matrix") {
  ExperimentRecord r = run_text("classify");
  REQUIRE(r.outputs.size() == 2);
  CHECK(r.outputs[0].name == "classify.jsonl");
  CHECK(r.outputs[0].content.find("\"hyperbolic\"") != std::string::npos);
  CHECK(r.outputs[1].name == "summary.csv");
  CHECK_FALSE(r.rejected);
  auto j = nlohmann::json::parse(record_to_json(r));
  CHECK(j["command"] == "classify");
  CHECK(j["id"] == "lab-pair");
  CHECK(j["status"] == "ok");
  CHECK(j["version"] == kVersion);
  CHECK(j["outputs"].size() == 2);
  CHECK(j.contains("wall_time_s"));
}

TEST_CASE("runs replay byte for byte, in parallel too") {
  for (const char* cmd : {"game", "equidist", "entropy", "dimension", "construct"}) {
    CAPTURE(cmd);
    ExperimentRecord a = run_text(cmd);
    ExperimentRecord b = run_text(cmd);
    ExperimentRecord c = run_text(cmd, 4);
    same_outputs(a, b);
    same_outputs(a, c);
  }
}

TEST_CASE("seed and precision overrides land in the config snapshot") {
  RunOptions o;
  o.seed = 99;
  ExperimentRecord r = run("equidist", parse_config(kPair), o);
  CHECK(r.seed == 99);
  CHECK(r.config_text.find("seed = 99") != std::string::npos);
  o.seed.reset();
  o.precision = 10;
  try {
    run("equidist", parse_config(kPair), o);
    FAIL("expected a budget error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kBudget);
  }
}

TEST_CASE("construct then verify through files") {
  fs::path dir = fs::temp_directory_path() / "torlab_lab_test";
  fs::remove_all(dir);
  ExperimentRecord r = run_text("construct");
  CHECK_FALSE(r.rejected);
  write_record(r, dir.string());
  CHECK(fs::exists(dir / "construct" / "record.json"));
  CHECK(fs::exists(dir / "construct" / "construct.jsonl"));
  CHECK(fs::exists(dir / "construct" / "config.toml"));
  fs::path cert = dir / "construct" / "certificates" / "certificate-3.jsonl";
  REQUIRE(fs::exists(cert));

  ExperimentConfig cfg = parse_config(kPair);
  cfg.certificate = cert.string();
  ExperimentRecord v = run("verify", cfg, RunOptions{});
  CHECK_FALSE(v.rejected);
  CHECK(v.outputs[0].content.find("\"passed\":true") != std::string::npos);

  // a damaged certificate is rejected rather than trusted
  std::ifstream in(cert);
  std::string text((std::istreambuf_iterator<char>(in)), {});
  auto pos = text.find("\"x\":[\"0.");
  REQUIRE(pos != std::string::npos);
  char& digit = text[pos + 9];
  digit = digit == '1' ? '2' : '1';
  fs::path bad = dir / "bad.jsonl";
  std::ofstream(bad) << text;
  cfg.certificate = bad.string();
  ExperimentRecord w = run("verify", cfg, RunOptions{});
  CHECK(w.rejected);

  RunOptions rep;
  rep.out_dir = dir.string();
  ExperimentRecord report = run("report", ExperimentConfig{}, rep);
  CHECK(report.summary.find("== construct") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("missing requirements are validation errors") {
  ExperimentConfig c;
  try {
    run("construct", c, RunOptions{});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kValidation);
  }
}

}  // TEST_SUITE
