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

#include <string>

#include "torlab/config.hpp"
#include "torlab/errors.hpp"

using namespace torlab;

namespace {

const char* kFull = R"(# every section
[experiment]
id = "pair"
seed = 7
samples = 3
precision = 0

[matrix.S]
rows = [[2, 1], [1, 1]]

[matrix.T]
entries = [1, 1, 1, 2]
dim = 2

[game]
rounds = 30
alpha = 0.5
beta = 0.25
rho = 0.125
bob = "greedy"

[target]
points = [["0", "0"], ["0.5", "0.25"]]

[horizons]
equidist = 5000
avoid = 100
box = 2

[entropy]
orbit = 4000
start = ["0.1", "0.2"]

[dimension]
source = "product"
points = 5000
depth = 20

[construct]
attempts = 2
zero_offset = true

[verify]
certificate = "certs/c.jsonl"
)";

std::string validation_message(const std::string& text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kValidation);
    return e.what();
  }
  FAIL("expected a validation error");
  return "";
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("every field is read") {
  ExperimentConfig c = parse_config(kFull);
  CHECK(c.id == "pair");
  CHECK(c.seed == 7);
  CHECK(c.samples == 3);
  REQUIRE(c.s_matrix);
  REQUIRE(c.t_matrix);
  CHECK(*c.s_matrix == IntMatrix::from_rows({{2, 1}, {1, 1}}));
  CHECK(*c.t_matrix == IntMatrix::from_rows({{1, 1}, {1, 2}}));
  CHECK(c.game.rounds == 30);
  CHECK(c.game.beta == 0.25);
  CHECK(c.game.rho == 0.125);
  CHECK(c.game.bob == BobKind::kGreedy);
  CHECK(c.targets.size() == 2);
  CHECK(c.targets[1][1] == "0.25");
  CHECK(c.horizons.equidist == 5000);
  CHECK(c.horizons.box == 2);
  CHECK(c.entropy.start == std::vector<std::string>{"0.1", "0.2"});
  CHECK(c.dimension.source == "product");
  CHECK(c.dimension.depth == 20);
  CHECK(c.attempts == 2);
  CHECK(c.zero_offset);
  CHECK(c.certificate == "certs/c.jsonl");
  ConstructionConfig cc = c.construction(11);
  CHECK(cc.seed == 11);
  CHECK(cc.horizon_s == 5000);
  CHECK(cc.max_attempts == 2);
  CHECK_FALSE(cc.precision);
}

TEST_CASE("canonical text round-trips") {
  ExperimentConfig c = parse_config(kFull);
  std::string text = to_text(c);
  ExperimentConfig back = parse_config(text);
  CHECK(to_text(back) == text);
  CHECK(*back.t_matrix == *c.t_matrix);
  CHECK(back.targets == c.targets);
  CHECK(back.game.beta == c.game.beta);
}

TEST_CASE("companion matrices and defaults") {
  ExperimentConfig c = parse_config("[matrix.S]\ncompanion = [1, -1, -1, -1]\n");
  CHECK(c.dim() == 4);
  CHECK(c.samples == 1);
  CHECK(c.horizons.equidist == 10000);
  CHECK(c.horizons.avoid == 200);
  CHECK(c.game.rounds == 40);
  CHECK(c.game.bob == BobKind::kRandom);
}

TEST_CASE("malformed matrices name the field") {
  CHECK(validation_message("[matrix.S]\nrows = [[2, 1, 0], [1, 1]]\n").rfind("matrix.S.rows", 0) == 0);
  CHECK(validation_message("[matrix.S]\nrows = [[2, 1], [1, 1, 3]]\n") ==
        "matrix.S.rows[1]: expected 2 entries for dim 2, found 3");
  CHECK(validation_message("[matrix.T]\nrows = [[1, 2], [2, 4]]\n").rfind("matrix.T", 0) == 0);
  CHECK(validation_message("[matrix.T]\nentries = [1, 2, 3]\ndim = 2\n").rfind("matrix.T.entries", 0) == 0);
  CHECK(validation_message("[matrix.S]\nrows = [[2, 1], [1, 1]]\ncompanion = [1]\n").rfind("matrix.S", 0) == 0);
  CHECK(validation_message("[matrix.S]\nrows = [[2, \"x\"], [1, 1]]\n").rfind("matrix.S.rows[0][1]", 0) == 0);
}

TEST_CASE("unknown keys and bad values are rejected") {
  CHECK(validation_message("[game]\nrounds = 3\nspeed = 2\n").rfind("game.speed", 0) == 0);
  CHECK(validation_message("[game]\nalpha = 1.5\n").rfind("game.alpha", 0) == 0);
  CHECK(validation_message("[game]\nrho = 0.3\n").rfind("game.rho", 0) == 0);
  CHECK(validation_message("[game]\nbob = \"sneaky\"\n").rfind("game.bob", 0) == 0);
  CHECK(validation_message("[dimension]\nsource = \"fractal\"\n").rfind("dimension.source", 0) == 0);
  CHECK(validation_message("[matrix.S]\nrows = [[2, 1], [1, 1]]\n[target]\npoints = [[\"0\"]]\n")
            .rfind("target.points[0]", 0) == 0);
  CHECK(validation_message("[target]\npoints = [[\"zero\", \"0\"]]\n").rfind("target.points[0][0]", 0) == 0);
  CHECK(validation_message("[experiment]\nseed = 1\nseed = 2\n").rfind("experiment.seed", 0) == 0);
}

TEST_CASE("syntax errors carry the line number") {
  CHECK(validation_message("[experiment]\nid = \"x\"\nthis line is wrong\n").rfind("line 3", 0) == 0);
  CHECK(validation_message("[experiment\n").rfind("line 1", 0) == 0);
}

TEST_CASE("command requirements") {
  ExperimentConfig c = parse_config("[matrix.S]\nrows = [[2, 1], [1, 1]]\n");
  CHECK_NOTHROW(validate_for(c, "classify"));
  CHECK_NOTHROW(validate_for(c, "equidist"));
  try {
    validate_for(c, "construct");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kValidation);
    CHECK(std::string(e.what()).rfind("matrix.T", 0) == 0);
  }
  CHECK_THROWS_AS(validate_for(c, "dance"), Error);
}

TEST_CASE("missing files are an io error") {
  try {
    load_config("/nonexistent/config.toml");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kIo);
  }
}

}  // TEST_SUITE
