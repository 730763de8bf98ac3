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

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "torlab/torlab.h"

namespace {

const char* kConfig = R"([experiment]
id = "capi"
seed = 2

[matrix.S]
rows = [[2, 1], [1, 1]]

[matrix.T]
rows = [[1, 1], [1, 2]]

[target]
points = [["0", "0"]]

[horizons]
equidist = 1000
avoid = 100
box = 2
)";

tl_matrix* make(size_t d, std::vector<int64_t> e) {
  tl_matrix* m = nullptr;
  REQUIRE(tl_matrix_create(d, e.data(), &m) == TL_OK);
  return m;
}

}  // namespace

TEST_SUITE("capi") {

TEST_CASE("status names and version") {
  CHECK(std::string(tl_version()) == "0.1.0");
  CHECK(std::string(tl_status_name(TL_ERR_BUDGET)) == "budget");
  CHECK(std::string(tl_classification_name(TL_QUASIHYPERBOLIC_JORDAN)) == "quasihyperbolic_jordan");
}

TEST_CASE("matrices") {
  tl_matrix* cat = make(2, {2, 1, 1, 1});
  CHECK(tl_matrix_dim(cat) == 2);
  int64_t v = 0;
  CHECK(tl_matrix_entry(cat, 1, 0, &v) == TL_OK);
  CHECK(v == 1);
  CHECK(tl_matrix_entry(cat, 2, 0, &v) == TL_ERR_INVALID_ARGUMENT);
  tl_classification c;
  CHECK(tl_matrix_classify(cat, &c) == TL_OK);
  CHECK(c == TL_HYPERBOLIC);
  int erg = 0;
  CHECK(tl_matrix_is_ergodic(cat, &erg) == TL_OK);
  CHECK(erg == 1);
  unsigned bits = 0;
  CHECK(tl_required_precision(cat, 100, &bits) == TL_OK);
  CHECK(bits == 223);
  double h = 0;
  CHECK(tl_entropy_spectrum(cat, &h) == TL_OK);
  CHECK(h == doctest::Approx(2 * std::log((1 + std::sqrt(5.0)) / 2)));
  tl_matrix_free(cat);

  int64_t singular[] = {1, 2, 2, 4};
  tl_matrix* m = nullptr;
  CHECK(tl_matrix_create(2, singular, &m) == TL_ERR_REJECTED_INPUT);
  CHECK(m == nullptr);
  CHECK(std::strlen(tl_last_error()) > 0);
  CHECK(tl_matrix_create(2, nullptr, &m) == TL_ERR_INVALID_ARGUMENT);

  tl_matrix* rot = make(2, {0, -1, 1, 0});
  CHECK(tl_matrix_classify(rot, &c) == TL_OK);
  CHECK(c == TL_NONERGODIC);
  tl_splitting* sp = nullptr;
  CHECK(tl_splitting_create(rot, 1e-10, 256, &sp) == TL_ERR_CLASSIFICATION);
  tl_matrix_free(rot);
}

TEST_CASE("points, orbits and diagnostics") {
  tl_matrix* cat = make(2, {2, 1, 1, 1});
  const char* dec[] = {"0.2", "0.4"};
  tl_point* p = nullptr;
  REQUIRE(tl_point_parse(2, dec, 128, &p) == TL_OK);
  CHECK(tl_point_dim(p) == 2);
  CHECK(tl_point_bits(p) == 128);
  tl_point* q = nullptr;
  REQUIRE(tl_point_apply(cat, p, &q) == TL_OK);
  double x = 0;
  CHECK(tl_point_coordinate(q, 0, &x) == TL_OK);
  CHECK(x == doctest::Approx(0.8));
  CHECK(tl_point_coordinate(q, 1, &x) == TL_OK);
  CHECK(x == doctest::Approx(0.6));
  double d = 0;
  CHECK(tl_torus_distance(p, q, &d) == TL_OK);
  CHECK(d == doctest::Approx(0.4));
  // exact decimal of the nearest 128-bit value
  CHECK(std::stod(tl_point_decimal(p, 0)) == doctest::Approx(0.2).epsilon(1e-15));

  tl_point* r = nullptr;
  unsigned bits = 0;
  REQUIRE(tl_required_precision(cat, 4096, &bits) == TL_OK);
  REQUIRE(tl_point_random(2, 8, bits, &r) == TL_OK);
  double score = 0;
  CHECK(tl_equidistribution_score(r, cat, 4096, 3, &score) == TL_OK);
  CHECK(score <= 5.0 / 64);
  CHECK(tl_equidistribution_score(p, cat, 4096, 3, &score) == TL_ERR_BUDGET);

  std::vector<double> pts;
  for (int i = 0; i < 4000; ++i) pts.push_back(std::fmod(i * 0.6180339887498949, 1.0));
  double dim = 0;
  CHECK(tl_box_dimension(pts.data(), 4000, 1, &dim) == TL_OK);
  CHECK(dim == doctest::Approx(1.0).epsilon(0.1));
  tl_point_free(p);
  tl_point_free(q);
  tl_point_free(r);
  tl_matrix_free(cat);
}

TEST_CASE("splittings") {
  tl_matrix* cat = make(2, {2, 1, 1, 1});
  tl_splitting* sp = nullptr;
  REQUIRE(tl_splitting_create(cat, 1e-10, 256, &sp) == TL_OK);
  CHECK(tl_splitting_classification(sp) == TL_HYPERBOLIC);
  CHECK(tl_splitting_dim(sp, TL_STABLE) == 1);
  CHECK(tl_splitting_dim(sp, TL_UNSTABLE) == 1);
  CHECK(tl_splitting_dim(sp, TL_CENTRAL) == 0);
  double v[2];
  REQUIRE(tl_splitting_basis(sp, TL_STABLE, 0, v) == TL_OK);
  // M v = lambda v with lambda = (3 - sqrt 5) / 2
  const double lam = (3 - std::sqrt(5.0)) / 2;
  CHECK(2 * v[0] + v[1] == doctest::Approx(lam * v[0]));
  CHECK(tl_splitting_basis(sp, TL_STABLE, 1, v) == TL_ERR_INVALID_ARGUMENT);
  CHECK(tl_splitting_rotation_count(sp) == 0);
  tl_splitting_free(sp);
  tl_matrix_free(cat);

  tl_matrix* salem = make(4, {0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, -1, 1, 1, 1});
  REQUIRE(tl_splitting_create(salem, 1e-10, 256, &sp) == TL_OK);
  CHECK(tl_splitting_classification(sp) == TL_QUASIHYPERBOLIC_CENTRAL_SPIN);
  CHECK(tl_splitting_rotation_count(sp) == 1);
  const double angle = std::acos((1 - std::sqrt(13.0)) / 4) / (2 * M_PI);
  const double got = tl_splitting_rotation(sp, 0);
  CHECK(std::min(std::fabs(got - angle), std::fabs(got - (1 - angle))) < 1e-9);
  tl_splitting_free(sp);
  tl_matrix_free(salem);
}

TEST_CASE("games and transcripts") {
  tl_matrix* t = make(2, {1, 1, 1, 2});
  const char* zero[] = {"0", "0"};
  tl_point* y = nullptr;
  REQUIRE(tl_point_parse(2, zero, 64, &y) == TL_OK);
  tl_game_params gp = tl_game_params_default();
  CHECK(gp.alpha == 0.5);
  gp.rounds = 20;
  gp.horizon = 100;
  tl_transcript* tr = nullptr;
  const tl_point* targets[] = {y};
  REQUIRE(tl_game_avoid(t, targets, 1, &gp, TL_BOB_RANDOM, 4, &tr) == TL_OK);
  CHECK(tl_transcript_valid(tr) == 1);
  CHECK(tl_transcript_rounds(tr) == 20);
  int same = 0;
  CHECK(tl_transcript_replay(tr, &same) == TL_OK);
  CHECK(same == 1);
  std::string text = tl_transcript_jsonl(tr);
  tl_transcript* back = nullptr;
  REQUIRE(tl_transcript_from_jsonl(text.c_str(), &back) == TL_OK);
  CHECK(std::string(tl_transcript_jsonl(back)) == text);
  tl_point* lim = nullptr;
  CHECK(tl_transcript_limit(back, &lim) == TL_OK);
  CHECK(tl_point_dim(lim) == 2);
  tl_point_free(lim);
  tl_transcript_free(back);
  tl_transcript_free(tr);

  gp.alpha = 0.3;
  CHECK(tl_game_avoid(t, targets, 1, &gp, TL_BOB_RANDOM, 4, &tr) == TL_ERR_CONFIGURATION);
  CHECK(tl_transcript_from_jsonl("{", &tr) == TL_ERR_VALIDATION);
  tl_point_free(y);
  tl_matrix_free(t);
}

TEST_CASE("certificates") {
  tl_certificate* c = nullptr;
  REQUIRE(tl_certificate_construct(kConfig, 2, &c) == TL_OK);
  CHECK(tl_certificate_accepted(c) == 1);
  CHECK(tl_certificate_max_score(c) <= 5 / std::sqrt(1000.0));
  CHECK(tl_certificate_min_margin(c) >= tl_certificate_delta_out(c));
  std::string text = tl_certificate_jsonl(c);
  tl_certificate* back = nullptr;
  REQUIRE(tl_certificate_from_jsonl(text.c_str(), &back) == TL_OK);
  int passed = 0;
  CHECK(tl_certificate_verify(back, kConfig, &passed) == TL_OK);
  CHECK(passed == 1);
  CHECK(tl_certificate_from_jsonl("{\"record\":\"x\"}", &c) == TL_ERR_REJECTED_CERTIFICATE);
  tl_certificate_free(back);
  tl_certificate_free(c);
  CHECK(tl_certificate_construct("[game]\nrho = 3\n", 1, &c) == TL_ERR_VALIDATION);
}

TEST_CASE("runs and records") {
  size_t needed = 0;
  CHECK(tl_config_canonical(kConfig, nullptr, 0, &needed) == TL_OK);
  std::vector<char> buf(needed);
  CHECK(tl_config_canonical(kConfig, buf.data(), buf.size(), &needed) == TL_OK);
  CHECK(std::string(buf.data()).find("[matrix.S]") != std::string::npos);

  tl_run_options o = tl_run_options_default();
  tl_record* r = nullptr;
  REQUIRE(tl_run_text("classify", kConfig, &o, &r) == TL_OK);
  CHECK(std::string(tl_record_command(r)) == "classify");
  CHECK(tl_record_rejected(r) == 0);
  CHECK(tl_record_output_count(r) == 2);
  CHECK(std::string(tl_record_output_name(r, 0)) == "classify.jsonl");
  CHECK(std::string(tl_record_output_content(r, 0)).find("hyperbolic") != std::string::npos);
  CHECK(std::string(tl_record_json(r)).find("\"status\": \"ok\"") != std::string::npos);
  CHECK(tl_record_output_name(r, 9) == nullptr);
  tl_record_free(r);

  o.precision = 8;
  CHECK(tl_run_text("equidist", kConfig, &o, &r) == TL_ERR_BUDGET);
  CHECK(tl_run_text("dance", kConfig, &o, &r) == TL_ERR_VALIDATION);
  CHECK(tl_run("classify", "/nonexistent.toml", nullptr, &r) == TL_ERR_IO);
  std::string fixture = std::string(TORLAB_FIXTURES) + "/classify_cat.toml";
  CHECK(tl_run("classify", fixture.c_str(), nullptr, &r) == TL_OK);
  tl_record_free(r);
}

}  // TEST_SUITE
