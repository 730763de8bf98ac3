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
#include <set>

#include "torlab/constructor.hpp"
#include "torlab/errors.hpp"

using namespace torlab;

namespace {

const IntMatrix kCat = IntMatrix::from_rows({{2, 1}, {1, 1}});
const IntMatrix kT2 = IntMatrix::from_rows({{1, 1}, {1, 2}});

ConstructionConfig pair_config() {
  ConstructionConfig cfg;
  cfg.s_matrix = kCat;
  cfg.t_matrix = kT2;
  cfg.targets = {{"0", "0"}};
  cfg.horizon_s = 2000;
  cfg.horizon_t = 200;
  return cfg;
}

double min_margin(const Certificate& c) {
  double m = 1.0;
  for (const auto& t : c.margins) m = std::min(m, t.margin);
  return m;
}

TorusPoint point_of(const std::vector<std::string>& dec, unsigned bits) {
  return parse_point(dec, bits);
}

}  // namespace

TEST_SUITE("constructor") {

TEST_CASE("FNV-1a reference values") {
  CHECK(fnv1a64_hex("") == "cbf29ce484222325");
  CHECK(fnv1a64_hex("a") == "af63dc4c8601ec8c");
  CHECK(fnv1a64_hex("foobar") == "85944171f73967e8");
}

TEST_CASE("Bob names round-trip") {
  for (BobKind b : {BobKind::kStationary, BobKind::kRandom, BobKind::kGreedy})
    CHECK(bob_kind_from_string(to_string(b)) == b);
  CHECK_THROWS_AS(bob_kind_from_string("sneaky"), Error);
}

TEST_CASE("budget and separation constants") {
  ConstructionConfig cfg = pair_config();
  CHECK(cfg.budget_bits() == std::max(required_precision(kCat, 2000), required_precision(kT2, 200)));
  CHECK(cfg.delta_out() == std::ldexp(1.0, -85));
  CHECK(cfg.delta_game() == 2 * cfg.delta_out());
  CHECK(cfg.score_threshold() == doctest::Approx(5 / std::sqrt(2000.0)));
}

TEST_CASE("base samples are seeded and lie on the complement leaf") {
  Splitting s = splitting(kCat, 1e-10, 512);
  Splitting t = splitting(kT2, 1e-10, 512);
  ComplementPair cp = choose_complements(s, t);
  const unsigned bits = 400;
  BaseSample a = sample_base(cp.t_basis, 5, bits);
  BaseSample b = sample_base(cp.t_basis, 5, bits);
  BaseSample c = sample_base(cp.t_basis, 6, bits);
  CHECK(a.point == b.point);
  CHECK(a.fractions == b.fractions);
  CHECK_FALSE(a.point == c.point);
  for (const auto& f : a.fractions) {
    CHECK(f >= 0);
    CHECK(f < (mpz_class(1) << bits));
  }
  // a == sum f_j t_j (mod 1), recomputed here
  std::vector<double> expect(2, 0.0);
  for (std::size_t i = 0; i < 2; ++i) {
    HpReal acc = hp_zero(bits + 64);
    for (std::size_t j = 0; j < cp.t_basis.size(); ++j)
      acc += hp_from_fixed(a.fractions[j], bits, bits + 64) * cp.t_basis[j][i];
    acc -= floor(acc);
    expect[i] = acc.convert_to<double>();
  }
  TorusPoint e = reduce_mod1(std::span<const double>(expect), 64);
  CHECK(torus_distance(a.point.with_precision(64), e) < 1e-15);
  try {
    sample_base(cp.t_basis, 5, 100, 200);
    FAIL("expected a budget error");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::kBudget);
  }
}

TEST_CASE("construction for a hyperbolic pair is accepted and verifies") {
  ConstructionConfig cfg = pair_config();
  Certificate c = construct_point(cfg);
  REQUIRE(c.accepted);
  CHECK(c.classification_s == "hyperbolic");
  CHECK(c.s_dim == 1);
  CHECK(c.t_dim == 1);
  CHECK(c.equidistribution.max_score <= c.score_threshold);
  CHECK(min_margin(c) >= c.delta_out);
  CHECK(c.transcript.valid);
  CHECK(c.transcript_hash == "fnv1a64:" + fnv1a64_hex(transcript_to_jsonl(c.transcript)));
  VerificationReport r = verify_certificate(c, cfg);
  CHECK(r.decomposition_ok);
  CHECK(r.rebuild_ok);
  CHECK(r.equidistribution_ok);
  CHECK(r.avoidance_ok);
  CHECK(r.passed());
  CHECK(r.bits == 2 * c.bits);
}

TEST_CASE("certificates serialize deterministically") {
  ConstructionConfig cfg = pair_config();
  std::string a = certificate_to_jsonl(construct_point(cfg));
  std::string b = certificate_to_jsonl(construct_point(cfg));
  CHECK(a == b);
  Certificate back = certificate_from_jsonl(a);
  CHECK(certificate_to_jsonl(back) == a);
  CHECK(verify_certificate(back, cfg).passed());
  CHECK(a.find("\"finite_horizon\"") != std::string::npos);
}

TEST_CASE("a tampered point fails verification") {
  ConstructionConfig cfg = pair_config();
  Certificate c = construct_point(cfg);
  Certificate bad = c;
  std::string& digit = bad.x[0];
  digit[4] = digit[4] == '1' ? '2' : '1';
  VerificationReport r = verify_certificate(bad, cfg);
  CHECK_FALSE(r.decomposition_ok);
  CHECK_FALSE(r.passed());
  CHECK_THROWS_AS(certificate_from_jsonl("{\"record\":\"nonsense\"}\n"), Error);
  CHECK_THROWS_AS(certificate_from_jsonl("not json\n"), Error);
}

TEST_CASE("inconsistent recorded margins are an integrity error") {
  ConstructionConfig cfg = pair_config();
  Certificate c = construct_point(cfg);
  c.margins[0].margin += 0.01;
  try {
    verify_certificate(c, cfg);
    FAIL("expected an integrity error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kIntegrity);
  }
}

TEST_CASE("the equidistribution test transfers along the stable leaf") {
  ConstructionConfig cfg = pair_config();
  Certificate c = construct_point(cfg);
  TorusPoint a = point_of(c.a, c.bits);
  TorusPoint x = point_of(c.x, c.bits);
  auto sa = equidistribution_score(a, kCat, cfg.horizon_s, cfg.box);
  auto sx = equidistribution_score(x, kCat, cfg.horizon_s, cfg.box);
  CHECK(std::fabs(sa.max_score - sx.max_score) <= 0.02);
}

TEST_CASE("property: random Bob seeds give distinct accepted points") {
  ConstructionConfig cfg = pair_config();
  std::set<std::vector<std::string>> seen;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    cfg.seed = seed;
    Certificate c = construct_point(cfg);
    CHECK(c.accepted);
    if (c.accepted) CHECK(min_margin(c) >= c.delta_out);
    seen.insert(c.x);
  }
  CHECK(seen.size() == 10);
}

TEST_CASE("two targets and a greedy Bob") {
  ConstructionConfig cfg = pair_config();
  cfg.targets = {{"0", "0"}, {"0.5", "0.5"}};
  Certificate c = construct_point(cfg);
  CHECK(c.accepted);
  CHECK(c.margins.size() == 2);
  cfg.targets = {{"0", "0"}};
  cfg.bob = BobKind::kGreedy;
  Certificate g = construct_point(cfg);
  CHECK(g.accepted);
  CHECK(verify_certificate(g, cfg).passed());
}

TEST_CASE("a single round game still produces a consistent certificate") {
  ConstructionConfig cfg = pair_config();
  cfg.rounds = 1;
  Certificate c = construct_point(cfg);
  CHECK(c.transcript.rounds == 1);
  CHECK(c.delta_out == 0.25 * 0.25 / 8);
  const bool ok = c.equidistribution.max_score <= c.score_threshold && min_margin(c) >= c.delta_out;
  CHECK(c.accepted == ok);
  CHECK(verify_certificate(c, cfg).passed() == ok);
}

TEST_CASE("zero offset skips the game") {
  ConstructionConfig cfg = pair_config();
  cfg.zero_offset = true;
  Certificate c = construct_point(cfg);
  CHECK(c.x == c.a);
  for (const auto& b : c.b) CHECK(b == "0");
  CHECK(c.transcript_hash.empty());
  CHECK(c.offset_coefficients.empty());
}

TEST_CASE("Salem map against a hyperbolic block sum in four dimensions") {
  ConstructionConfig cfg;
  cfg.s_matrix = IntMatrix::companion({1, -1, -1, -1});
  cfg.t_matrix = IntMatrix::block_diagonal(kCat, kT2);
  cfg.targets = {{"0", "0", "0", "0"}};
  cfg.horizon_s = 2000;
  Certificate c = construct_point(cfg);
  CHECK(c.classification_s == "quasihyperbolic_central_spin");
  CHECK(c.accepted);
  CHECK(verify_certificate(c, cfg).passed());
}

TEST_CASE("configuration errors") {
  ConstructionConfig cfg = pair_config();
  cfg.precision = cfg.budget_bits() - 1;
  try {
    construct_point(cfg);
    FAIL("expected a budget error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kBudget);
  }
  cfg = pair_config();
  cfg.alpha = 0.4;
  try {
    construct_point(cfg);
    FAIL("expected a configuration error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kConfiguration);
  }
  cfg = pair_config();
  cfg.targets.clear();
  CHECK_THROWS_AS(construct_point(cfg), Error);
  cfg = pair_config();
  cfg.t_matrix = IntMatrix::identity(3);
  CHECK_THROWS_AS(construct_point(cfg), Error);
}

}  // TEST_SUITE
