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
#include <complex>

#include "oracles.hpp"
#include "torlab/equidist.hpp"
#include "torlab/errors.hpp"
#include "torlab/hp_linalg.hpp"
#include "torlab/spectral.hpp"

using namespace torlab;

namespace {

const IntMatrix kCat = IntMatrix::from_rows({{2, 1}, {1, 1}});
// x^4 - x^3 - x^2 - x + 1, a Salem polynomial
const IntMatrix kSalem = IntMatrix::companion({1, -1, -1, -1});

TorusPoint shifted(const TorusPoint& x, const HpVector& y) {
  const unsigned p = x.precision();
  std::vector<mpz_class> raw;
  for (std::size_t i = 0; i < y.size(); ++i)
    raw.push_back(x.coords().raw(i) + hp_round_to_mpz(ldexp(y[i], static_cast<int>(p))));
  return reduce_mod1(FixedVector(std::move(raw), p));
}

HpVector scaled(const HpVector& v, double s) {
  HpVector out = v;
  for (auto& c : out) c *= s;
  return out;
}

}  // namespace

TEST_SUITE("equidist") {

TEST_CASE("Weyl sums of a fixed point are one") {
  TorusPoint zero = parse_point(std::vector<std::string>{"0", "0"}, 160);
  CHECK(weyl_sum(zero, kCat, 50, {1, 0}) == doctest::Approx(1.0));
  CHECK(weyl_sum(zero, kCat, 50, {3, -2}) == doctest::Approx(1.0));
}

TEST_CASE("Weyl sums of rational points match exact residues") {
  const std::vector<std::int64_t> m = {2, 1, 1, 1};
  struct Case {
    std::vector<std::int64_t> p;
    std::int64_t q;
  };
  for (const Case& c : {Case{{1, 2}, 5}, Case{{1, 0}, 7}, Case{{3, 5}, 11}, Case{{2, 9}, 13}}) {
    // floor(p 2^bits / q), exact
    std::vector<mpz_class> raw;
    const unsigned bits = required_precision(kCat, 60) + 64;
    for (auto v : c.p) {
      mpz_class num = mpz_class(v) << bits;
      mpz_class r;
      mpz_fdiv_q(r.get_mpz_t(), num.get_mpz_t(), mpz_class(c.q).get_mpz_t());
      raw.push_back(r);
    }
    TorusPoint x(FixedVector(raw, bits), -double(bits));
    for (long j0 = -2; j0 <= 2; ++j0)
      for (long j1 = -2; j1 <= 2; ++j1) {
        if (j0 == 0 && j1 == 0) continue;
        CHECK(weyl_sum(x, kCat, 60, {j0, j1}) ==
              doctest::Approx(oracle::rational_weyl(m, c.p, c.q, 60, {j0, j1})).epsilon(1e-9));
      }
  }
}

TEST_CASE("score report covers every character in the box") {
  TorusPoint x = random_point(2, 5, 64, required_precision(kCat, 100));
  auto r = equidistribution_score(x, kCat, 100, 2);
  CHECK(r.scores.size() == 24);
  double best = 0;
  for (const auto& s : r.scores) {
    CHECK(s.score >= 0.0);
    CHECK(s.score <= 1.0);
    best = std::max(best, s.score);
  }
  CHECK(r.max_score == best);
  CHECK(r.precision_ok);
  CHECK(r.n_terms == 100);
}

TEST_CASE("random starting points of the cat map pass the Weyl test") {
  const std::size_t n = 4096;
  const unsigned bits = required_precision(kCat, n);
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    TorusPoint x = random_point(2, seed, 512, bits);
    auto r = equidistribution_score(x, kCat, n, 3);
    CHECK(r.max_score <= weyl_threshold(n));
  }
}

TEST_CASE("exact spectral Fourier coefficients agree with plain iteration") {
  const std::vector<std::vector<std::int64_t>> pool = {
      {2, 1, 1, 1}, {0, -1, 1, 0}, {1, 1, 0, 1}, {0, 1, 1, 0}, {-1, 0, 0, -1}, {3, 2, 1, 1}};
  for (const auto& e : pool) {
    IntMatrix m(2, e);
    for (long j0 = -2; j0 <= 2; ++j0)
      for (long j1 = -2; j1 <= 2; ++j1)
        for (unsigned n = 0; n <= 6; ++n)
          CHECK(spectral_fourier_exact(m, {j0, j1}, n) == oracle::kernel_indicator(e, {j0, j1}, n));
  }
}

TEST_CASE("Monte Carlo spectral coefficients approach the exact ones") {
  const std::size_t samples = 20000;
  const double tol = 4.0 / std::sqrt(double(samples));
  CHECK(spectral_fourier_sampled(kCat, {1, 2}, 0, samples, 1) == doctest::Approx(1.0));
  for (unsigned n = 1; n <= 4; ++n)
    CHECK(spectral_fourier_sampled(kCat, {1, -1}, n, samples, n) <= tol);
  IntMatrix rot = IntMatrix::from_rows({{0, -1}, {1, 0}});
  CHECK(spectral_fourier_exact(rot, {1, 1}, 4) == 1);
  CHECK(spectral_fourier_sampled(rot, {1, 1}, 4, samples, 3) == doctest::Approx(1.0));
  CHECK(spectral_fourier_sampled(rot, {1, 1}, 1, samples, 3) <= tol);
}

TEST_CASE("rotation eigenvalues") {
  auto z = rotation_spectral({0.25}, {1}, 3);
  CHECK(z.real() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(z.imag() == doctest::Approx(-1.0));
  CHECK(std::abs(rotation_spectral({0.25, 0.5}, {2, 1}, 4) - 1.0) < 1e-12);
  const std::vector<double> alpha = {0.6180339887498949, 0.4142135623730951};
  for (long n = 0; n < 50; ++n) {
    auto w = rotation_spectral(alpha, {1, -2}, n);
    CHECK(std::abs(w) == doctest::Approx(1.0));
    const double phase = double(n) * (alpha[0] - 2 * alpha[1]);
    CHECK(std::abs(w - std::polar(1.0, 2 * M_PI * phase)) < 1e-9);
  }
  CHECK_THROWS_AS(rotation_spectral({0.1}, {1, 1}, 2), Error);
}

TEST_CASE("product score of an orbit paired with an irrational rotation") {
  const std::size_t n = 4096;
  TorusPoint x = random_point(2, 7, 512, required_precision(kCat, n));
  auto r = product_equidistribution_score(x, kCat, {0.3}, {0.6180339887498949}, n, 1);
  CHECK(r.scores.size() == 26);
  CHECK(r.max_score <= weyl_threshold(n));
  // the rotation alone is a trivial orbit when alpha = 0
  TorusPoint zero = parse_point(std::vector<std::string>{"0", "0"}, 128);
  auto fixed = product_equidistribution_score(zero, kCat, {0.0}, {0.0}, 10, 1);
  CHECK(fixed.max_score == doctest::Approx(1.0));
}

TEST_CASE("stable offsets of the cat map shrink at the contracting eigenvalue") {
  Splitting sp = splitting(kCat);
  const auto e = oracle::eigen_2x2({2, 1, 1, 1});
  HpVector y = scaled(sp.stable.at(0), 1e-3);
  const double ymax = 1e-3 * std::max(std::fabs(e.vec[0][0]), std::fabs(e.vec[0][1]));
  TorusPoint x = random_point(2, 3, 64, 256);
  auto gaps = shadowing_gap(x, y, sp, kCat, 20);
  REQUIRE(gaps.size() == 21);
  for (std::size_t n = 0; n <= 20; ++n)
    CHECK(gaps[n] == doctest::Approx(ymax * std::pow(std::fabs(e.lambda[0]), double(n))).epsilon(1e-6));
}

TEST_CASE("a zero offset shadows exactly") {
  Splitting sp = splitting(kCat);
  TorusPoint x = random_point(2, 4, 64, 256);
  for (double g : shadowing_gap(x, HpVector{hp_zero(256), hp_zero(256)}, sp, kCat, 30)) CHECK(g == 0.0);
}

TEST_CASE("offsets with an expanding component are rejected") {
  Splitting sp = splitting(kCat);
  TorusPoint x = random_point(2, 4, 64, 256);
  try {
    shadowing_gap(x, scaled(sp.unstable.at(0), 1e-3), sp, kCat, 10);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kRejectedInput);
  }
}

TEST_CASE("isometric offsets of a Salem map stay within a band") {
  Splitting sp = splitting(kSalem);
  REQUIRE(sp.central_semisimple.size() == 2);
  const std::size_t steps = 200;
  TorusPoint x = random_point(4, 9, 64, required_precision(kSalem, steps) + 64);
  auto gaps = shadowing_gap(x, scaled(sp.central_semisimple[0], 1e-3), sp, kSalem, steps);
  for (double g : gaps) {
    CHECK(g >= 1e-4);
    CHECK(g <= 1e-2);
  }
}

TEST_CASE("property: Weyl scores are invariant under small stable shifts") {
  const std::size_t n = 4096;
  const unsigned bits = required_precision(kCat, n);
  // the stable direction must be as precise as the points
  Splitting sp = splitting(kCat, 1e-10, bits);
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    TorusPoint x = random_point(2, 40 + seed, 512, bits);
    TorusPoint z = shifted(x, scaled(sp.stable.at(0), 1e-3 * double(seed + 1)));
    auto a = equidistribution_score(x, kCat, n, 3);
    auto b = equidistribution_score(z, kCat, n, 3);
    CHECK(std::fabs(a.max_score - b.max_score) <= 0.02);
    for (std::size_t c = 0; c < a.scores.size(); ++c)
      CHECK(std::fabs(a.scores[c].score - b.scores[c].score) <= 0.02);
  }
}

TEST_CASE("property: Weyl sums lie in [0,1] and a j,-j pair agree") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    TorusPoint x = random_point(2, seed, 64, required_precision(kCat, 64));
    const long j0 = long(seed % 5) - 2, j1 = long(seed % 3) + 1;
    double w = weyl_sum(x, kCat, 64, {j0, j1});
    CHECK(w >= 0.0);
    CHECK(w <= 1.0);
    CHECK(weyl_sum(x, kCat, 64, {-j0, -j1}) == doctest::Approx(w).epsilon(1e-12));
  }
}

TEST_CASE("dimension mismatches are rejected") {
  TorusPoint x = random_point(2, 1, 64, 128);
  CHECK_THROWS_AS(weyl_sum(x, kCat, 10, {1, 2, 3}), Error);
  CHECK_THROWS_AS(weyl_sum(x, kCat, 0, {1, 2}), Error);
  CHECK_THROWS_AS(spectral_fourier_exact(kCat, {1}, 2), Error);
}

}  // TEST_SUITE
