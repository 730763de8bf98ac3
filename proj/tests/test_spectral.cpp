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

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <random>

#include "oracles.hpp"
#include "torlab/errors.hpp"
#include "torlab/hp_linalg.hpp"
#include "torlab/polynomial.hpp"
#include "torlab/spectral.hpp"
#include "torlab/torus.hpp"

using namespace torlab;

namespace {

const IntMatrix kCat = IntMatrix::from_rows({{2, 1}, {1, 1}});
const IntMatrix kT2 = IntMatrix::from_rows({{1, 1}, {1, 2}});
const IntMatrix kSalem = IntMatrix::companion({1, -1, -1, -1});  // x^4 - x^3 - x^2 - x + 1

IntPolynomial poly(std::vector<long> c) { return IntPolynomial::from_ints(c); }

// |sin| of the angle between a basis column and a reference 2-vector.
double line_gap(const Eigen::MatrixXd& basis, const double* ref) {
  Eigen::Vector2d v = basis.col(0).normalized();
  return std::fabs(v(0) * ref[1] - v(1) * ref[0]);
}

// Distance from M v to span(basis), relative to |v|.
double invariance_residual(const IntMatrix& m, const Eigen::MatrixXd& basis) {
  Eigen::MatrixXd md(m.dim(), m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) md(i, j) = double(m.at(i, j));
  double worst = 0;
  for (Eigen::Index k = 0; k < basis.cols(); ++k) {
    Eigen::VectorXd w = md * basis.col(k);
    Eigen::VectorXd proj = basis * (basis.transpose() * w);
    worst = std::max(worst, (w - proj).norm() / basis.col(k).norm());
  }
  return worst;
}

IntMatrix jordan_salem() {
  // [[C, I], [0, C]] with C the Salem companion: a Jordan shear on the
  // central part.
  std::vector<std::int64_t> e(64, 0);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      e[i * 8 + j] = kSalem.at(i, j);
      e[(i + 4) * 8 + j + 4] = kSalem.at(i, j);
    }
  for (int i = 0; i < 4; ++i) e[i * 8 + i + 4] = 1;
  return IntMatrix(8, e);
}

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("characteristic polynomial examples") {
  CHECK(char_poly(kCat) == poly({1, -3, 1}));
  CHECK(char_poly(IntMatrix::identity(2)) == poly({1, -2, 1}));
  CHECK(char_poly(IntMatrix::from_rows({{0, -1}, {1, 0}})) == poly({1, 0, 1}));
  CHECK(char_poly(kSalem) == poly({1, -1, -1, -1, 1}));
}

TEST_CASE("property: characteristic polynomial annihilates its matrix") {
  std::mt19937_64 g(17);
  int tested = 0;
  while (tested < 40) {
    const std::size_t d = 2 + g() % 3;
    std::vector<std::int64_t> e(d * d);
    for (auto& v : e) v = static_cast<std::int64_t>(g() % 7) - 3;
    IntMatrix* m = nullptr;
    try {
      m = new IntMatrix(d, e);
    } catch (const Error&) {
      continue;
    }
    IntPolynomial p = char_poly(*m);
    CHECK(p.degree() == int(d));
    CHECK(abs(p[0]) == abs(m->determinant()));
    ZMatrix z = evaluate_at(p, *m);
    CHECK(z == ZMatrix(d));
    delete m;
    ++tested;
  }
}

TEST_CASE("cyclotomic polynomials and Sturm counts") {
  CHECK(cyclotomic(1) == poly({-1, 1}));
  CHECK(cyclotomic(4) == poly({1, 0, 1}));
  CHECK(cyclotomic(6) == poly({1, -1, 1}));
  CHECK(cyclotomic_orders_up_to(2) == std::vector<unsigned>{1, 2, 3, 4, 6});
  IntPolynomial mixed = cyclotomic(4) * cyclotomic(5) * poly({1, -3, 1});
  CHECK(cyclotomic_divisors(mixed) == std::vector<unsigned>{4, 5});
  IntPolynomial q = reciprocal_trace_polynomial(poly({1, -1, -1, -1, 1}));
  CHECK(q == poly({-3, -1, 1}));
  CHECK(sturm_count(q, mpq_class(-2), mpq_class(2)) == 1);
  CHECK(sturm_count(poly({-2, 0, 1}), mpq_class(-2), mpq_class(2)) == 2);
}

TEST_CASE("factorization splits products and keeps the Salem quartic whole") {
  auto f = factor(poly({1, -1, -1, -1, 1}));
  REQUIRE(f.size() == 1);
  CHECK(f[0].polynomial == poly({1, -1, -1, -1, 1}));
  IntPolynomial p = poly({1, -3, 1}) * poly({1, -3, 1}) * cyclotomic(3) * poly({-2, 1});
  auto g = factor(p);
  IntPolynomial back = poly({1});
  for (const auto& x : g)
    for (int k = 0; k < x.multiplicity; ++k) back = back * x.polynomial;
  CHECK(back == p);
  CHECK(g.size() == 3);
}

TEST_CASE("is_ergodic examples") {
  CHECK(is_ergodic(kCat));
  CHECK_FALSE(is_ergodic(IntMatrix::from_rows({{0, -1}, {1, 0}})));
  CHECK_FALSE(is_ergodic(IntMatrix::identity(2)));
  CHECK(is_ergodic(kSalem));
}

TEST_CASE("property: is_ergodic agrees with the root-of-unity oracle on small 2x2 matrices") {
  int checked = 0;
  for (int a = -2; a <= 2; ++a)
    for (int b = -2; b <= 2; ++b)
      for (int c = -2; c <= 2; ++c)
        for (int d = -2; d <= 2; ++d) {
          if (a * d - b * c == 0) continue;
          IntMatrix m(2, {a, b, c, d});
          CHECK(is_ergodic(m) == oracle::ergodic_2x2({a, b, c, d}));
          ++checked;
        }
  CHECK(checked > 400);
}

TEST_CASE("cat map splitting matches the quadratic-formula eigenvectors") {
  Splitting sp = splitting(kCat);
  CHECK(sp.classification == Classification::kHyperbolic);
  REQUIRE(sp.stable.size() == 1);
  REQUIRE(sp.unstable.size() == 1);
  CHECK(sp.central.empty());
  auto e = oracle::eigen_2x2({2, 1, 1, 1});
  CHECK(line_gap(sp.stable_d(), e.vec[0]) < 1e-14);
  CHECK(line_gap(sp.unstable_d(), e.vec[1]) < 1e-14);
  CHECK(rotation_vector(sp).empty());
}

TEST_CASE("Salem companion is central spin with one rotation block") {
  Splitting sp = splitting(kSalem);
  CHECK(sp.classification == Classification::kCentralSpin);
  CHECK(sp.stable.size() == 1);
  CHECK(sp.central.size() == 2);
  CHECK(sp.unstable.size() == 1);
  CHECK(sp.central_semisimple.size() == 2);
  auto angles = rotation_vector(sp);
  REQUIRE(angles.size() == 1);
  // x + 1/x = (1 - sqrt 13)/2 on the unit pair
  const double theta = std::acos((1 - std::sqrt(13.0)) / 4) / (2 * M_PI);
  CHECK(angles[0] == doctest::Approx(theta).epsilon(1e-12));
  const auto& f = sp.spectrum.factors;
  REQUIRE(f.size() == 1);
  CHECK(f[0].reciprocal);
  CHECK(f[0].unit_roots == 2);
}

TEST_CASE("block sums split blockwise") {
  Splitting sp = splitting(IntMatrix::block_diagonal(kCat, kCat));
  CHECK(sp.classification == Classification::kHyperbolic);
  CHECK(sp.stable.size() == 2);
  Splitting mixed = splitting(IntMatrix::block_diagonal(kCat, kSalem));
  CHECK(mixed.classification == Classification::kCentralSpin);
  auto angles = rotation_vector(mixed);
  REQUIRE(angles.size() == 1);
  CHECK(angles[0] == doctest::Approx(rotation_vector(splitting(kSalem))[0]).epsilon(1e-12));
}

TEST_CASE("Jordan shear on the central part") {
  Splitting sp = splitting(jordan_salem());
  CHECK(sp.classification == Classification::kJordan);
  CHECK(sp.central.size() == 4);
  CHECK(sp.central_semisimple.size() == 2);
  try {
    rotation_vector(sp);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kClassification);
  }
}

TEST_CASE("nonergodic input is a classification error naming the cyclotomic factor") {
  try {
    splitting(IntMatrix::block_diagonal(kCat, IntMatrix::from_rows({{0, -1}, {1, 0}})));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kClassification);
    CHECK(std::string(e.what()).find("4") != std::string::npos);
  }
  CHECK(classify(IntMatrix::identity(3)) == Classification::kNonergodic);
}

TEST_CASE("property: splittings are invariant, complete and dynamically correct") {
  const std::vector<IntMatrix> pool = {kCat, kT2, kSalem, IntMatrix::block_diagonal(kCat, kT2),
                                       IntMatrix::block_diagonal(kSalem, kCat),
                                       IntMatrix::from_rows({{3, 2}, {1, 1}}), jordan_salem()};
  for (const auto& m : pool) {
    Splitting sp = splitting(m);
    CHECK(sp.stable.size() + sp.central.size() + sp.unstable.size() == m.dim());
    CHECK(sp.central_semisimple.size() <= sp.central.size());
    CHECK((sp.classification == Classification::kHyperbolic) == sp.central.empty());
    CHECK((sp.classification == Classification::kCentralSpin) ==
          (!sp.central.empty() && sp.central_semisimple.size() == sp.central.size()));
    for (auto basis : {sp.stable_d(), sp.central_d(), sp.unstable_d(), sp.central_semisimple_d()})
      if (basis.cols()) CHECK(invariance_residual(m, basis) < 1e-10);

    HpMatrix mm = HpMatrix::from_z(ZMatrix(m), sp.bits);
    for (const auto& v0 : sp.stable) {
      HpVector hv = v0;
      const double n0 = static_cast<double>(norm2(hv));
      for (int n = 1; n <= 40; ++n) hv = mm * hv;
      CHECK(static_cast<double>(norm2(hv)) / n0 < 1e-5);
    }
    for (Eigen::Index k = 0; k < sp.central_semisimple_d().cols(); ++k) {
      HpVector hv = sp.central_semisimple[k];
      const double n0 = static_cast<double>(norm2(hv));
      for (int n = 1; n <= 100; ++n) {
        hv = mm * hv;
        const double r = static_cast<double>(norm2(hv)) / n0;
        CHECK(r < 10);
        CHECK(r > 0.1);
      }
    }
  }
}

TEST_CASE("property: Sturm certification matches numeric root moduli") {
  const std::vector<IntMatrix> pool = {kCat, kSalem, IntMatrix::block_diagonal(kSalem, kT2),
                                       IntMatrix::companion({1, 1, 0, -1, -1, -1, -1, -1, 0, 1})};
  for (const auto& m : pool) {
    Spectrum s = spectrum(m);
    for (std::size_t fi = 0; fi < s.factors.size(); ++fi) {
      int numeric = 0;
      for (const auto& ev : s.eigenvalues)
        if (ev.factor == fi && std::fabs(std::abs(ev.value.to_complex()) - 1.0) < 1e-12) ++numeric;
      CHECK(numeric == s.factors[fi].unit_roots);
    }
  }
}

TEST_CASE("span condition and complements on the 2-torus pair") {
  Splitting s = splitting(kCat), t = splitting(kT2);
  SpanCheck sc = span_condition(s, t);
  CHECK(sc.spans);
  CHECK(sc.rank == 2);
  CHECK(sc.warning.empty());
  SpanCheck same = span_condition(s, s);
  CHECK_FALSE(same.spans);
  CHECK(same.rank == 1);

  ComplementPair cp = choose_complements(s, t);
  REQUIRE(cp.s_basis.size() == 1);
  REQUIRE(cp.t_basis.size() == 1);
  auto es = oracle::eigen_2x2({2, 1, 1, 1});
  auto et = oracle::eigen_2x2({1, 1, 1, 2});
  CHECK(line_gap(to_eigen(cp.s_basis, 2), es.vec[0]) < 1e-14);
  CHECK(line_gap(to_eigen(cp.t_basis, 2), et.vec[0]) < 1e-14);
  // condition number of the oracle change of basis
  Eigen::Matrix2d b;
  b << es.vec[0][0], et.vec[0][0], es.vec[0][1], et.vec[0][1];
  Eigen::JacobiSVD<Eigen::Matrix2d> svd(b);
  const double cond = svd.singularValues()(0) / svd.singularValues()(1);
  CHECK(cp.condition_number == doctest::Approx(cond).epsilon(1e-9));
}

TEST_CASE("property: complement projections") {
  struct Pair {
    IntMatrix s, t;
  };
  const std::vector<Pair> pairs = {
      {kCat, kT2},
      {IntMatrix::block_diagonal(kCat, kCat), IntMatrix::block_diagonal(kT2, kT2)},
      {kSalem, IntMatrix::block_diagonal(kCat, kT2)}};
  std::mt19937_64 g(23);
  for (const auto& p : pairs) {
    ComplementPair cp = choose_complements(splitting(p.s), splitting(p.t));
    const auto d = static_cast<Eigen::Index>(cp.dim);
    CHECK(cp.s_basis.size() + cp.t_basis.size() == cp.dim);
    CHECK(std::isfinite(cp.condition_number));
    CHECK((cp.proj_s + cp.proj_t - Eigen::MatrixXd::Identity(d, d)).norm() < 1e-10);
    CHECK((cp.proj_s * cp.proj_s - cp.proj_s).norm() < 1e-10);
    Eigen::MatrixXd sb = to_eigen(cp.s_basis, cp.dim), tb = to_eigen(cp.t_basis, cp.dim);
    CHECK((cp.proj_s * tb).norm() < 1e-10);
    CHECK((cp.proj_s * sb - sb).norm() < 1e-10);
    for (int k = 0; k < 10; ++k) {
      Eigen::VectorXd v(d);
      for (Eigen::Index i = 0; i < d; ++i) v(i) = oracle::unit_double(g) - 0.5;
      CHECK((cp.proj_s * v + cp.proj_t * v - v).norm() < 1e-12);
    }
  }
}

TEST_CASE("complementary blocks on the 4-torus span") {
  SpanCheck sc = span_condition(splitting(IntMatrix::block_diagonal(kCat, kCat)),
                                splitting(IntMatrix::block_diagonal(kT2, kT2)));
  CHECK(sc.spans);
  CHECK(sc.rank == 4);
}

TEST_CASE("commuting pair sharing eigenlines cannot be complemented") {
  IntMatrix cat2 = IntMatrix::from_rows({{5, 3}, {3, 2}});
  try {
    choose_complements(splitting(kCat), splitting(cat2));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kConstruction);
  }
}

}  // TEST_SUITE
