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

#include "torlab/spectral.hpp"

#include <algorithm>
#include <boost/math/constants/constants.hpp>
#include <cmath>
#include <numeric>

#include "torlab/errors.hpp"
#include "torlab/hp_linalg.hpp"
#include "torlab/torus.hpp"

namespace torlab {

const char* to_string(Classification c) {
  switch (c) {
    case Classification::kHyperbolic:
      return "hyperbolic";
    case Classification::kCentralSpin:
      return "quasihyperbolic_central_spin";
    case Classification::kJordan:
      return "quasihyperbolic_jordan";
    case Classification::kNonergodic:
      return "nonergodic";
  }
  return "unknown";
}

namespace {

unsigned cyclotomic_order(const IntPolynomial& p) {
  const unsigned deg = static_cast<unsigned>(p.degree());
  for (unsigned k : cyclotomic_orders_up_to(deg))
    if (euler_phi(k) == deg && cyclotomic(k) == p) return k;
  return 0;
}

double modulus_gap(const HpComplex& z) {
  return std::fabs(z.abs().convert_to<double>() - 1.0);
}

Classification decide(const Spectrum& sp) {
  bool any_unit = false;
  bool jordan = false;
  for (const auto& f : sp.factors) {
    if (f.cyclotomic) return Classification::kNonergodic;
    if (f.unit_roots > 0) {
      any_unit = true;
      jordan = jordan || f.jordan;
    }
  }
  if (!any_unit) return Classification::kHyperbolic;
  return jordan ? Classification::kJordan : Classification::kCentralSpin;
}

std::vector<HpVector> image_basis(const IntMatrix& m, const std::vector<HpComplex>& annihilated,
                                  std::size_t rank, unsigned bits, double tol, const char* what) {
  if (rank == 0) return {};
  HpMatrix h = evaluate_at(real_poly_from_roots(annihilated, bits), m, bits);
  GramSchmidtResult gs = pivoted_gram_schmidt(h.columns(), rank, bits);
  require(gs.basis.size() == rank && gs.next_residual <= tol && gs.pivots.back() > tol,
          ErrorKind::kCertification,
          std::string("numeric rank of the ") + what + " subspace disagrees with the root count");
  return gs.basis;
}

}  // namespace

Spectrum spectrum(const IntMatrix& m, unsigned bits, double tol) {
  Spectrum out;
  out.bits = bits;
  out.characteristic = char_poly(m);
  const std::size_t d = m.dim();
  for (auto& irr : factor(out.characteristic)) {
    FactorInfo f;
    f.polynomial = irr.polynomial;
    f.multiplicity = irr.multiplicity;
    f.cyclotomic = cyclotomic_order(f.polynomial);
    f.reciprocal = f.polynomial.is_palindromic() || f.polynomial.is_antipalindromic();
    const int deg = f.polynomial.degree();
    if (f.cyclotomic) {
      f.unit_roots = deg;
    } else if (f.polynomial.is_palindromic() && deg % 2 == 0) {
      IntPolynomial q = reciprocal_trace_polynomial(f.polynomial);
      f.unit_roots = 2 * sturm_count(q, mpq_class(-2), mpq_class(2));
    }
    ZMatrix pm = evaluate_at(f.polynomial, m);
    std::size_t r1 = rank(pm);
    f.eigenspace_copies = (d - r1) / static_cast<std::size_t>(deg);
    if (f.multiplicity > 1) f.jordan = rank(pm * pm) != r1;
    out.factors.push_back(f);
  }

  for (std::size_t fi = 0; fi < out.factors.size(); ++fi) {
    const FactorInfo& f = out.factors[fi];
    std::vector<HpComplex> zs = roots(f.polynomial, bits);
    std::vector<std::size_t> order(zs.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> gaps;
    for (const auto& z : zs) gaps.push_back(modulus_gap(z));
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return gaps[a] < gaps[b]; });
    std::vector<bool> unit(zs.size(), false);
    for (int k = 0; k < f.unit_roots; ++k) unit[order[k]] = true;
    for (std::size_t k = 0; k < zs.size(); ++k) {
      if (unit[k] && gaps[k] > tol)
        fail(ErrorKind::kCertification, "certified unit root of " + f.polynomial.to_string() +
                                            " has numeric modulus off 1 by more than tol");
      if (!unit[k] && gaps[k] <= tol)
        fail(ErrorKind::kCertification, "root of " + f.polynomial.to_string() +
                                            " lies within tol of the unit circle but the exact "
                                            "count says it is not on it");
      out.eigenvalues.push_back({zs[k], f.multiplicity, fi, unit[k]});
    }
  }
  return out;
}

bool is_ergodic(const IntMatrix& m) {
  require(m.determinant() != 0, ErrorKind::kRejectedInput, "singular matrix");
  return cyclotomic_divisors(char_poly(m)).empty();
}

Classification classify(const IntMatrix& m) {
  if (!is_ergodic(m)) return Classification::kNonergodic;
  return decide(spectrum(m, 128));
}

Eigen::MatrixXd Splitting::stable_d() const { return to_eigen(stable, dim); }
Eigen::MatrixXd Splitting::central_d() const { return to_eigen(central, dim); }
Eigen::MatrixXd Splitting::unstable_d() const { return to_eigen(unstable, dim); }
Eigen::MatrixXd Splitting::central_semisimple_d() const {
  return to_eigen(central_semisimple, dim);
}

Splitting splitting(const IntMatrix& m, double tol, unsigned bits) {
  require(tol > 0 && tol < 1, ErrorKind::kRejectedInput, "tolerance must lie in (0,1)");
  std::vector<unsigned> cyc = cyclotomic_divisors(char_poly(m));
  if (!cyc.empty())
    fail(ErrorKind::kClassification,
         "matrix is not ergodic: characteristic polynomial is divisible by the cyclotomic "
         "polynomial of order " +
             std::to_string(cyc.front()));
  Splitting sp;
  sp.dim = m.dim();
  sp.bits = bits;
  sp.tol = tol;
  sp.spectrum = spectrum(m, bits, tol);
  sp.classification = decide(sp.spectrum);

  std::vector<HpComplex> stable_roots, unit_roots, unstable_roots;
  std::size_t n_stable = 0, n_unit = 0, n_unstable = 0;
  for (const auto& e : sp.spectrum.eigenvalues) {
    std::vector<HpComplex>* bucket;
    std::size_t* count;
    if (e.unit) {
      bucket = &unit_roots;
      count = &n_unit;
    } else if (e.value.abs() < 1) {
      bucket = &stable_roots;
      count = &n_stable;
    } else {
      bucket = &unstable_roots;
      count = &n_unstable;
    }
    for (int k = 0; k < e.multiplicity; ++k) bucket->push_back(e.value);
    *count += static_cast<std::size_t>(e.multiplicity);
  }
  auto concat = [](std::vector<HpComplex> a, const std::vector<HpComplex>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };
  sp.stable = image_basis(m, concat(unit_roots, unstable_roots), n_stable, bits, tol, "stable");
  sp.central = image_basis(m, concat(stable_roots, unstable_roots), n_unit, bits, tol, "central");
  sp.unstable =
      image_basis(m, concat(stable_roots, unit_roots), n_unstable, bits, tol, "unstable");

  // True eigenvectors for unit roots: ker p(M) is exact, and the non-unit
  // roots of p are then annihilated one power at a time.
  std::vector<HpVector> eig;
  std::size_t expected = 0;
  const HpReal two_pi = 2 * boost::math::constants::pi<HpReal>();
  for (std::size_t fi = 0; fi < sp.spectrum.factors.size(); ++fi) {
    const FactorInfo& f = sp.spectrum.factors[fi];
    if (f.unit_roots == 0) continue;
    std::vector<HpComplex> off_circle;
    for (const auto& e : sp.spectrum.eigenvalues) {
      if (e.factor != fi) continue;
      if (!e.unit) {
        off_circle.push_back(e.value);
      } else if (e.value.im > 0) {
        HpReal angle = atan2(e.value.im, e.value.re) / two_pi;
        double a = angle.convert_to<double>();
        if (a < 0) a += 1.0;
        for (std::size_t c = 0; c < f.eigenspace_copies; ++c) sp.rotation_angles.push_back(a);
      }
    }
    HpMatrix r = evaluate_at(real_poly_from_roots(off_circle, bits), m, bits);
    for (const auto& k : kernel_basis(evaluate_at(f.polynomial, m)))
      eig.push_back(r * hp_vector(k, bits));
    expected += static_cast<std::size_t>(f.unit_roots) * f.eigenspace_copies;
  }
  if (expected > 0) {
    GramSchmidtResult gs = pivoted_gram_schmidt(eig, expected, bits);
    require(gs.basis.size() == expected && gs.next_residual <= tol, ErrorKind::kCertification,
            "semisimple central subspace has unexpected numeric rank");
    sp.central_semisimple = std::move(gs.basis);
  }
  std::sort(sp.rotation_angles.begin(), sp.rotation_angles.end());
  require(sp.stable.size() + sp.central.size() + sp.unstable.size() == sp.dim,
          ErrorKind::kIntegrity, "splitting dimensions do not add up");
  return sp;
}

std::vector<double> rotation_vector(const Splitting& sp) {
  if (sp.classification == Classification::kJordan)
    fail(ErrorKind::kClassification,
         "rotation data is unsupported when the central part carries a Jordan shear");
  return sp.rotation_angles;
}

namespace {

std::vector<HpVector> contracting_side(const Splitting& sp) {
  std::vector<HpVector> v = sp.stable;
  v.insert(v.end(), sp.central_semisimple.begin(), sp.central_semisimple.end());
  return v;
}

double smallest_singular(const Eigen::MatrixXd& a) {
  if (a.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

}  // namespace

SpanCheck span_condition(const Splitting& s, const Splitting& t) {
  require(s.dim == t.dim, ErrorKind::kRejectedInput, "splittings have different dimensions");
  SpanCheck out;
  if (s.stable.empty() || t.stable.empty())
    out.warning = "hypothesis violated: a stable subspace is trivial";
  std::vector<HpVector> all = contracting_side(s);
  std::vector<HpVector> tv = contracting_side(t);
  all.insert(all.end(), tv.begin(), tv.end());
  if (all.empty()) return out;
  Eigen::MatrixXd a = to_eigen(all, s.dim);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const double tol = std::max(s.tol, t.tol);
  const auto& sv = svd.singularValues();
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * std::max(1.0, sv(0))) ++out.rank;
  out.spans = out.rank == s.dim;
  return out;
}

ComplementPair choose_complements(const Splitting& s, const Splitting& t) {
  SpanCheck check = span_condition(s, t);
  if (!check.spans)
    fail(ErrorKind::kConstruction, "contracting subspaces do not span (rank " +
                                       std::to_string(check.rank) + " of " +
                                       std::to_string(s.dim) + ")");
  const std::size_t d = s.dim;
  ComplementPair out;
  out.dim = d;
  out.bits = std::min(s.bits, t.bits);
  out.s_basis = contracting_side(s);
  if (out.s_basis.size() >= d)
    fail(ErrorKind::kConstruction, "no room for a nontrivial complement");
  std::vector<HpVector> candidates = contracting_side(t);
  std::vector<bool> used(candidates.size(), false);
  std::vector<HpVector> current = out.s_basis;
  const double tol = std::max(s.tol, t.tol);
  while (current.size() < d) {
    std::size_t best = candidates.size();
    double best_sigma = -1.0;
    for (std::size_t j = 0; j < candidates.size(); ++j) {
      if (used[j]) continue;
      std::vector<HpVector> trial = current;
      trial.push_back(candidates[j]);
      double sigma = smallest_singular(to_eigen(trial, d));
      if (sigma > best_sigma) {
        best_sigma = sigma;
        best = j;
      }
    }
    if (best == candidates.size() || best_sigma <= tol)
      fail(ErrorKind::kConstruction, "greedy complement selection stalled");
    used[best] = true;
    current.push_back(candidates[best]);
    out.t_basis.push_back(candidates[best]);
  }
  Eigen::MatrixXd c = to_eigen(current, d);
  Eigen::MatrixXd mask = Eigen::MatrixXd::Zero(d, d);
  for (std::size_t i = 0; i < out.s_basis.size(); ++i) mask(i, i) = 1.0;
  Eigen::MatrixXd cinv = c.inverse();
  out.proj_s = c * mask * cinv;
  out.proj_t = Eigen::MatrixXd::Identity(d, d) - out.proj_s;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(c);
  const auto& sv = svd.singularValues();
  out.condition_number = sv(0) / sv(sv.size() - 1);
  return out;
}

}  // namespace torlab
