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


#include "torlab/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "torlab/errors.hpp"
#include "torlab/torus.hpp"

namespace torlab {

namespace {

using QPoly = std::vector<mpq_class>;  // ascending

void trim(std::vector<mpz_class>& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

void trim(QPoly& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

QPoly to_q(const IntPolynomial& p) {
  return QPoly(p.coefficients().begin(), p.coefficients().end());
}

QPoly q_remainder(QPoly a, const QPoly& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    mpq_class f = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

IntPolynomial primitive_integer(const QPoly& q) {
  mpz_class lcm = 1;
  for (const auto& c : q) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
  std::vector<mpz_class> z(q.size());
  mpz_class g = 0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    mpq_class s = q[i] * lcm;
    z[i] = s.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z[i].get_mpz_t());
  }
  if (g > 1)
    for (auto& c : z) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  if (!z.empty() && z.back() < 0)
    for (auto& c : z) c = -c;
  return IntPolynomial(std::move(z));
}

mpq_class q_evaluate(const QPoly& p, const mpq_class& x) {
  mpq_class acc = 0;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

int sign_changes(const std::vector<QPoly>& seq, const mpq_class& x) {
  int changes = 0;
  int last = 0;
  for (const auto& p : seq) {
    int s = sgn(q_evaluate(p, x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

// Simultaneous Aberth-Ehrlich iteration in double precision.
std::vector<std::complex<double>> aberth(const std::vector<double>& c) {
  const std::size_t n = c.size() - 1;
  std::vector<std::complex<double>> z(n);
  if (n == 0) return z;
  double bound = 0.0;
  for (std::size_t i = 0; i < n; ++i) bound = std::max(bound, std::fabs(c[i] / c[n]));
  bound = 1.0 + bound;
  for (std::size_t k = 0; k < n; ++k) {
    double angle =
        2.0 * std::numbers::pi * (static_cast<double>(k) + 0.25) / static_cast<double>(n) + 0.4;
    z[k] = std::polar(0.5 * bound, angle);
  }
  auto eval = [&](std::complex<double> x, std::complex<double>* deriv) {
    std::complex<double> p = c[n];
    std::complex<double> dp = 0.0;
    for (std::size_t i = n; i-- > 0;) {
      dp = dp * x + p;
      p = p * x + c[i];
    }
    *deriv = dp;
    return p;
  };
  for (int iter = 0; iter < 2000; ++iter) {
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      std::complex<double> dp;
      std::complex<double> p = eval(z[k], &dp);
      if (p == 0.0) continue;
      std::complex<double> ratio = p / dp;
      std::complex<double> sum = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) sum += 1.0 / (z[k] - z[j]);
      std::complex<double> step = ratio / (1.0 - ratio * sum);
      z[k] -= step;
      worst = std::max(worst, std::abs(step) / std::max(1.0, std::abs(z[k])));
    }
    if (worst < 1e-15) break;
  }
  return z;
}

}  // namespace

IntPolynomial::IntPolynomial(std::vector<mpz_class> ascending) : c_(std::move(ascending)) {
  trim(c_);
}

IntPolynomial IntPolynomial::from_ints(const std::vector<long>& ascending) {
  std::vector<mpz_class> c;
  for (long v : ascending) c.emplace_back(v);
  return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::operator*(const IntPolynomial& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<mpz_class> out(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) out[i + j] += c_[i] * o.c_[j];
  return IntPolynomial(std::move(out));
}

IntPolynomial IntPolynomial::derivative() const {
  std::vector<mpz_class> out;
  for (std::size_t i = 1; i < c_.size(); ++i)
    out.push_back(c_[i] * static_cast<unsigned long>(i));
  return IntPolynomial(std::move(out));
}

mpz_class IntPolynomial::evaluate(const mpz_class& x) const {
  mpz_class acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

bool IntPolynomial::divide_exact(const IntPolynomial& d, IntPolynomial* quotient) const {
  require(!d.is_zero() && (d.leading() == 1 || d.leading() == -1), ErrorKind::kRejectedInput,
          "divisor must be monic");
  if (degree() < d.degree()) {
    if (quotient) *quotient = IntPolynomial{};
    return is_zero();
  }
  std::vector<mpz_class> rem = c_;
  std::vector<mpz_class> q(c_.size() - d.c_.size() + 1, 0);
  for (std::size_t k = q.size(); k-- > 0;) {
    mpz_class f = rem[k + d.c_.size() - 1] * d.leading();
    q[k] = f;
    for (std::size_t i = 0; i < d.c_.size(); ++i) rem[k + i] -= f * d.c_[i];
  }
  trim(rem);
  if (quotient) *quotient = IntPolynomial(std::move(q));
  return rem.empty();
}

bool IntPolynomial::is_palindromic() const {
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != c_[c_.size() - 1 - i]) return false;
  return true;
}

bool IntPolynomial::is_antipalindromic() const {
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != -c_[c_.size() - 1 - i]) return false;
  return true;
}

std::string IntPolynomial::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    mpz_class a = abs(c_[i]);
    bool neg = c_[i] < 0;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    if (a != 1 || i == 0) os << a.get_str();
    if (i >= 1) os << "x";
    if (i >= 2) os << "^" << i;
    first = false;
  }
  return os.str();
}

IntPolynomial char_poly(const IntMatrix& m) {
  const std::size_t n = m.dim();
  ZMatrix a(m);
  std::vector<mpz_class> c(n + 1, 0);
  c[n] = 1;
  ZMatrix mk(n);
  for (std::size_t k = 1; k <= n; ++k) {
    ZMatrix next = a * mk;
    for (std::size_t i = 0; i < n; ++i) next.at(i, i) += c[n - k + 1];
    mk = std::move(next);
    ZMatrix amk = a * mk;
    mpz_class trace = 0;
    for (std::size_t i = 0; i < n; ++i) trace += amk.at(i, i);
    mpz_class ck = -trace;
    mpz_divexact_ui(ck.get_mpz_t(), ck.get_mpz_t(), static_cast<unsigned long>(k));
    c[n - k] = ck;
  }
  return IntPolynomial(std::move(c));
}

ZMatrix evaluate_at(const IntPolynomial& p, const IntMatrix& m) {
  ZMatrix a(m);
  ZMatrix acc(m.dim());
  for (std::size_t i = p.coefficients().size(); i-- > 0;) {
    acc = acc * a;
    for (std::size_t d = 0; d < m.dim(); ++d) acc.at(d, d) += p[i];
  }
  return acc;
}

unsigned euler_phi(unsigned k) {
  unsigned result = k;
  unsigned n = k;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

IntPolynomial cyclotomic(unsigned k) {
  require(k >= 1, ErrorKind::kRejectedInput, "cyclotomic order must be positive");
  std::vector<mpz_class> xk(k + 1, 0);
  xk[0] = -1;
  xk[k] = 1;
  IntPolynomial p(std::move(xk));
  for (unsigned d = 1; d < k; ++d) {
    if (k % d) continue;
    IntPolynomial q;
    bool ok = p.divide_exact(cyclotomic(d), &q);
    require(ok, ErrorKind::kIntegrity, "cyclotomic recursion failed");
    p = q;
  }
  return p;
}

std::vector<unsigned> cyclotomic_orders_up_to(unsigned degree) {
  // phi(k) >= sqrt(k/2), so k <= 2 degree^2 reaches every order.
  std::vector<unsigned> out;
  unsigned limit = std::max(6u, 2u * degree * degree + 2u);
  for (unsigned k = 1; k <= limit; ++k)
    if (euler_phi(k) <= degree) out.push_back(k);
  return out;
}

std::vector<unsigned> cyclotomic_divisors(const IntPolynomial& p) {
  std::vector<unsigned> out;
  if (p.degree() < 1) return out;
  for (unsigned k : cyclotomic_orders_up_to(static_cast<unsigned>(p.degree())))
    if (p.divide_exact(cyclotomic(k), nullptr)) out.push_back(k);
  return out;
}

IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b) {
  QPoly x = to_q(a);
  QPoly y = to_q(b);
  while (!y.empty()) {
    QPoly r = q_remainder(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  if (x.empty()) return {};
  mpq_class lead = x.back();
  for (auto& c : x) c /= lead;
  return primitive_integer(x);
}

IntPolynomial reciprocal_trace_polynomial(const IntPolynomial& p) {
  require(p.is_palindromic() && p.degree() % 2 == 0, ErrorKind::kRejectedInput,
          "expected a palindromic polynomial of even degree");
  const int m = p.degree() / 2;
  // x^k + x^-k = D_k(x + 1/x)
  std::vector<std::vector<mpz_class>> dk;
  dk.push_back({mpz_class(2)});
  dk.push_back({mpz_class(0), mpz_class(1)});
  for (int k = 1; k < m; ++k) {
    std::vector<mpz_class> next(k + 2, 0);
    for (int i = 0; i <= k; ++i) next[i + 1] += dk[k][i];
    for (std::size_t i = 0; i < dk[k - 1].size(); ++i) next[i] -= dk[k - 1][i];
    dk.push_back(std::move(next));
  }
  std::vector<mpz_class> q(m + 1, 0);
  q[0] = p[m];
  for (int k = 1; k <= m; ++k)
    for (std::size_t i = 0; i < dk[k].size(); ++i) q[i] += p[m + k] * dk[k][i];
  return IntPolynomial(std::move(q));
}

int sturm_count(const IntPolynomial& q, const mpq_class& a, const mpq_class& b) {
  if (q.degree() <= 0) return 0;
  std::vector<QPoly> seq;
  seq.push_back(to_q(q));
  seq.push_back(to_q(q.derivative()));
  while (true) {
    QPoly r = q_remainder(seq[seq.size() - 2], seq.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    seq.push_back(std::move(r));
  }
  require(q_evaluate(seq[0], a) != 0 && q_evaluate(seq[0], b) != 0, ErrorKind::kRejectedInput,
          "Sturm interval endpoint is a root");
  return sign_changes(seq, a) - sign_changes(seq, b);
}

std::vector<HpComplex> roots(const IntPolynomial& p, unsigned bits) {
  require(p.degree() >= 1, ErrorKind::kRejectedInput, "roots of a constant");
  std::vector<double> cd;
  for (const auto& c : p.coefficients()) cd.push_back(c.get_d());
  std::vector<std::complex<double>> approx = aberth(cd);
  std::sort(approx.begin(), approx.end(), [](auto a, auto b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });

  const unsigned work = bits + 32;
  std::vector<HpReal> coeff;
  for (const auto& c : p.coefficients()) coeff.push_back(hp_from_mpz(c, work));
  const HpReal tol = ldexp(hp(1.0, work), -static_cast<int>(bits));
  std::vector<HpComplex> out;
  for (std::complex<double> z0 : approx) {
    // Real roots of a real polynomial stay real under Newton only if they
    // start on the axis.
    if (std::fabs(z0.imag()) < 1e-7 * std::max(1.0, std::abs(z0))) z0.imag(0.0);
    HpComplex z = hp_complex(z0, work);
    for (int iter = 0; iter < 200; ++iter) {
      HpComplex val{hp_zero(work), hp_zero(work)};
      HpComplex der{hp_zero(work), hp_zero(work)};
      for (std::size_t i = coeff.size(); i-- > 0;) {
        der = der * z + val;
        val = val * z + HpComplex{coeff[i], hp_zero(work)};
      }
      if (val.re == 0 && val.im == 0) break;
      HpComplex step = val / der;
      z = z - step;
      HpReal scale = z.abs();
      if (scale < 1) scale = hp(1.0, work);
      if (step.abs() <= tol * scale) break;
    }
    out.push_back(z);
  }
  return out;
}

std::vector<IrreducibleFactor> factor(const IntPolynomial& monic) {
  require(monic.degree() >= 1 && monic.leading() == 1, ErrorKind::kRejectedInput,
          "factor expects a monic polynomial of positive degree");
  std::vector<IrreducibleFactor> out;
  IntPolynomial rest = monic;

  int x_power = 0;
  while (rest.degree() >= 1 && rest[0] == 0) {
    std::vector<mpz_class> shifted(rest.coefficients().begin() + 1, rest.coefficients().end());
    rest = IntPolynomial(std::move(shifted));
    ++x_power;
  }
  if (x_power > 0) out.push_back({IntPolynomial::from_ints({0, 1}), x_power});
  if (rest.degree() < 1) return out;

  IntPolynomial g = gcd(rest, rest.derivative());
  IntPolynomial squarefree = rest;
  if (g.degree() > 0) {
    bool ok = rest.divide_exact(g, &squarefree);
    require(ok, ErrorKind::kIntegrity, "square-free division failed");
  }

  constexpr unsigned kBits = 256;
  std::vector<HpComplex> zs = roots(squarefree, kBits);
  // Groups are the smallest conjugation-closed root sets.
  std::vector<std::vector<HpComplex>> groups;
  std::vector<bool> used(zs.size(), false);
  for (std::size_t i = 0; i < zs.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    if (zs[i].im == 0) {
      groups.push_back({zs[i]});
      continue;
    }
    std::size_t best = zs.size();
    double best_gap = 1e300;
    for (std::size_t j = 0; j < zs.size(); ++j) {
      if (used[j]) continue;
      HpComplex conj{zs[j].re, -zs[j].im};
      double gap = (conj - zs[i]).abs().convert_to<double>();
      if (gap < best_gap) {
        best_gap = gap;
        best = j;
      }
    }
    require(best < zs.size() && best_gap < 1e-30, ErrorKind::kIntegrity,
            "could not pair complex roots of " + squarefree.to_string());
    used[best] = true;
    groups.push_back({zs[i], zs[best]});
  }
  require(groups.size() <= 22, ErrorKind::kRejectedInput,
          "polynomial degree too large for subset factorization");

  std::vector<std::size_t> masks;
  for (std::size_t mask = 1; mask < (std::size_t{1} << groups.size()); ++mask)
    masks.push_back(mask);
  auto mask_degree = [&](std::size_t mask) {
    std::size_t d = 0;
    for (std::size_t k = 0; k < groups.size(); ++k)
      if (mask & (std::size_t{1} << k)) d += groups[k].size();
    return d;
  };
  std::stable_sort(masks.begin(), masks.end(),
                   [&](std::size_t a, std::size_t b) { return mask_degree(a) < mask_degree(b); });

  const HpReal accept = ldexp(hp(1.0, kBits), -120);
  std::size_t taken = 0;
  IntPolynomial remaining = squarefree;
  std::vector<IntPolynomial> found;
  for (std::size_t mask : masks) {
    if (mask & taken) continue;
    if (remaining.degree() == 0) break;
    std::vector<HpComplex> poly{{hp(1.0, kBits), hp_zero(kBits)}};
    for (std::size_t k = 0; k < groups.size(); ++k) {
      if (!(mask & (std::size_t{1} << k))) continue;
      for (const auto& z : groups[k]) {
        std::vector<HpComplex> next(poly.size() + 1, {hp_zero(kBits), hp_zero(kBits)});
        for (std::size_t i = 0; i < poly.size(); ++i) {
          next[i + 1] = next[i + 1] + poly[i];
          next[i] = next[i] - poly[i] * z;
        }
        poly = std::move(next);
      }
    }
    std::vector<mpz_class> coeffs;
    bool integral = true;
    for (const auto& c : poly) {
      HpReal r = round(c.re);
      HpReal err = abs(c.re - r) + abs(c.im);
      if (err > accept * (abs(r) + 1)) {
        integral = false;
        break;
      }
      coeffs.push_back(hp_round_to_mpz(r));
    }
    if (!integral) continue;
    IntPolynomial candidate(std::move(coeffs));
    IntPolynomial quotient;
    if (!remaining.divide_exact(candidate, &quotient)) continue;
    remaining = quotient;
    taken |= mask;
    found.push_back(candidate);
  }
  require(remaining.degree() == 0, ErrorKind::kIntegrity,
          "factorization did not exhaust " + squarefree.to_string());

  for (auto& f : found) {
    int mult = 0;
    IntPolynomial q = rest;
    IntPolynomial next;
    while (q.divide_exact(f, &next)) {
      ++mult;
      q = next;
    }
    out.push_back({f, mult});
  }
  std::sort(out.begin(), out.end(), [](const IrreducibleFactor& a, const IrreducibleFactor& b) {
    if (a.polynomial.degree() != b.polynomial.degree())
      return a.polynomial.degree() < b.polynomial.degree();
    return a.polynomial.to_string() < b.polynomial.to_string();
  });
  return out;
}

}  // namespace torlab
