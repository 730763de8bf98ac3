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

#include "torlab/torus.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "torlab/errors.hpp"

namespace torlab {

namespace {

mpz_class bareiss_determinant(std::vector<mpz_class> a, std::size_t n) {
  if (n == 0) return 1;
  int sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k * n + k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a[swap * n + k] == 0) ++swap;
      if (swap == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[swap * n + j]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class v = a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a[i * n + j] = v;
      }
    }
    prev = a[k * n + k];
  }
  mpz_class det = a[n * n - 1];
  return sign > 0 ? det : mpz_class(-det);
}

// Reduced row echelon form over Q; returns pivot columns.
std::vector<std::size_t> rref(std::vector<mpq_class>& a, std::size_t rows,
                              std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p * cols + c] == 0) ++p;
    if (p == rows) continue;
    for (std::size_t j = 0; j < cols; ++j) std::swap(a[r * cols + j], a[p * cols + j]);
    mpq_class inv = 1 / a[r * cols + c];
    for (std::size_t j = 0; j < cols; ++j) a[r * cols + j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i * cols + c] == 0) continue;
      mpq_class f = a[i * cols + c];
      for (std::size_t j = 0; j < cols; ++j) a[i * cols + j] -= f * a[r * cols + j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

IntMatrix::IntMatrix(std::size_t dim, std::vector<std::int64_t> entries)
    : dim_(dim), e_(std::move(entries)) {
  require(dim_ > 0, ErrorKind::kRejectedInput, "matrix dimension must be positive");
  require(e_.size() == dim_ * dim_, ErrorKind::kRejectedInput,
          "matrix needs " + std::to_string(dim_ * dim_) + " entries, got " +
              std::to_string(e_.size()));
  det_ = torlab::determinant(ZMatrix(*this));
  require(det_ != 0, ErrorKind::kRejectedInput, "matrix is singular");
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows) {
  std::vector<std::int64_t> flat;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require(rows[i].size() == rows.size(), ErrorKind::kRejectedInput,
            "row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                " entries, expected " + std::to_string(rows.size()));
    flat.insert(flat.end(), rows[i].begin(), rows[i].end());
  }
  return IntMatrix(rows.size(), std::move(flat));
}

IntMatrix IntMatrix::identity(std::size_t dim) {
  std::vector<std::int64_t> e(dim * dim, 0);
  for (std::size_t i = 0; i < dim; ++i) e[i * dim + i] = 1;
  return IntMatrix(dim, std::move(e));
}

IntMatrix IntMatrix::block_diagonal(const IntMatrix& a, const IntMatrix& b) {
  std::size_t n = a.dim() + b.dim();
  std::vector<std::int64_t> e(n * n, 0);
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) e[i * n + j] = a.at(i, j);
  for (std::size_t i = 0; i < b.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j)
      e[(a.dim() + i) * n + a.dim() + j] = b.at(i, j);
  return IntMatrix(n, std::move(e));
}

IntMatrix IntMatrix::companion(const std::vector<std::int64_t>& low) {
  std::size_t n = low.size();
  std::vector<std::int64_t> e(n * n, 0);
  for (std::size_t i = 1; i < n; ++i) e[i * n + (i - 1)] = 1;
  for (std::size_t i = 0; i < n; ++i) e[i * n + (n - 1)] = -low[i];
  return IntMatrix(n, std::move(e));
}

std::vector<std::vector<std::int64_t>> IntMatrix::rows() const {
  std::vector<std::vector<std::int64_t>> out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    out[i].assign(e_.begin() + i * dim_, e_.begin() + (i + 1) * dim_);
  return out;
}

std::int64_t IntMatrix::norm_inf() const {
  std::int64_t best = 0;
  for (std::size_t i = 0; i < dim_; ++i) {
    std::int64_t s = 0;
    for (std::size_t j = 0; j < dim_; ++j) s += std::llabs(at(i, j));
    best = std::max(best, s);
  }
  return best;
}

double IntMatrix::log2_norm() const {
  return std::log2(static_cast<double>(norm_inf()));
}

IntMatrix IntMatrix::transpose() const {
  std::vector<std::int64_t> e(dim_ * dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) e[j * dim_ + i] = at(i, j);
  return IntMatrix(dim_, std::move(e));
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < dim_; ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < dim_; ++j) os << (j ? "," : "") << at(i, j);
    os << "]";
  }
  os << "]";
  return os.str();
}

ZMatrix::ZMatrix(const IntMatrix& m) : dim_(m.dim()), e_(m.dim() * m.dim()) {
  for (std::size_t i = 0; i < e_.size(); ++i)
    e_[i] = static_cast<long>(m.entries()[i]);
}

ZMatrix ZMatrix::identity(std::size_t dim) {
  ZMatrix out(dim);
  for (std::size_t i = 0; i < dim; ++i) out.at(i, i) = 1;
  return out;
}

ZMatrix ZMatrix::operator*(const ZMatrix& o) const {
  ZMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t k = 0; k < dim_; ++k) {
      if (at(i, k) == 0) continue;
      for (std::size_t j = 0; j < dim_; ++j) out.at(i, j) += at(i, k) * o.at(k, j);
    }
  return out;
}

ZMatrix ZMatrix::operator+(const ZMatrix& o) const {
  ZMatrix out(dim_);
  for (std::size_t i = 0; i < e_.size(); ++i) out.e_[i] = e_[i] + o.e_[i];
  return out;
}

ZMatrix ZMatrix::scaled(const mpz_class& s) const {
  ZMatrix out(dim_);
  for (std::size_t i = 0; i < e_.size(); ++i) out.e_[i] = e_[i] * s;
  return out;
}

mpz_class ZMatrix::norm_inf() const {
  mpz_class best = 0;
  for (std::size_t i = 0; i < dim_; ++i) {
    mpz_class s = 0;
    for (std::size_t j = 0; j < dim_; ++j) s += abs(at(i, j));
    if (s > best) best = s;
  }
  return best;
}

bool ZMatrix::is_identity() const { return *this == identity(dim_); }

ZMatrix power(const IntMatrix& m, unsigned k) {
  ZMatrix result = ZMatrix::identity(m.dim());
  ZMatrix base(m);
  while (k) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k) base = base * base;
  }
  return result;
}

mpz_class determinant(const ZMatrix& m) {
  std::vector<mpz_class> a(m.dim() * m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) a[i * m.dim() + j] = m.at(i, j);
  return bareiss_determinant(std::move(a), m.dim());
}

std::size_t rank(const ZMatrix& m) {
  std::size_t n = m.dim();
  std::vector<mpq_class> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m.at(i, j);
  return rref(a, n, n).size();
}

std::vector<std::vector<mpz_class>> kernel_basis(const ZMatrix& m) {
  std::size_t n = m.dim();
  std::vector<mpq_class> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m.at(i, j);
  std::vector<std::size_t> pivots = rref(a, n, n);
  std::vector<bool> is_pivot(n, false);
  for (std::size_t p : pivots) is_pivot[p] = true;
  std::vector<std::vector<mpz_class>> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<mpq_class> v(n, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r * n + free];
    mpz_class lcm = 1;
    for (const auto& q : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
    std::vector<mpz_class> z(n);
    mpz_class g = 0;
    for (std::size_t i = 0; i < n; ++i) {
      mpq_class s = v[i] * lcm;
      z[i] = s.get_num();
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z[i].get_mpz_t());
    }
    if (g > 1)
      for (auto& zi : z) mpz_divexact(zi.get_mpz_t(), zi.get_mpz_t(), g.get_mpz_t());
    basis.push_back(std::move(z));
  }
  return basis;
}

TorusPoint::TorusPoint(FixedVector coords, double error_log2)
    : coords_(std::move(coords)), error_log2_(error_log2) {
  mpz_class one;
  mpz_setbit(one.get_mpz_t(), coords_.bits());
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    require(coords_.raw(i) >= 0 && coords_.raw(i) < one, ErrorKind::kRejectedInput,
            "torus coordinate outside [0,1)");
  }
}

double TorusPoint::error_bound() const { return std::exp2(error_log2_); }

TorusPoint TorusPoint::with_precision(unsigned bits) const {
  if (bits >= precision()) return TorusPoint(coords_.with_bits(bits), error_log2_);
  return reduce_mod1(coords_.with_bits(bits),
                     log2_add(error_log2_, -static_cast<double>(bits)));
}

double log2_add(double a, double b) {
  if (std::isinf(a) && a < 0) return b;
  if (std::isinf(b) && b < 0) return a;
  double hi = std::max(a, b);
  double lo = std::min(a, b);
  return hi + std::log2(1.0 + std::exp2(lo - hi));
}

TorusPoint reduce_mod1(const FixedVector& v, double error_log2) {
  FixedVector out(v.size(), v.bits());
  for (std::size_t i = 0; i < v.size(); ++i)
    mpz_fdiv_r_2exp(out.raw(i).get_mpz_t(), v.raw(i).get_mpz_t(), v.bits());
  return TorusPoint(std::move(out), error_log2);
}

TorusPoint reduce_mod1(std::span<const double> v, unsigned bits) {
  bool exact = true;
  for (double x : v) {
    require(std::isfinite(x), ErrorKind::kRejectedInput, "non-finite coordinate");
    int e = 0;
    double m = std::frexp(x, &e);
    long drop = 53 - static_cast<long>(e) - static_cast<long>(bits);
    if (drop > 0) {
      mpz_class mant(std::ldexp(m, 53));
      if (drop >= 64 || !mpz_divisible_2exp_p(mant.get_mpz_t(), drop)) exact = false;
    }
  }
  return reduce_mod1(FixedVector::from_doubles(v, bits),
                     exact ? kExact : -static_cast<double>(bits));
}

TorusPoint parse_point(std::span<const std::string> decimals, unsigned bits) {
  return reduce_mod1(FixedVector::from_decimals(decimals, bits),
                     -static_cast<double>(bits));
}

TorusPoint random_point(std::size_t dim, std::uint64_t seed, unsigned random_bits,
                        unsigned bits) {
  require(random_bits > 0, ErrorKind::kRejectedInput, "random_bits must be positive");
  std::mt19937_64 rng(seed);
  FixedVector v(dim, random_bits);
  unsigned words = (random_bits + 63) / 64;
  for (std::size_t i = 0; i < dim; ++i) {
    mpz_class r = 0;
    for (unsigned w = 0; w < words; ++w) {
      std::uint64_t word = rng();
      mpz_class part;
      mpz_import(part.get_mpz_t(), 1, 1, sizeof(word), 0, 0, &word);
      mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), 64);
      r += part;
    }
    mpz_fdiv_q_2exp(r.get_mpz_t(), r.get_mpz_t(), words * 64 - random_bits);
    v.raw(i) = r;
  }
  if (bits >= random_bits) return TorusPoint(v.with_bits(bits), kExact);
  return reduce_mod1(v.with_bits(bits), -static_cast<double>(bits));
}

double torus_distance(const TorusPoint& x, const TorusPoint& y) {
  require(x.dim() == y.dim(), ErrorKind::kRejectedInput,
          "dimension mismatch: " + std::to_string(x.dim()) + " vs " +
              std::to_string(y.dim()));
  unsigned bits = std::max(x.precision(), y.precision());
  mpz_class one;
  mpz_setbit(one.get_mpz_t(), bits);
  double best = 0.0;
  mpz_class diff;
  for (std::size_t i = 0; i < x.dim(); ++i) {
    diff = rescale(x.coords().raw(i), x.precision(), bits) -
           rescale(y.coords().raw(i), y.precision(), bits);
    diff = abs(diff);
    mpz_class wrapped = one - diff;
    const mpz_class& nearest = wrapped < diff ? wrapped : diff;
    best = std::max(best, fixed_to_double(nearest, bits));
  }
  return best;
}

TorusPoint apply(const ZMatrix& m, const TorusPoint& x) {
  require(m.dim() == x.dim(), ErrorKind::kRejectedInput, "dimension mismatch");
  FixedVector out(x.dim(), x.precision());
  for (std::size_t i = 0; i < x.dim(); ++i) {
    mpz_class& acc = out.raw(i);
    for (std::size_t j = 0; j < x.dim(); ++j) acc += m.at(i, j) * x.coords().raw(j);
    mpz_fdiv_r_2exp(acc.get_mpz_t(), acc.get_mpz_t(), x.precision());
  }
  double grow = std::log2(m.norm_inf().get_d());
  return TorusPoint(std::move(out), x.error_log2() + grow);
}

TorusPoint apply(const IntMatrix& m, const TorusPoint& x) {
  require(m.dim() == x.dim(), ErrorKind::kRejectedInput, "dimension mismatch");
  FixedVector out(x.dim(), x.precision());
  for (std::size_t i = 0; i < x.dim(); ++i) {
    mpz_class& acc = out.raw(i);
    for (std::size_t j = 0; j < x.dim(); ++j) {
      std::int64_t a = m.at(i, j);
      if (a == 0) continue;
      if (a > 0)
        mpz_addmul_ui(acc.get_mpz_t(), x.coords().raw(j).get_mpz_t(),
                      static_cast<unsigned long>(a));
      else
        mpz_submul_ui(acc.get_mpz_t(), x.coords().raw(j).get_mpz_t(),
                      static_cast<unsigned long>(-a));
    }
    mpz_fdiv_r_2exp(acc.get_mpz_t(), acc.get_mpz_t(), x.precision());
  }
  return TorusPoint(std::move(out), x.error_log2() + m.log2_norm());
}

unsigned required_precision(const IntMatrix& m, std::size_t steps) {
  return static_cast<unsigned>(
             std::ceil(static_cast<double>(steps) * m.log2_norm() - 1e-12)) +
         64u;
}

void check_budget(const IntMatrix& m, const TorusPoint& x, std::size_t steps) {
  require(m.dim() == x.dim(), ErrorKind::kRejectedInput, "dimension mismatch");
  unsigned need = required_precision(m, steps);
  if (x.precision() < need) {
    throw BudgetError(need, "precision budget violated: " + std::to_string(steps) +
                                " steps of a map with |M|_inf = " +
                                std::to_string(m.norm_inf()) + " need at least " +
                                std::to_string(need) + " bits, point has " +
                                std::to_string(x.precision()));
  }
  double final_error = x.error_log2() + static_cast<double>(steps) * m.log2_norm();
  if (final_error >= -32.0) {
    throw BudgetError(need, "error budget violated: input error 2^" +
                                std::to_string(x.error_log2()) +
                                " grows past 2^-32 within " + std::to_string(steps) +
                                " steps");
  }
}

void visit_orbit(const IntMatrix& m, const TorusPoint& x, std::size_t steps,
                 const std::function<void(std::size_t, const TorusPoint&)>& visit) {
  check_budget(m, x, steps);
  TorusPoint current = x;
  visit(0, current);
  for (std::size_t n = 1; n <= steps; ++n) {
    current = apply(m, current);
    visit(n, current);
  }
}

OrbitSegment orbit(const IntMatrix& m, const TorusPoint& x, std::size_t steps) {
  OrbitSegment seg{x, m, {}, {}};
  seg.points.reserve(steps + 1);
  seg.per_step_error_log2.reserve(steps + 1);
  visit_orbit(m, x, steps, [&](std::size_t, const TorusPoint& p) {
    seg.points.push_back(p);
    seg.per_step_error_log2.push_back(p.error_log2());
  });
  return seg;
}

std::vector<double> orbit_doubles(const IntMatrix& m, const TorusPoint& x,
                                  std::size_t steps) {
  std::vector<double> out;
  out.reserve((steps + 1) * x.dim());
  visit_orbit(m, x, steps, [&](std::size_t, const TorusPoint& p) {
    for (std::size_t i = 0; i < p.dim(); ++i) out.push_back(p.coordinate(i));
  });
  return out;
}

}  // namespace torlab
