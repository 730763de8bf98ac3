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

#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "torlab/fixed.hpp"

namespace torlab {

// Nonsingular square integer matrix, row-major. The same object acts on
// R^d and on the torus R^d / Z^d.
class IntMatrix {
 public:
  // Throws kRejectedInput for ragged input, d == 0 or det == 0.
  IntMatrix(std::size_t dim, std::vector<std::int64_t> entries);
  static IntMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows);
  static IntMatrix identity(std::size_t dim);
  static IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b);
  // Companion matrix of the monic polynomial with the given ascending
  // coefficients (the leading 1 omitted).
  static IntMatrix companion(const std::vector<std::int64_t>& low_coefficients);

  std::size_t dim() const { return dim_; }
  std::int64_t at(std::size_t i, std::size_t j) const { return e_[i * dim_ + j]; }
  const std::vector<std::int64_t>& entries() const { return e_; }
  std::vector<std::vector<std::int64_t>> rows() const;

  // Max absolute row sum (operator norm for the max norm).
  std::int64_t norm_inf() const;
  double log2_norm() const;
  const mpz_class& determinant() const { return det_; }
  IntMatrix transpose() const;
  std::string to_string() const;

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.dim_ == b.dim_ && a.e_ == b.e_;
  }

 private:
  std::size_t dim_;
  std::vector<std::int64_t> e_;
  mpz_class det_;
};

// Square matrix over Z with unbounded entries; used for powers and
// polynomial evaluation.
class ZMatrix {
 public:
  explicit ZMatrix(std::size_t dim) : dim_(dim), e_(dim * dim) {}
  explicit ZMatrix(const IntMatrix& m);
  static ZMatrix identity(std::size_t dim);

  std::size_t dim() const { return dim_; }
  mpz_class& at(std::size_t i, std::size_t j) { return e_[i * dim_ + j]; }
  const mpz_class& at(std::size_t i, std::size_t j) const { return e_[i * dim_ + j]; }

  ZMatrix operator*(const ZMatrix& o) const;
  ZMatrix operator+(const ZMatrix& o) const;
  ZMatrix scaled(const mpz_class& s) const;
  mpz_class norm_inf() const;
  bool is_identity() const;
  friend bool operator==(const ZMatrix& a, const ZMatrix& b) {
    return a.dim_ == b.dim_ && a.e_ == b.e_;
  }

 private:
  std::size_t dim_;
  std::vector<mpz_class> e_;
};

ZMatrix power(const IntMatrix& m, unsigned k);
mpz_class determinant(const ZMatrix& m);
// Rank over Q (fraction-free elimination).
std::size_t rank(const ZMatrix& m);
// Basis of the rational kernel, scaled to primitive integer vectors.
std::vector<std::vector<mpz_class>> kernel_basis(const ZMatrix& m);

inline constexpr double kExact = -std::numeric_limits<double>::infinity();

// Point of the torus with coordinates in [0,1) held at a fixed binary
// precision, plus a certified max-norm bound on its distance from the
// point it stands for. The bound is stored as a base-2 logarithm so that
// bounds far below the double range stay representable.
class TorusPoint {
 public:
  TorusPoint() = default;
  // coords must already be reduced; use reduce_mod1 otherwise.
  TorusPoint(FixedVector coords, double error_log2 = kExact);

  std::size_t dim() const { return coords_.size(); }
  unsigned precision() const { return coords_.bits(); }
  const FixedVector& coords() const { return coords_; }
  double coordinate(std::size_t i) const { return coords_.to_double(i); }
  std::vector<double> to_doubles() const { return coords_.to_doubles(); }
  std::vector<std::string> to_decimals() const { return coords_.to_decimals(); }

  double error_log2() const { return error_log2_; }
  double error_bound() const;

  // Re-expresses the point at another precision. Widening is exact;
  // narrowing rounds and adds one unit of the new precision to the bound.
  TorusPoint with_precision(unsigned bits) const;

  friend bool operator==(const TorusPoint& a, const TorusPoint& b) {
    return a.coords_ == b.coords_;
  }

 private:
  FixedVector coords_;
  double error_log2_ = kExact;
};

// log2 of (2^a + 2^b), safe for -inf operands.
double log2_add(double a, double b);

TorusPoint reduce_mod1(const FixedVector& v, double error_log2 = kExact);
TorusPoint reduce_mod1(std::span<const double> v, unsigned bits);
TorusPoint parse_point(std::span<const std::string> decimals, unsigned bits);
// Uniform random point built from `random_bits` seeded bits per coordinate.
TorusPoint random_point(std::size_t dim, std::uint64_t seed,
                        unsigned random_bits, unsigned bits);

double torus_distance(const TorusPoint& x, const TorusPoint& y);

TorusPoint apply(const IntMatrix& m, const TorusPoint& x);
TorusPoint apply(const ZMatrix& m, const TorusPoint& x);

// ceil(steps * log2 |M|_inf) + 64.
unsigned required_precision(const IntMatrix& m, std::size_t steps);
// Throws BudgetError naming the minimal precision when x is too coarse.
void check_budget(const IntMatrix& m, const TorusPoint& x, std::size_t steps);

struct OrbitSegment {
  TorusPoint base;
  IntMatrix matrix;
  std::vector<TorusPoint> points;
  std::vector<double> per_step_error_log2;
};

OrbitSegment orbit(const IntMatrix& m, const TorusPoint& x, std::size_t steps);

// Streams x, Mx, ..., M^steps x to the visitor without storing the points.
// Budget is checked exactly as in orbit().
void visit_orbit(const IntMatrix& m, const TorusPoint& x, std::size_t steps,
                 const std::function<void(std::size_t, const TorusPoint&)>& visit);

// Row-major doubles of the orbit, (steps + 1) x d.
std::vector<double> orbit_doubles(const IntMatrix& m, const TorusPoint& x,
                                  std::size_t steps);

}  // namespace torlab
