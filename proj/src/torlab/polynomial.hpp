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

// Exact integer/rational polynomial algebra behind the spectral screening:
// characteristic polynomials, cyclotomic trial division, square-free
// decomposition, factorization over Z, reciprocal reduction and Sturm
// counting, plus root isolation at arbitrary precision.

#include <gmpxx.h>

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "torlab/hp.hpp"

namespace torlab {

class IntMatrix;
class ZMatrix;

// Integer polynomial with ascending coefficients; no trailing zeros.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<mpz_class> ascending);
  static IntPolynomial from_ints(const std::vector<long>& ascending);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<mpz_class>& coefficients() const { return c_; }
  const mpz_class& operator[](std::size_t i) const { return c_[i]; }
  const mpz_class& leading() const { return c_.back(); }
  bool is_zero() const { return c_.empty(); }

  IntPolynomial operator*(const IntPolynomial& o) const;
  IntPolynomial derivative() const;
  mpz_class evaluate(const mpz_class& x) const;
  // Exact division by a monic divisor; returns false if the remainder
  // is nonzero (quotient left unspecified then).
  bool divide_exact(const IntPolynomial& monic_divisor, IntPolynomial* quotient) const;

  // c_i == c_{n-i} for all i.
  bool is_palindromic() const;
  // c_i == -c_{n-i} for all i.
  bool is_antipalindromic() const;

  std::string to_string() const;

  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) {
    return a.c_ == b.c_;
  }

 private:
  std::vector<mpz_class> c_;
};

// det(xI - M), via exact Faddeev-LeVerrier.
IntPolynomial char_poly(const IntMatrix& m);
// p(M) with exact integer arithmetic.
ZMatrix evaluate_at(const IntPolynomial& p, const IntMatrix& m);

unsigned euler_phi(unsigned k);
IntPolynomial cyclotomic(unsigned k);
// Orders k with phi(k) <= degree, ascending.
std::vector<unsigned> cyclotomic_orders_up_to(unsigned degree);
// Orders k whose cyclotomic polynomial divides p.
std::vector<unsigned> cyclotomic_divisors(const IntPolynomial& p);

// Monic gcd over Q of two integer polynomials, scaled back to Z (primitive).
IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b);

// For a palindromic p of even degree 2m returns q of degree m with
// p(x) = x^m q(x + 1/x).
IntPolynomial reciprocal_trace_polynomial(const IntPolynomial& p);

// Number of distinct real roots of q in the open interval (a, b); a and b
// must not be roots.
int sturm_count(const IntPolynomial& q, const mpq_class& a, const mpq_class& b);

// All complex roots of a square-free integer polynomial, refined by Newton
// iteration to `bits` bits.
std::vector<HpComplex> roots(const IntPolynomial& p, unsigned bits);

struct IrreducibleFactor {
  IntPolynomial polynomial;  // monic, irreducible over Z
  int multiplicity = 1;
};

// Factorization of a monic integer polynomial into monic irreducibles.
// Candidate factors come from numerically computed root subsets and are
// accepted only after exact division.
std::vector<IrreducibleFactor> factor(const IntPolynomial& monic);

}  // namespace torlab
