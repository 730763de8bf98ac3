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

// Signed binary fixed-point numbers: a value is raw * 2^-bits with an
// arbitrary-size integer raw part. Integer matrices act on these exactly,
// which is what makes torus orbits reproducible bit for bit.

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace torlab {

// Rounds the decimal string to the nearest multiple of 2^-bits.
// Accepts an optional sign, digits, optional fraction, optional exponent.
mpz_class decimal_to_fixed(std::string_view text, unsigned bits);

// Exact decimal expansion of raw * 2^-bits (trailing zeros trimmed).
std::string fixed_to_decimal(const mpz_class& raw, unsigned bits);

// Nearest double; exact rounding is not promised beyond 1 ulp.
double fixed_to_double(const mpz_class& raw, unsigned bits);

// Nearest fixed-point value of a finite double.
mpz_class double_to_fixed(double value, unsigned bits);

// Changes the scale; exact when widening, round-half-up when narrowing.
mpz_class rescale(const mpz_class& raw, unsigned from_bits, unsigned to_bits);

class FixedVector {
 public:
  FixedVector() = default;
  FixedVector(std::size_t size, unsigned bits) : raw_(size), bits_(bits) {}
  FixedVector(std::vector<mpz_class> raw, unsigned bits)
      : raw_(std::move(raw)), bits_(bits) {}

  static FixedVector from_doubles(std::span<const double> values, unsigned bits);
  static FixedVector from_decimals(std::span<const std::string> values,
                                   unsigned bits);

  std::size_t size() const { return raw_.size(); }
  unsigned bits() const { return bits_; }
  const mpz_class& raw(std::size_t i) const { return raw_[i]; }
  mpz_class& raw(std::size_t i) { return raw_[i]; }
  const std::vector<mpz_class>& raws() const { return raw_; }

  double to_double(std::size_t i) const { return fixed_to_double(raw_[i], bits_); }
  std::vector<double> to_doubles() const;
  std::string to_decimal(std::size_t i) const {
    return fixed_to_decimal(raw_[i], bits_);
  }
  std::vector<std::string> to_decimals() const;

  FixedVector with_bits(unsigned bits) const;

  friend bool operator==(const FixedVector& a, const FixedVector& b) {
    return a.bits_ == b.bits_ && a.raw_ == b.raw_;
  }

 private:
  std::vector<mpz_class> raw_;
  unsigned bits_ = 0;
};

// Max-norm distance |a - b|_inf as a double; both operands are brought to
// the larger precision first.
double max_distance(const FixedVector& a, const FixedVector& b);

}  // namespace torlab
