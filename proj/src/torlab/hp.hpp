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

// High-precision real and complex scalars (MPFR through Boost.Multiprecision).
// Every value is created with an explicit precision; binary operations keep
// the larger operand precision.

#include <gmpxx.h>

#include <boost/multiprecision/mpfr.hpp>

#include <complex>
#include <vector>

namespace torlab {

using HpReal = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<0>, boost::multiprecision::et_off>;

inline unsigned digits10_for(unsigned bits) {
  return boost::multiprecision::detail::digits2_2_10(bits) + 2;
}

inline HpReal hp(double v, unsigned bits) { return HpReal(v, digits10_for(bits)); }

inline HpReal hp_zero(unsigned bits) { return HpReal(0, digits10_for(bits)); }

inline HpReal hp_from_mpz(const mpz_class& z, unsigned bits) {
  HpReal r = hp_zero(bits);
  mpfr_set_z(r.backend().data(), z.get_mpz_t(), MPFR_RNDN);
  return r;
}

inline HpReal hp_with_bits(const HpReal& v, unsigned bits) {
  return HpReal(v, digits10_for(bits));
}

// raw * 2^-frac_bits at `bits` precision.
inline HpReal hp_from_fixed(const mpz_class& raw, unsigned frac_bits, unsigned bits) {
  return ldexp(hp_from_mpz(raw, bits), -static_cast<int>(frac_bits));
}

// Nearest integer.
inline mpz_class hp_round_to_mpz(const HpReal& v) {
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), v.backend().data(), MPFR_RNDN);
  return z;
}

struct HpComplex {
  HpReal re;
  HpReal im;

  HpComplex operator+(const HpComplex& o) const { return {re + o.re, im + o.im}; }
  HpComplex operator-(const HpComplex& o) const { return {re - o.re, im - o.im}; }
  HpComplex operator*(const HpComplex& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  HpComplex operator/(const HpComplex& o) const {
    HpReal den = o.re * o.re + o.im * o.im;
    return {(re * o.re + im * o.im) / den, (im * o.re - re * o.im) / den};
  }
  HpReal norm2() const { return re * re + im * im; }
  HpReal abs() const { return sqrt(norm2()); }
  std::complex<double> to_complex() const {
    return {re.convert_to<double>(), im.convert_to<double>()};
  }
};

inline HpComplex hp_complex(std::complex<double> z, unsigned bits) {
  return {hp(z.real(), bits), hp(z.imag(), bits)};
}

using HpVector = std::vector<HpReal>;

}  // namespace torlab
