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

#include "torlab/fixed.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include "torlab/errors.hpp"

namespace torlab {

mpz_class decimal_to_fixed(std::string_view text, unsigned bits) {
  std::size_t pos = 0;
  auto bad = [&](const char* why) {
    fail(ErrorKind::kRejectedInput,
         "malformed decimal '" + std::string(text) + "': " + why);
  };
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  std::string digits;
  long fraction_digits = 0;
  bool seen_point = false;
  bool any_digit = false;
  for (; pos < text.size(); ++pos) {
    char c = text[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      any_digit = true;
      if (seen_point) ++fraction_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) bad("no digits");
  long exponent = 0;
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    std::size_t start = pos;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) ++pos;
    std::size_t exp_digits = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == exp_digits) bad("empty exponent");
    exponent = std::stol(std::string(text.substr(start, pos - start)));
    if (std::labs(exponent) > 100000) bad("exponent out of range");
  }
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos != text.size()) bad("trailing characters");

  // value = digits * 10^(exponent - fraction_digits)
  mpz_class numerator(digits, 10);
  long scale = exponent - fraction_digits;
  mpz_class result;
  if (scale >= 0) {
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(scale));
    result = numerator * p10;
    mpz_mul_2exp(result.get_mpz_t(), result.get_mpz_t(), bits);
  } else {
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(-scale));
    mpz_class scaled = numerator;
    mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), bits + 1);
    // round half up: floor((2 n 2^bits / 10^k + 1) / 2)
    mpz_fdiv_q(result.get_mpz_t(), scaled.get_mpz_t(), p10.get_mpz_t());
    result += 1;
    mpz_fdiv_q_2exp(result.get_mpz_t(), result.get_mpz_t(), 1);
  }
  if (negative) result = -result;
  return result;
}

std::string fixed_to_decimal(const mpz_class& raw, unsigned bits) {
  mpz_class magnitude = abs(raw);
  mpz_class integer_part;
  mpz_fdiv_q_2exp(integer_part.get_mpz_t(), magnitude.get_mpz_t(), bits);
  mpz_class fraction;
  mpz_fdiv_r_2exp(fraction.get_mpz_t(), magnitude.get_mpz_t(), bits);
  std::string out = raw < 0 ? "-" : "";
  out += integer_part.get_str(10);
  if (fraction != 0) {
    // fraction / 2^bits = fraction * 5^bits / 10^bits
    mpz_class p5;
    mpz_ui_pow_ui(p5.get_mpz_t(), 5, bits);
    mpz_class scaled = fraction * p5;
    std::string frac_digits = scaled.get_str(10);
    frac_digits.insert(0, bits - frac_digits.size(), '0');
    while (!frac_digits.empty() && frac_digits.back() == '0') frac_digits.pop_back();
    out += "." + frac_digits;
  }
  return out;
}

double fixed_to_double(const mpz_class& raw, unsigned bits) {
  long exp = 0;
  double mantissa = mpz_get_d_2exp(&exp, raw.get_mpz_t());
  return std::ldexp(mantissa, static_cast<int>(exp - static_cast<long>(bits)));
}

mpz_class double_to_fixed(double value, unsigned bits) {
  require(std::isfinite(value), ErrorKind::kRejectedInput,
          "non-finite coordinate");
  int exp = 0;
  double mantissa = std::frexp(value, &exp);
  // value = m * 2^exp with m carrying 53 significant bits
  mpz_class m(std::ldexp(mantissa, 53));
  long shift = static_cast<long>(exp) - 53 + static_cast<long>(bits);
  if (shift >= 0) {
    mpz_mul_2exp(m.get_mpz_t(), m.get_mpz_t(), static_cast<unsigned long>(shift));
    return m;
  }
  return rescale(m, static_cast<unsigned>(-shift), 0);
}

mpz_class rescale(const mpz_class& raw, unsigned from_bits, unsigned to_bits) {
  mpz_class out;
  if (to_bits >= from_bits) {
    mpz_mul_2exp(out.get_mpz_t(), raw.get_mpz_t(), to_bits - from_bits);
    return out;
  }
  unsigned drop = from_bits - to_bits;
  mpz_class half;
  mpz_setbit(half.get_mpz_t(), drop - 1);
  out = raw + half;
  mpz_fdiv_q_2exp(out.get_mpz_t(), out.get_mpz_t(), drop);
  return out;
}

FixedVector FixedVector::from_doubles(std::span<const double> values,
                                      unsigned bits) {
  FixedVector out(values.size(), bits);
  for (std::size_t i = 0; i < values.size(); ++i) {
    out.raw_[i] = double_to_fixed(values[i], bits);
  }
  return out;
}

FixedVector FixedVector::from_decimals(std::span<const std::string> values,
                                       unsigned bits) {
  FixedVector out(values.size(), bits);
  for (std::size_t i = 0; i < values.size(); ++i) {
    out.raw_[i] = decimal_to_fixed(values[i], bits);
  }
  return out;
}

std::vector<double> FixedVector::to_doubles() const {
  std::vector<double> out(raw_.size());
  for (std::size_t i = 0; i < raw_.size(); ++i) out[i] = to_double(i);
  return out;
}

std::vector<std::string> FixedVector::to_decimals() const {
  std::vector<std::string> out(raw_.size());
  for (std::size_t i = 0; i < raw_.size(); ++i) out[i] = to_decimal(i);
  return out;
}

FixedVector FixedVector::with_bits(unsigned bits) const {
  FixedVector out(raw_.size(), bits);
  for (std::size_t i = 0; i < raw_.size(); ++i) {
    out.raw_[i] = rescale(raw_[i], bits_, bits);
  }
  return out;
}

double max_distance(const FixedVector& a, const FixedVector& b) {
  require(a.size() == b.size(), ErrorKind::kRejectedInput,
          "dimension mismatch");
  unsigned bits = std::max(a.bits(), b.bits());
  double best = 0.0;
  mpz_class diff;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff = rescale(a.raw(i), a.bits(), bits) - rescale(b.raw(i), b.bits(), bits);
    best = std::max(best, std::fabs(fixed_to_double(diff, bits)));
  }
  return best;
}

}  // namespace torlab
