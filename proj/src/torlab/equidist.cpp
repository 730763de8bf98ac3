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

#include "torlab/equidist.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "torlab/errors.hpp"
#include "torlab/hp_linalg.hpp"
#include "torlab/spectral.hpp"

namespace torlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// All integer vectors with |v|_inf <= box, lexicographic, zero excluded.
std::vector<CharacterIndex> character_box(std::size_t dim, int box) {
  std::vector<CharacterIndex> out;
  CharacterIndex v(dim, -box);
  while (true) {
    bool zero = true;
    for (long c : v) zero = zero && c == 0;
    if (!zero) out.push_back(v);
    std::size_t i = dim;
    while (i-- > 0) {
      if (v[i] < box) {
        ++v[i];
        break;
      }
      v[i] = -box;
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

// Powers e(k t) for k in [-box, box] of each coordinate t.
void fill_powers(const std::vector<double>& coords, int box,
                 std::vector<std::complex<double>>& table) {
  const std::size_t width = 2 * static_cast<std::size_t>(box) + 1;
  table.assign(coords.size() * width, {1.0, 0.0});
  for (std::size_t i = 0; i < coords.size(); ++i) {
    std::complex<double> w = std::polar(1.0, kTwoPi * coords[i]);
    std::complex<double>* row = &table[i * width + static_cast<std::size_t>(box)];
    for (int k = 1; k <= box; ++k) {
      row[k] = row[k - 1] * w;
      row[-k] = std::conj(row[k]);
    }
  }
}

EquidistributionReport finish(std::vector<CharacterIndex> chars,
                              const std::vector<std::complex<double>>& sums, std::size_t n,
                              int box) {
  EquidistributionReport r;
  r.n_terms = n;
  r.box = box;
  for (std::size_t c = 0; c < chars.size(); ++c) {
    double s = std::min(1.0, std::abs(sums[c]) / static_cast<double>(n));
    if (r.scores.empty() || s > r.max_score) {
      r.max_score = s;
      r.argmax = chars[c];
    }
    r.scores.push_back({std::move(chars[c]), s});
  }
  return r;
}

}  // namespace

double weyl_threshold(std::size_t n_terms) {
  return 5.0 / std::sqrt(static_cast<double>(n_terms));
}

double weyl_sum(const TorusPoint& x, const IntMatrix& m, std::size_t n_terms,
                const CharacterIndex& j) {
  require(n_terms >= 1, ErrorKind::kRejectedInput, "a Weyl sum needs at least one term");
  require(j.size() == x.dim() && m.dim() == x.dim(), ErrorKind::kRejectedInput,
          "character, point and matrix dimensions differ");
  std::complex<double> sum = 0.0;
  visit_orbit(m, x, n_terms - 1, [&](std::size_t, const TorusPoint& p) {
    double phase = 0.0;
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (j[i] == 0) continue;
      // reduce j_i x_i mod 1 before scaling by 2 pi
      double t = static_cast<double>(j[i]) * p.coordinate(i);
      phase += t - std::floor(t);
    }
    sum += std::polar(1.0, kTwoPi * phase);
  });
  return std::min(1.0, std::abs(sum) / static_cast<double>(n_terms));
}

EquidistributionReport equidistribution_score(const TorusPoint& x, const IntMatrix& m,
                                              std::size_t n_terms, int box) {
  require(n_terms >= 1 && box >= 1, ErrorKind::kRejectedInput,
          "need at least one term and a positive character box");
  require(m.dim() == x.dim(), ErrorKind::kRejectedInput, "point and matrix dimensions differ");
  const std::size_t d = x.dim();
  std::vector<CharacterIndex> chars = character_box(d, box);
  std::vector<std::complex<double>> sums(chars.size(), 0.0);
  std::vector<std::complex<double>> table;
  const std::size_t width = 2 * static_cast<std::size_t>(box) + 1;
  double last_error = x.error_log2();
  visit_orbit(m, x, n_terms - 1, [&](std::size_t, const TorusPoint& p) {
    fill_powers(p.to_doubles(), box, table);
    for (std::size_t c = 0; c < chars.size(); ++c) {
      std::complex<double> term = 1.0;
      for (std::size_t i = 0; i < d; ++i)
        term *= table[i * width + static_cast<std::size_t>(chars[c][i] + box)];
      sums[c] += term;
    }
    last_error = p.error_log2();
  });
  EquidistributionReport r = finish(std::move(chars), sums, n_terms, box);
  r.final_error_log2 = last_error;
  r.precision_ok = last_error < -32.0;
  return r;
}

int spectral_fourier_exact(const IntMatrix& m, const CharacterIndex& j, unsigned n) {
  require(j.size() == m.dim(), ErrorKind::kRejectedInput, "character dimension mismatch");
  // iterate the character itself: n vector steps instead of a matrix power
  const std::size_t d = j.size();
  std::vector<mpz_class> v(j.begin(), j.end()), w(d);
  for (unsigned k = 0; k < n; ++k) {
    for (std::size_t r = 0; r < d; ++r) {
      w[r] = 0;
      for (std::size_t c = 0; c < d; ++c)
        if (m.at(c, r) != 0) w[r] += v[c] * m.at(c, r);
    }
    v.swap(w);
  }
  for (std::size_t r = 0; r < d; ++r)
    if (v[r] != j[r]) return 0;
  return 1;
}

double spectral_fourier_sampled(const IntMatrix& m, const CharacterIndex& j, unsigned n,
                                std::size_t samples, std::uint64_t seed) {
  require(samples >= 1, ErrorKind::kRejectedInput, "need at least one sample");
  ZMatrix mt = power(m.transpose(), n);
  const std::size_t d = j.size();
  // v = (M^n - I)^T j; the integrand is e(v . x).
  std::vector<double> v(d);
  for (std::size_t r = 0; r < d; ++r) {
    mpz_class acc = -j[r];
    for (std::size_t c = 0; c < d; ++c) acc += mt.at(r, c) * j[c];
    v[r] = acc.get_d();
  }
  std::mt19937_64 engine(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::complex<double> sum = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    double phase = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      double t = v[i] * unit(engine);
      phase += t - std::floor(t);
    }
    sum += std::polar(1.0, kTwoPi * phase);
  }
  return std::abs(sum) / static_cast<double>(samples);
}

std::complex<double> rotation_spectral(const std::vector<double>& alpha, const CharacterIndex& j,
                                       long n) {
  require(alpha.size() == j.size(), ErrorKind::kRejectedInput,
          "rotation vector and character differ in length");
  // Accumulate n (j . alpha) mod 1 in long double to keep the phase small.
  long double phase = 0.0L;
  for (std::size_t i = 0; i < j.size(); ++i) {
    long double t = static_cast<long double>(j[i]) * static_cast<long double>(alpha[i]);
    t -= std::floor(t);
    t *= static_cast<long double>(n);
    phase += t - std::floor(t);
  }
  phase -= std::floor(phase);
  return std::polar(1.0, kTwoPi * static_cast<double>(phase));
}

EquidistributionReport product_equidistribution_score(const TorusPoint& x, const IntMatrix& m,
                                                      const std::vector<double>& y,
                                                      const std::vector<double>& alpha,
                                                      std::size_t n_terms, int box) {
  require(y.size() == alpha.size(), ErrorKind::kRejectedInput,
          "rotation point and rotation vector differ in length");
  require(n_terms >= 1 && box >= 1, ErrorKind::kRejectedInput,
          "need at least one term and a positive character box");
  const std::size_t d = x.dim();
  const std::size_t dim = d + y.size();
  std::vector<CharacterIndex> chars = character_box(dim, box);
  std::vector<std::complex<double>> sums(chars.size(), 0.0);
  std::vector<std::complex<double>> table;
  const std::size_t width = 2 * static_cast<std::size_t>(box) + 1;
  double last_error = x.error_log2();
  visit_orbit(m, x, n_terms - 1, [&](std::size_t n, const TorusPoint& p) {
    std::vector<double> coords = p.to_doubles();
    for (std::size_t i = 0; i < y.size(); ++i) {
      long double a = static_cast<long double>(alpha[i]);
      long double t = static_cast<long double>(y[i]) + static_cast<long double>(n) * a;
      coords.push_back(static_cast<double>(t - std::floor(t)));
    }
    fill_powers(coords, box, table);
    for (std::size_t c = 0; c < chars.size(); ++c) {
      std::complex<double> term = 1.0;
      for (std::size_t i = 0; i < dim; ++i)
        term *= table[i * width + static_cast<std::size_t>(chars[c][i] + box)];
      sums[c] += term;
    }
    last_error = p.error_log2();
  });
  EquidistributionReport r = finish(std::move(chars), sums, n_terms, box);
  r.final_error_log2 = last_error;
  r.precision_ok = last_error < -32.0;
  return r;
}

std::vector<double> shadowing_gap(const TorusPoint& x, const HpVector& y, const Splitting& sp,
                                  const IntMatrix& m, std::size_t steps) {
  require(y.size() == x.dim() && sp.dim == x.dim() && m.dim() == x.dim(),
          ErrorKind::kRejectedInput, "shadowing inputs differ in dimension");
  const unsigned bits = std::max(sp.bits, x.precision());
  std::vector<HpVector> allowed = sp.stable;
  allowed.insert(allowed.end(), sp.central_semisimple.begin(), sp.central_semisimple.end());
  HpVector residual = y;
  if (!allowed.empty()) {
    GramSchmidtResult gs = pivoted_gram_schmidt(allowed, allowed.size(), bits);
    for (const auto& b : gs.basis) {
      HpReal c = dot(y, b);
      for (std::size_t i = 0; i < y.size(); ++i) residual[i] -= c * b[i];
    }
  }
  HpReal ynorm = norm2(y);
  if (norm2(residual) > hp(sp.tol, bits) * ynorm)
    fail(ErrorKind::kRejectedInput,
         "shadowing offset has a component outside the contracting and isometric parts");

  const unsigned p = x.precision();
  std::vector<mpz_class> raw;
  for (std::size_t i = 0; i < y.size(); ++i)
    raw.push_back(x.coords().raw(i) + hp_round_to_mpz(ldexp(y[i], static_cast<int>(p))));
  TorusPoint z = reduce_mod1(FixedVector(std::move(raw), p),
                             log2_add(x.error_log2(), -static_cast<double>(p)));
  check_budget(m, x, steps);
  check_budget(m, z, steps);
  std::vector<double> gaps;
  TorusPoint a = x;
  TorusPoint b = z;
  for (std::size_t n = 0; n <= steps; ++n) {
    gaps.push_back(torus_distance(a, b));
    if (n == steps) break;
    a = apply(m, a);
    b = apply(m, b);
  }
  return gaps;
}

}  // namespace torlab
