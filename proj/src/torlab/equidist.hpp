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

// Equidistribution diagnostics on orbits: Weyl sums against characters,
// the exact character-kernel test, rotation eigenvalues, product sums for
// an orbit paired with a rotation, and orbit shadowing along a leaf.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "torlab/hp.hpp"
#include "torlab/torus.hpp"

namespace torlab {

struct Splitting;

using CharacterIndex = std::vector<long>;

// |(1/N) sum_{n<N} e(j . M^n x)|.
double weyl_sum(const TorusPoint& x, const IntMatrix& m, std::size_t n_terms,
                const CharacterIndex& j);

struct CharacterScore {
  CharacterIndex j;
  double score = 0.0;
};

struct EquidistributionReport {
  std::size_t n_terms = 0;
  int box = 0;
  std::vector<CharacterScore> scores;  // every nonzero index in the box
  double max_score = 0.0;
  CharacterIndex argmax;
  bool precision_ok = false;
  double final_error_log2 = kExact;
};

EquidistributionReport equidistribution_score(const TorusPoint& x, const IntMatrix& m,
                                              std::size_t n_terms, int box);

// 1 iff (M^T)^n j == j, decided in exact integer arithmetic; n >= 0.
int spectral_fourier_exact(const IntMatrix& m, const CharacterIndex& j, unsigned n);
// Monte Carlo estimate of |int e(j . (M^n - I) x) dx|.
double spectral_fourier_sampled(const IntMatrix& m, const CharacterIndex& j, unsigned n,
                                std::size_t samples, std::uint64_t seed);

// e(n (j . alpha)).
std::complex<double> rotation_spectral(const std::vector<double>& alpha,
                                       const CharacterIndex& j, long n);

// Sums of e(j . M^n x + k . (y + n alpha)) over 0 < |(j,k)|_inf <= box.
EquidistributionReport product_equidistribution_score(const TorusPoint& x, const IntMatrix& m,
                                                      const std::vector<double>& y,
                                                      const std::vector<double>& alpha,
                                                      std::size_t n_terms, int box);

// g_n = dist(M^n x, M^n (x + y)) for n = 0..steps, with y a vector of the
// contracting or isometric part of the splitting.
std::vector<double> shadowing_gap(const TorusPoint& x, const HpVector& y, const Splitting& sp,
                                  const IntMatrix& m, std::size_t steps);

double weyl_threshold(std::size_t n_terms);

}  // namespace torlab
