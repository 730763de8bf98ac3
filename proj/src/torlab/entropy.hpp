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

// Topological entropy: the eigenvalue formula for the whole map and a
// spanning-set estimate for sampled orbit closures.

#include <cstddef>
#include <string>
#include <vector>

#include "torlab/torus.hpp"

namespace torlab {

enum class EntropyMethod { kEigenvalueFormula, kSpanningSet };
const char* to_string(EntropyMethod m);

struct EntropyEstimate {
  double value = 0.0;  // nats
  EntropyMethod method = EntropyMethod::kEigenvalueFormula;
  double scale = 0.0;                 // epsilon the value was read at
  std::vector<double> scales;         // epsilons that survived
  std::vector<std::size_t> windows;   // n values used at `scale`
  std::vector<std::size_t> counts;    // spanning counts at `scale`
  double fit_quality = 0.0;           // R^2 of the slope fit
  std::vector<std::string> warnings;  // dropped scales
};

// Sum of log|lambda| over eigenvalues outside the unit circle.
EntropyEstimate entropy_spectrum(const IntMatrix& m);

struct SpanningConfig {
  std::vector<double> scales = {0.25, 0.125, 0.0625};  // decreasing
  std::size_t min_window = 2;  // n = 1 only measures the cover of the space
  std::size_t max_window = 40;
  std::size_t min_windows = 3;
  double reliable_fraction = 1.0 / 32;  // a count is trusted while <= fraction * samples
};

// (n, eps)-spanning counts of {x, Mx, ..., M^(N-1) x} under the Bowen
// metric, greedy cover; slope of log count in n at the finest usable eps.
EntropyEstimate orbit_closure_entropy(const TorusPoint& x, const IntMatrix& m,
                                      std::size_t samples, const SpanningConfig& cfg = {});

// Greedy (n, eps)-spanning count over rows [0, rows - n] of a row-major
// orbit array with `dim` columns.
std::size_t spanning_count(const std::vector<double>& orbit, std::size_t dim, std::size_t n,
                           double eps);

}  // namespace torlab
