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

// Box-counting dimension of finite samples, and the slicing lower bound
// for fibered sets.

#include <cstddef>
#include <string>
#include <vector>

namespace torlab {

struct DimensionEstimate {
  double value = 0.0;      // slope clamped to [0, ambient dimension]
  double raw_slope = 0.0;  // before clamping
  std::vector<double> scales;       // every scale examined, coarse to fine
  std::vector<std::size_t> counts;  // occupied boxes per scale
  std::vector<double> fit_scales;   // scales entering the fit
  double fit_quality = 0.0;         // R^2
  std::vector<std::string> warnings;
  std::string note = "box-counting estimate standing in for Hausdorff dimension";
};

struct BoxConfig {
  int coarsest_exponent = 3;  // coarsest scale 2^-3
  int finest_exponent = 24;
  std::size_t fit_scales = 4;
  double reliable_fraction = 0.125;  // a count is trusted while <= fraction * samples
  std::size_t min_samples = 1000;
};

// samples: row-major, `dim` columns, coordinates in [0,1).
DimensionEstimate box_dimension(const std::vector<double>& samples, std::size_t dim,
                                const BoxConfig& cfg = {});

// Lower bound dim(base) + inf dim(fiber) for a fibered set.
double slicing_bound(double base_dim, double fiber_inf_dim);

}  // namespace torlab
