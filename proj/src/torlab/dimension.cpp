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

#include "torlab/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_set>

#include "torlab/errors.hpp"

namespace torlab {

namespace {

struct VectorHash {
  std::size_t operator()(const std::vector<std::uint64_t>& v) const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::uint64_t x : v) {
      h ^= x;
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace

DimensionEstimate box_dimension(const std::vector<double>& samples, std::size_t dim,
                                const BoxConfig& cfg) {
  require(dim >= 1 && samples.size() % dim == 0, ErrorKind::kRejectedInput,
          "sample array shape mismatch");
  const std::size_t n = samples.size() / dim;
  require(n >= cfg.min_samples, ErrorKind::kRejectedInput,
          "box counting needs at least " + std::to_string(cfg.min_samples) + " samples");
  require(cfg.coarsest_exponent >= 3 && cfg.finest_exponent >= cfg.coarsest_exponent &&
              cfg.finest_exponent <= 52,
          ErrorKind::kRejectedInput, "scales must be dyadic with the coarsest at most 2^-3");
  for (double v : samples)
    require(v >= 0.0 && v < 1.0, ErrorKind::kRejectedInput, "samples must lie in [0,1)");

  DimensionEstimate out;
  std::vector<double> xs, ys;
  std::vector<std::uint64_t> key(dim);
  for (int k = cfg.coarsest_exponent; k <= cfg.finest_exponent; ++k) {
    std::unordered_set<std::vector<std::uint64_t>, VectorHash> boxes;
    const double scale = std::ldexp(1.0, k);
    for (std::size_t s = 0; s < n; ++s) {
      for (std::size_t i = 0; i < dim; ++i)
        key[i] = static_cast<std::uint64_t>(std::floor(samples[s * dim + i] * scale));
      boxes.insert(key);
    }
    out.scales.push_back(std::ldexp(1.0, -k));
    out.counts.push_back(boxes.size());
    if (static_cast<double>(boxes.size()) > cfg.reliable_fraction * static_cast<double>(n)) {
      out.warnings.push_back("scale 2^-" + std::to_string(k) +
                             " dropped: too few samples per occupied box");
      break;
    }
    xs.push_back(static_cast<double>(k) * std::log(2.0));
    ys.push_back(std::log(static_cast<double>(boxes.size())));
  }
  if (xs.size() < 2) fail(ErrorKind::kEstimation, "fewer than two reliable scales");
  std::size_t first = xs.size() > cfg.fit_scales ? xs.size() - cfg.fit_scales : 0;
  std::vector<double> fx(xs.begin() + static_cast<long>(first), xs.end());
  std::vector<double> fy(ys.begin() + static_cast<long>(first), ys.end());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < fx.size(); ++i) {
    mx += fx[i];
    my += fy[i];
  }
  mx /= static_cast<double>(fx.size());
  my /= static_cast<double>(fx.size());
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < fx.size(); ++i) {
    sxx += (fx[i] - mx) * (fx[i] - mx);
    sxy += (fx[i] - mx) * (fy[i] - my);
    syy += (fy[i] - my) * (fy[i] - my);
  }
  out.raw_slope = sxy / sxx;
  out.fit_quality = syy > 0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  out.value = std::clamp(out.raw_slope, 0.0, static_cast<double>(dim));
  for (std::size_t i = first; i < xs.size(); ++i)
    out.fit_scales.push_back(std::exp(-xs[i]));
  return out;
}

double slicing_bound(double base_dim, double fiber_inf_dim) {
  require(base_dim >= 0 && fiber_inf_dim >= 0, ErrorKind::kRejectedInput,
          "dimensions must be nonnegative");
  return base_dim + fiber_inf_dim;
}

}  // namespace torlab
