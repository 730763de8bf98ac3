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

#include "torlab/entropy.hpp"

#include <cmath>
#include <algorithm>
#include <unordered_map>

#include "torlab/errors.hpp"
#include "torlab/spectral.hpp"

namespace torlab {

const char* to_string(EntropyMethod m) {
  return m == EntropyMethod::kEigenvalueFormula ? "eigenvalue_formula" : "spanning_set";
}

EntropyEstimate entropy_spectrum(const IntMatrix& m) {
  EntropyEstimate e;
  Spectrum sp = spectrum(m, 128, 1e-10);
  for (const auto& ev : sp.eigenvalues) {
    if (ev.unit) continue;
    HpReal mod = ev.value.abs();
    if (mod > 1) e.value += ev.multiplicity * log(mod).convert_to<double>();
  }
  return e;
}

namespace {

double wrap_gap(double a, double b) {
  double d = std::fabs(a - b);
  return std::min(d, 1.0 - d);
}

struct LinearFit {
  double slope = 0.0;
  double r2 = 0.0;
};

LinearFit fit(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LinearFit f;
  f.slope = sxx > 0 ? sxy / sxx : 0.0;
  f.r2 = (sxx > 0 && syy > 0) ? (sxy * sxy) / (sxx * syy) : 1.0;
  return f;
}

}  // namespace

std::size_t spanning_count(const std::vector<double>& orbit, std::size_t dim, std::size_t n,
                           double eps) {
  require(dim >= 1 && orbit.size() % dim == 0, ErrorKind::kRejectedInput,
          "orbit array shape mismatch");
  const std::size_t rows = orbit.size() / dim;
  if (n == 0 || rows < n) return 0;
  // cells at least eps wide, so eps-close points sit in neighbouring cells
  const long cells = std::max(1L, static_cast<long>(std::floor(1.0 / eps)));
  auto cell_of = [&](std::size_t row, std::size_t i) {
    long c = static_cast<long>(std::floor(orbit[row * dim + i] * static_cast<double>(cells)));
    return ((c % cells) + cells) % cells;
  };
  auto key_of = [&](const std::vector<long>& c) {
    long k = 0;
    for (long v : c) k = k * cells + v;
    return k;
  };
  std::unordered_map<long, std::vector<std::size_t>> buckets;
  std::size_t count = 0;
  std::vector<long> base(dim), probe(dim);
  std::vector<long> keys;
  for (std::size_t a = 0; a + n <= rows; ++a) {
    for (std::size_t i = 0; i < dim; ++i) base[i] = cell_of(a, i);
    // neighbouring cells, deduplicated when the grid is tiny
    keys.clear();
    std::vector<int> off(dim, -1);
    while (true) {
      for (std::size_t i = 0; i < dim; ++i) probe[i] = ((base[i] + off[i]) % cells + cells) % cells;
      keys.push_back(key_of(probe));
      std::size_t i = 0;
      for (; i < dim; ++i) {
        if (++off[i] <= 1) break;
        off[i] = -1;
      }
      if (i == dim) break;
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    bool covered = false;
    for (long k : keys) {
      auto it = buckets.find(k);
      if (it == buckets.end()) continue;
      for (std::size_t c : it->second) {
        bool close = true;
        for (std::size_t t = 0; t < n && close; ++t)
          for (std::size_t i = 0; i < dim; ++i)
            if (wrap_gap(orbit[(a + t) * dim + i], orbit[(c + t) * dim + i]) > eps) {
              close = false;
              break;
            }
        if (close) {
          covered = true;
          break;
        }
      }
      if (covered) break;
    }
    if (!covered) {
      buckets[key_of(base)].push_back(a);
      ++count;
    }
  }
  return count;
}

EntropyEstimate orbit_closure_entropy(const TorusPoint& x, const IntMatrix& m,
                                      std::size_t samples, const SpanningConfig& cfg) {
  require(samples >= 16, ErrorKind::kRejectedInput, "too few orbit samples");
  require(!cfg.scales.empty(), ErrorKind::kRejectedInput, "no scales given");
  for (std::size_t i = 1; i < cfg.scales.size(); ++i)
    require(cfg.scales[i] < cfg.scales[i - 1], ErrorKind::kRejectedInput,
            "scales must be strictly decreasing");
  std::vector<double> orbit = orbit_doubles(m, x, samples - 1);
  // the final point carries the largest error bound
  double err_log2 = x.error_log2() + static_cast<double>(samples - 1) * m.log2_norm();
  double err = std::exp2(err_log2);
  const std::size_t d = x.dim();

  EntropyEstimate out;
  out.method = EntropyMethod::kSpanningSet;
  bool have = false;
  for (double eps : cfg.scales) {
    if (eps < 2 * err) {
      out.warnings.push_back("scale " + std::to_string(eps) + " below twice the orbit error");
      continue;
    }
    std::vector<std::size_t> windows, counts;
    for (std::size_t n = std::max<std::size_t>(1, cfg.min_window); n <= cfg.max_window && n < samples; ++n) {
      std::size_t c = spanning_count(orbit, d, n, eps);
      double rows = static_cast<double>(samples - n + 1);
      if (static_cast<double>(c) > cfg.reliable_fraction * rows) break;
      windows.push_back(n);
      counts.push_back(c);
    }
    if (windows.size() < cfg.min_windows) {
      out.warnings.push_back("scale " + std::to_string(eps) + " dropped: only " +
                             std::to_string(windows.size()) + " reliable windows");
      continue;
    }
    out.scales.push_back(eps);
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < windows.size(); ++i) {
      xs.push_back(static_cast<double>(windows[i]));
      ys.push_back(std::log(static_cast<double>(counts[i])));
    }
    LinearFit f = fit(xs, ys);
    // later (finer) scales overwrite coarser ones
    out.value = std::max(0.0, f.slope);
    out.fit_quality = f.r2;
    out.scale = eps;
    out.windows = windows;
    out.counts = counts;
    have = true;
  }
  if (!have) fail(ErrorKind::kEstimation, "every entropy scale was dropped");
  return out;
}

}  // namespace torlab
