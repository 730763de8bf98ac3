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

#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "torlab/dimension.hpp"
#include "torlab/errors.hpp"

using namespace torlab;

namespace {

const double kCantorDim = std::log(2.0) / std::log(3.0);

}  // namespace

TEST_SUITE("dimension") {

TEST_CASE("uniform samples fill the square") {
  auto e = box_dimension(oracle::uniform_sample(200000, 2, 1), 2);
  CHECK(e.value == doctest::Approx(2.0).epsilon(0.05));
  CHECK(e.fit_scales.size() >= 2);
  CHECK(!e.note.empty());
}

TEST_CASE("middle-thirds Cantor samples") {
  auto e = box_dimension(oracle::cantor_sample(200000, 30, 2), 1);
  CHECK(e.value == doctest::Approx(kCantorDim).epsilon(0.1));
  // the full grid of left endpoints gives the same slope
  auto g = box_dimension(oracle::cantor_grid(14), 1);
  CHECK(g.value == doctest::Approx(kCantorDim).epsilon(0.1));
}

TEST_CASE("a single repeated point has dimension zero") {
  std::vector<double> pts;
  for (int i = 0; i < 2000; ++i) {
    pts.push_back(0.3);
    pts.push_back(0.7);
  }
  auto e = box_dimension(pts, 2);
  CHECK(e.value == 0.0);
  CHECK(e.counts.front() == 1);
}

TEST_CASE("Cantor times interval and the slicing bound") {
  auto base = oracle::cantor_sample(200000, 30, 3);
  auto e = box_dimension(oracle::product_sample(base, 4), 2);
  const double bound = slicing_bound(kCantorDim, 1.0);
  CHECK(bound == doctest::Approx(1 + kCantorDim));
  CHECK(e.value == doctest::Approx(bound).epsilon(0.1));
  CHECK_THROWS_AS(slicing_bound(-1.0, 0.5), Error);
}

TEST_CASE("property: estimates never exceed the ambient dimension by much") {
  for (std::size_t d = 1; d <= 3; ++d)
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      auto e = box_dimension(oracle::uniform_sample(200000, d, seed), d);
      CHECK(e.value <= double(d) + 0.05);
      CHECK(e.value >= 0.0);
      CHECK(e.counts.size() == e.scales.size());
      for (std::size_t i = 1; i < e.counts.size(); ++i) CHECK(e.counts[i] >= e.counts[i - 1]);
    }
}

TEST_CASE("bad sample sets are rejected") {
  CHECK_THROWS_AS(box_dimension({0.1, 0.2, 0.3}, 2), Error);
  CHECK_THROWS_AS(box_dimension(oracle::uniform_sample(10, 1, 1), 1), Error);
  std::vector<double> out_of_range(2000, 1.0);
  BoxConfig cfg;
  cfg.min_samples = 1;
  CHECK_THROWS_AS(box_dimension(out_of_range, 1, cfg), Error);
}

}  // TEST_SUITE
