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

// Experiment configuration: a small TOML-style text format with sections,
// integer row lists for matrices and decimal strings for points.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "torlab/constructor.hpp"
#include "torlab/torus.hpp"

namespace torlab {

struct GameSection {
  std::size_t rounds = 40;
  double alpha = 0.5;
  double beta = 0.5;
  double rho = 0.25;
  BobKind bob = BobKind::kRandom;
};

struct HorizonSection {
  std::size_t equidist = 10000;
  std::size_t avoid = 200;
  int box = 3;
};

struct EntropySection {
  std::size_t orbit = 10000;
  std::vector<std::string> start;  // empty: seeded random points
};

struct DimensionSection {
  std::string source = "uniform";  // uniform | cantor | product | construct
  std::size_t points = 100000;
  std::size_t depth = 30;
};

struct ExperimentConfig {
  std::string id = "experiment";
  std::uint64_t seed = 1;
  std::size_t samples = 1;
  unsigned precision = 0;  // 0: automatic budget
  std::optional<IntMatrix> s_matrix;
  std::optional<IntMatrix> t_matrix;
  GameSection game;
  std::vector<std::vector<std::string>> targets;
  HorizonSection horizons;
  EntropySection entropy;
  DimensionSection dimension;
  int attempts = 3;
  bool zero_offset = false;
  std::string certificate;  // verify: path of the certificate to check

  std::size_t dim() const;
  ConstructionConfig construction(std::uint64_t seed) const;
};

// Parse errors and validation errors are Error(kValidation) whose message
// starts with the offending field path (or line number for syntax).
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);
std::string to_text(const ExperimentConfig& cfg);

// Checks what `command` needs from the configuration.
void validate_for(const ExperimentConfig& cfg, std::string_view command);

}  // namespace torlab
