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

// Experiment runner behind the command-line tool. Every output file except
// the record's wall time is a deterministic function of the configuration.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "torlab/config.hpp"

namespace torlab {

inline constexpr const char* kVersion = "0.1.0";

struct RunOptions {
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> precision;
  unsigned parallel = 1;
  std::string base_dir;  // relative paths in the config resolve against this
  std::string out_dir;   // read by `report`
};

struct OutputFile {
  std::string name;  // relative path inside the command's output directory
  std::string content;
};

struct ExperimentRecord {
  std::string id;
  std::string command;
  std::string config_text;  // canonical snapshot, overrides applied
  std::uint64_t seed = 0;
  std::string version = kVersion;
  double wall_time = 0.0;
  bool rejected = false;  // a certificate failed its checks
  std::vector<OutputFile> outputs;
  std::string summary;  // human-readable
};

const std::vector<std::string>& commands();

ExperimentRecord run(std::string_view command, ExperimentConfig cfg, const RunOptions& opts);
ExperimentRecord run_file(std::string_view command, const std::string& config_path,
                          RunOptions opts);

std::string record_to_json(const ExperimentRecord& r);
// Writes outputs and record.json under dir/<command>/.
void write_record(const ExperimentRecord& r, const std::string& dir);

}  // namespace torlab
