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

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "torlab/torlab.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitValidation = 2;
constexpr int kExitBudget = 3;
constexpr int kExitRejected = 4;

int exit_code(tl_status s) {
  switch (s) {
    case TL_OK:
      return kExitOk;
    case TL_ERR_INVALID_ARGUMENT:
    case TL_ERR_VALIDATION:
    case TL_ERR_CONFIGURATION:
    case TL_ERR_REJECTED_INPUT:
    case TL_ERR_IO:
      return kExitValidation;
    case TL_ERR_BUDGET:
      return kExitBudget;
    case TL_ERR_REJECTED_CERTIFICATE:
    case TL_ERR_INTEGRITY:
      return kExitRejected;
    default:
      return kExitFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Toral dynamics laboratory: spectral classification, avoidance games, "
               "equidistribution, entropy and dimension experiments, point construction."};
  app.set_version_flag("--version", std::string(tl_version()));

  const std::vector<std::string> commands = {"classify", "game",      "equidist", "entropy",
                                             "dimension", "construct", "verify",   "report"};
  std::string command;
  std::string config;
  std::string out_dir;
  std::uint64_t seed = 0;
  unsigned precision = 0;
  unsigned parallel = 1;
  app.add_option("command", command, "classify | game | equidist | entropy | dimension | "
                                     "construct | verify | report")
      ->required()
      ->check(CLI::IsMember(commands));
  app.add_option("--config", config, "experiment configuration file");
  auto* seed_opt = app.add_option("--seed", seed, "base seed (overrides experiment.seed)");
  app.add_option("--precision", precision, "working precision in bits (overrides the budget)")
      ->check(CLI::PositiveNumber);
  app.add_option("--out", out_dir, "directory for records and outputs");
  app.add_option("--parallel", parallel, "worker threads for independent seeds")
      ->check(CLI::Range(1u, 256u));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }
  if (config.empty() && command != "report") {
    std::cerr << "error: --config is required for '" << command << "'\n";
    return kExitValidation;
  }
  if (command == "report" && out_dir.empty()) {
    std::cerr << "error: report reads the records under --out DIR\n";
    return kExitValidation;
  }

  tl_run_options opts = tl_run_options_default();
  opts.has_seed = seed_opt->count() > 0;
  opts.seed = seed;
  opts.precision = precision;
  opts.parallel = parallel;
  opts.out_dir = out_dir.empty() ? nullptr : out_dir.c_str();

  tl_record* rec = nullptr;
  tl_status s = tl_run(command.c_str(), config.empty() ? nullptr : config.c_str(), &opts, &rec);
  if (s != TL_OK) {
    std::cerr << "error (" << tl_status_name(s) << "): " << tl_last_error() << "\n";
    return exit_code(s);
  }
  std::cout << tl_record_summary(rec);
  if (!out_dir.empty()) {
    s = tl_record_write(rec, out_dir.c_str());
    if (s != TL_OK) {
      std::cerr << "error (" << tl_status_name(s) << "): " << tl_last_error() << "\n";
      tl_record_free(rec);
      return exit_code(s);
    }
  }
  const int code = tl_record_rejected(rec) ? kExitRejected : kExitOk;
  tl_record_free(rec);
  return code;
}
