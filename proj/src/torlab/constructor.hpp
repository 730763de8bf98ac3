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

// Finite-horizon construction of a point whose S-orbit passes the Weyl
// tests while its T-orbit stays away from given targets: x = a + b with a
// drawn on the complement leaf and b won by the avoidance game on the
// contracting leaf of S. Certificates record everything needed to check the
// claim again from scratch.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "torlab/equidist.hpp"
#include "torlab/schmidt_game.hpp"
#include "torlab/spectral.hpp"
#include "torlab/torus.hpp"

namespace torlab {

enum class BobKind { kStationary, kRandom, kGreedy };
const char* to_string(BobKind b);
BobKind bob_kind_from_string(std::string_view s);

struct ConstructionConfig {
  IntMatrix s_matrix = IntMatrix::identity(2);
  IntMatrix t_matrix = IntMatrix::identity(2);
  std::vector<std::vector<std::string>> targets;  // decimal coordinates
  std::size_t rounds = 40;
  std::size_t horizon_s = 10000;
  std::size_t horizon_t = 200;
  int box = 3;
  double alpha = 0.5;
  double beta = 0.5;
  double rho = 0.25;
  std::uint64_t seed = 1;
  BobKind bob = BobKind::kRandom;
  int max_attempts = 3;
  double tol = 1e-10;
  std::optional<unsigned> precision;  // override of the automatic budget
  bool zero_offset = false;           // skip the game: b = 0

  unsigned budget_bits() const;
  double delta_game() const;  // separation the strategy aims for
  double delta_out() const;   // separation required of certificates
  double score_threshold() const;
};

struct BaseSample {
  TorusPoint point;                  // a, reduced mod 1
  std::vector<mpz_class> fractions;  // coefficients on the basis, scaled by 2^bits
  unsigned bits = 0;
};

// a = sum c_i t_i mod 1 with seeded c_i uniform in [0,1) at full precision.
BaseSample sample_base(const std::vector<HpVector>& t_basis, std::uint64_t seed, unsigned bits,
                       unsigned required_bits = 0);

struct OffsetResult {
  FixedVector coefficients;  // limit of the leaf game, in basis coordinates
  GameTranscript transcript;
};

// Plays the projected avoidance game for T on the leaf spanned by
// cp.s_basis over the fiber `base`, against the chosen Bob.
OffsetResult nondense_offset(const IntMatrix& t_matrix, const std::vector<TorusPoint>& targets,
                             const ComplementPair& cp, const BaseSample& base,
                             const ConstructionConfig& cfg, std::uint64_t bob_seed);

struct TargetMargin {
  std::vector<std::string> target;
  double margin = 0.0;
  std::size_t argmin = 0;
};

struct Certificate {
  unsigned bits = 0;
  std::vector<std::string> x;
  std::vector<std::string> a;
  std::vector<std::string> b;
  std::vector<std::string> base_fractions;      // a's basis coefficients
  std::vector<std::string> offset_coefficients;  // b's basis coefficients
  unsigned offset_bits = 0;
  double x_error_log2 = kExact;
  std::string classification_s;
  std::string classification_t;
  std::size_t s_dim = 0;
  std::size_t t_dim = 0;
  double condition_number = 0.0;
  EquidistributionReport equidistribution;
  double score_threshold = 0.0;
  std::vector<TargetMargin> margins;
  double delta_out = 0.0;
  double orbit_error_log2_s = kExact;
  double orbit_error_log2_t = kExact;
  bool accepted = false;
  int attempt = 0;
  std::uint64_t draw_seed = 0;
  std::string transcript_hash;
  std::vector<std::string> log;
  std::vector<std::string> flags;
  GameTranscript transcript;  // not serialized with the certificate
};

Certificate construct_point(const ConstructionConfig& cfg);

struct VerificationReport {
  bool decomposition_ok = false;  // x == reduce(a + b) bit for bit
  bool rebuild_ok = false;        // a, b rebuilt at doubled precision match
  bool equidistribution_ok = false;
  bool avoidance_ok = false;
  double max_score = 0.0;
  std::vector<double> margins;
  double rebuild_distance = 0.0;
  unsigned bits = 0;
  bool passed() const {
    return decomposition_ok && rebuild_ok && equidistribution_ok && avoidance_ok;
  }
};

// Recomputes every check at doubled precision. Throws an integrity error if
// recomputed margins disagree with the recorded ones beyond the bounds.
VerificationReport verify_certificate(const Certificate& c, const ConstructionConfig& cfg);

std::string certificate_to_jsonl(const Certificate& c);
Certificate certificate_from_jsonl(std::string_view text);

std::string fnv1a64_hex(std::string_view data);

}  // namespace torlab
