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

// Engine for the (alpha, beta) ball game: alternating nested max-norm balls,
// containment checking, transcripts and their line-delimited serialization.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "torlab/fixed.hpp"
#include "torlab/torus.hpp"

namespace torlab {

// Coordinates the game is played in: the torus itself (periodic) or a flat
// coordinate space such as a leaf chart.
struct GameSpace {
  std::size_t dim = 0;
  bool periodic = true;
};

struct Ball {
  FixedVector center;
  double radius = 0.0;
};

struct GameParams {
  double alpha = 0.5;
  double beta = 0.5;
  double rho = 0.25;
  FixedVector initial_center;  // its bits() is the working precision
  GameSpace space;

  unsigned bits() const { return initial_center.bits(); }
  double alice_radius(std::size_t n) const;  // A_n, n >= 1
  double bob_radius(std::size_t n) const;    // B_n, n >= 0
  void validate() const;
};

// Precision that keeps a game of `rounds` rounds and an avoidance
// computation at its final scale meaningful.
unsigned game_precision(double alpha, double beta, double rho, std::size_t rounds);

enum class Role { kAlice, kBob };
const char* to_string(Role r);

struct StrategyState {
  virtual ~StrategyState() = default;
};

struct MoveContext {
  const GameParams* params = nullptr;
  std::size_t round = 0;  // 1-based
  Role role = Role::kAlice;
  Ball parent;            // ball the new one must sit inside
  double radius = 0.0;    // radius of the ball to be chosen
  // Balls so far, starting with B_0 and alternating A_1, B_1, ...
  std::vector<Ball> history;
};

struct Move {
  FixedVector center;
  std::string actor;  // empty: the strategy's own name
};

class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual std::string name() const = 0;
  // Alpha the strategy was designed for, if any.
  virtual std::optional<double> required_alpha() const { return std::nullopt; }
  // Fresh per-transcript state; strategies themselves stay immutable.
  virtual std::unique_ptr<StrategyState> init(const GameParams& params) const;
  virtual Move move(const MoveContext& ctx, StrategyState* state) const = 0;
};

struct Violation {
  std::size_t round = 0;
  Role role = Role::kAlice;
  std::string actor;
  double excess = 0.0;  // distance beyond the allowed radius difference
  FixedVector center;   // the rejected center
};

struct GameTranscript {
  GameParams params;
  std::size_t rounds = 0;
  std::string alice;
  std::string bob;
  std::vector<Ball> alice_balls;  // A_1..A_R
  std::vector<Ball> bob_balls;    // B_0..B_R
  bool valid = false;
  std::optional<Violation> violation;
  FixedVector limit_estimate;
  double limit_error = 0.0;
};

// Distance in the game space (wrapping when periodic).
double space_distance(const GameSpace& space, const FixedVector& a, const FixedVector& b);
// Exact test: dist(child, parent) <= allowed, plus the signed excess.
bool contained(const GameSpace& space, const FixedVector& child, const FixedVector& parent,
               double allowed, double* excess);

GameTranscript play(const Strategy& alice, const Strategy& bob, const GameParams& params,
                    std::size_t rounds);

struct LimitPoint {
  FixedVector center;
  double error = 0.0;
};
LimitPoint limit_point(const GameTranscript& t);
// Torus games only; the bound rides along as the point's error.
TorusPoint limit_torus_point(const GameTranscript& t);

std::string transcript_to_jsonl(const GameTranscript& t);
GameTranscript transcript_from_jsonl(std::string_view text);
// Replays recorded centers through the engine; the result must equal the
// input bit for bit for a faithful transcript.
GameTranscript replay(const GameTranscript& t);
bool same_transcript(const GameTranscript& a, const GameTranscript& b);

}  // namespace torlab
