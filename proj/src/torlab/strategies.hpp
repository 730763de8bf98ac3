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

// Strategies for the ball game: simple players, the orbit-avoiding player,
// and combinators for projection to a factor and for interleaving.

#include <cstdint>
#include <memory>
#include <vector>

#include "torlab/hp_linalg.hpp"
#include "torlab/schmidt_game.hpp"

namespace torlab {

using StrategyPtr = std::shared_ptr<const Strategy>;

// Keeps the opponent's center.
class StationaryStrategy : public Strategy {
 public:
  std::string name() const override { return "stationary"; }
  Move move(const MoveContext& ctx, StrategyState* state) const override;
};

// Uniformly random admissible center from a seeded generator.
class RandomStrategy : public Strategy {
 public:
  explicit RandomStrategy(std::uint64_t seed) : seed_(seed) {}
  std::string name() const override;
  std::unique_ptr<StrategyState> init(const GameParams& params) const override;
  Move move(const MoveContext& ctx, StrategyState* state) const override;

 private:
  std::uint64_t seed_;
};

// Plays back recorded moves; falls back to the parent center once exhausted.
class ScriptedStrategy : public Strategy {
 public:
  ScriptedStrategy(std::string name, std::vector<Move> moves)
      : name_(std::move(name)), moves_(std::move(moves)) {}
  std::string name() const override { return name_; }
  std::unique_ptr<StrategyState> init(const GameParams& params) const override;
  Move move(const MoveContext& ctx, StrategyState* state) const override;

 private:
  std::string name_;
  std::vector<Move> moves_;
};

// Affine chart from game coordinates to the torus: c -> base + L c (mod 1).
struct Chart {
  FixedVector base;              // torus point, d coordinates
  std::vector<HpVector> columns;  // L, one column per game coordinate
  unsigned bits = 0;              // working precision

  std::size_t torus_dim() const { return base.size(); }
  std::size_t game_dim() const { return columns.size(); }
  static Chart identity(std::size_t d, unsigned bits);
  // Point of the torus for chart coordinates c, rounded to `bits`.
  TorusPoint point(const FixedVector& c, unsigned bits) const;
};

// Images of chart balls under powers of an integer matrix.
class OrbitImages {
 public:
  OrbitImages(const IntMatrix& m, const Chart& chart, double max_norm, std::size_t max_time);

  std::size_t times() const { return norms_.size(); }
  double norm(std::size_t k) const { return norms_[k]; }  // |M^k L|_inf
  // Max-norm torus distance between M^k(base + L c) and y.
  HpReal distance(std::size_t k, const FixedVector& c, const HpVector& y) const;
  unsigned bits() const { return bits_; }

 private:
  unsigned bits_;
  std::vector<double> norms_;
  std::vector<HpVector> base_images_;  // M^k base mod 1
  std::vector<HpMatrix> linear_;       // M^k L
};

struct AvoidConfig {
  double c1 = 0.125;
  double c2 = 0.5;
  double delta = 0.0;           // required separation from the target
  std::size_t max_time = 4096;  // largest iteration time handled
  std::vector<bool> frozen;     // coordinates never moved (empty: none)
};

// Alice strategy steering the orbit of the limit point away from B(y, delta).
// Each round handles the not yet cleared times k whose image scale
// |M^k L| rho_n has dropped to at most c2; a time is cleared once the
// chosen ball's M^k image misses B(y, delta), and nesting keeps it so.
class AvoidStrategy : public Strategy {
 public:
  AvoidStrategy(const IntMatrix& m, const TorusPoint& target, Chart chart, AvoidConfig cfg);

  std::string name() const override { return "avoid"; }
  std::optional<double> required_alpha() const override { return 0.5; }
  std::unique_ptr<StrategyState> init(const GameParams& params) const override;
  Move move(const MoveContext& ctx, StrategyState* state) const override;

  const AvoidConfig& config() const { return cfg_; }
  const OrbitImages& images() const { return *images_; }

 private:
  AvoidConfig cfg_;
  Chart chart_;
  HpVector target_;
  std::shared_ptr<const OrbitImages> images_;
};

// Bob strategy pushing toward the nearest preimage of y among the times
// visible at the current scale.
class GreedyStrategy : public Strategy {
 public:
  GreedyStrategy(const IntMatrix& m, const TorusPoint& target, Chart chart, double c2 = 0.5,
                 std::size_t max_time = 4096, double min_radius = 1e-30);
  std::string name() const override { return "greedy"; }
  Move move(const MoveContext& ctx, StrategyState* state) const override;

 private:
  double c2_;
  Chart chart_;
  HpVector target_;
  std::shared_ptr<const OrbitImages> images_;
};

// Runs a strategy for the product V x W (max metric) on V: Bob's V-ball is
// lifted over a fixed fiber basepoint and the product answer projected.
class ProjectStrategy : public Strategy {
 public:
  ProjectStrategy(StrategyPtr inner, FixedVector fiber_basepoint);
  std::string name() const override;
  std::optional<double> required_alpha() const override { return inner_->required_alpha(); }
  std::unique_ptr<StrategyState> init(const GameParams& params) const override;
  Move move(const MoveContext& ctx, StrategyState* state) const override;

 private:
  StrategyPtr inner_;
  FixedVector fiber_;
};

// Round n is played by delegate (n - 1) mod k, each with its own state.
class RoundRobinStrategy : public Strategy {
 public:
  explicit RoundRobinStrategy(std::vector<StrategyPtr> delegates);
  std::string name() const override { return "round_robin"; }
  std::optional<double> required_alpha() const override { return alpha_; }
  std::unique_ptr<StrategyState> init(const GameParams& params) const override;
  Move move(const MoveContext& ctx, StrategyState* state) const override;

 private:
  std::vector<StrategyPtr> delegates_;
  std::optional<double> alpha_;
};

}  // namespace torlab
