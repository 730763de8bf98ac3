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

#include "torlab/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "torlab/errors.hpp"
#include "torlab/spectral.hpp"

namespace torlab {

namespace {

constexpr double kSlack = 1.0 - 0x1p-20;

mpz_class floor_scaled(double v, unsigned bits) {
  if (v <= 0) return 0;
  int e = 0;
  double m = std::frexp(v, &e);
  mpz_class mant;
  mpz_set_d(mant.get_mpz_t(), std::ldexp(m, 53));
  long shift = static_cast<long>(e) - 53 + static_cast<long>(bits);
  if (shift >= 0)
    mpz_mul_2exp(mant.get_mpz_t(), mant.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
  else
    mpz_fdiv_q_2exp(mant.get_mpz_t(), mant.get_mpz_t(), static_cast<mp_bitcnt_t>(-shift));
  return mant;
}

HpVector to_hp(const FixedVector& v, unsigned bits) {
  HpVector out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(hp_from_fixed(v.raw(i), v.bits(), bits));
  return out;
}

HpVector frac(HpVector v) {
  for (auto& x : v) x -= floor(x);
  return v;
}

// Candidate centers: the parent center plus offsets from
// {0, -1, 1, -1/2, 1/2} * allowed in every free coordinate. The unmoved
// center comes first so ties keep the concentric choice.
std::vector<FixedVector> candidate_grid(const FixedVector& center, double allowed,
                                        const std::vector<bool>& frozen) {
  const std::size_t dim = center.size();
  mpz_class full = floor_scaled(allowed * kSlack, center.bits());
  mpz_class half = full / 2;
  const mpz_class steps[5] = {0, -full, full, -half, half};
  std::vector<FixedVector> out;
  std::vector<int> idx(dim, 0);
  while (true) {
    FixedVector c = center;
    for (std::size_t i = 0; i < dim; ++i) c.raw(i) += steps[idx[i]];
    out.push_back(std::move(c));
    std::size_t i = 0;
    for (; i < dim; ++i) {
      bool fixed = i < frozen.size() && frozen[i];
      if (fixed) continue;
      if (++idx[i] < 5) break;
      idx[i] = 0;
    }
    if (i == dim) break;
  }
  return out;
}

struct AvoidState : StrategyState {
  std::vector<bool> cleared;
};

struct ScriptState : StrategyState {
  std::size_t next = 0;
};

struct RandomState : StrategyState {
  std::mt19937_64 engine;
};

struct ProjectState : StrategyState {
  GameParams lifted;
  std::unique_ptr<StrategyState> inner;
};

struct RoundRobinState : StrategyState {
  std::vector<std::unique_ptr<StrategyState>> delegates;
};

}  // namespace

Move StationaryStrategy::move(const MoveContext& ctx, StrategyState*) const {
  return {ctx.parent.center, ""};
}

std::string RandomStrategy::name() const { return "random(seed=" + std::to_string(seed_) + ")"; }

std::unique_ptr<StrategyState> RandomStrategy::init(const GameParams&) const {
  auto s = std::make_unique<RandomState>();
  s->engine.seed(seed_);
  return s;
}

Move RandomStrategy::move(const MoveContext& ctx, StrategyState* state) const {
  auto& engine = static_cast<RandomState*>(state)->engine;
  const unsigned bits = ctx.parent.center.bits();
  mpz_class bound = floor_scaled((ctx.parent.radius - ctx.radius) * kSlack, bits);
  mpz_class span = 2 * bound + 1;
  FixedVector c = ctx.parent.center;
  const std::size_t words = (bits + 127) / 64;
  for (std::size_t i = 0; i < c.size(); ++i) {
    std::vector<std::uint64_t> w(words);
    for (auto& x : w) x = engine();
    mpz_class r;
    mpz_import(r.get_mpz_t(), words, 1, sizeof(std::uint64_t), 0, 0, w.data());
    r %= span;
    c.raw(i) += r - bound;
  }
  return {std::move(c), ""};
}

std::unique_ptr<StrategyState> ScriptedStrategy::init(const GameParams&) const {
  return std::make_unique<ScriptState>();
}

Move ScriptedStrategy::move(const MoveContext& ctx, StrategyState* state) const {
  auto* s = static_cast<ScriptState*>(state);
  if (s->next < moves_.size()) return moves_[s->next++];
  return {ctx.parent.center, ""};
}

Chart Chart::identity(std::size_t d, unsigned bits) {
  Chart c;
  c.base = FixedVector(std::vector<mpz_class>(d, 0), bits);
  c.bits = bits;
  for (std::size_t j = 0; j < d; ++j) {
    HpVector col(d, hp_zero(bits));
    col[j] = hp(1.0, bits);
    c.columns.push_back(std::move(col));
  }
  return c;
}

TorusPoint Chart::point(const FixedVector& c, unsigned out_bits) const {
  require(c.size() == game_dim(), ErrorKind::kRejectedInput, "chart coordinate count mismatch");
  const unsigned work = std::max(out_bits, bits) + 32;
  HpVector x = to_hp(base, work);
  HpVector cc = to_hp(c, work);
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += columns[j][i] * cc[j];
  x = frac(x);
  std::vector<mpz_class> raw;
  mpz_class one;
  mpz_ui_pow_ui(one.get_mpz_t(), 2, out_bits);
  for (const auto& v : x) {
    mpz_class r = hp_round_to_mpz(ldexp(v, static_cast<int>(out_bits)));
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), one.get_mpz_t());
    raw.push_back(r);
  }
  double err = -static_cast<double>(std::min(out_bits, bits)) + 16.0;
  return TorusPoint(FixedVector(std::move(raw), out_bits), err);
}

OrbitImages::OrbitImages(const IntMatrix& m, const Chart& chart, double max_norm,
                         std::size_t max_time)
    : bits_(chart.bits) {
  require(m.dim() == chart.torus_dim(), ErrorKind::kRejectedInput,
          "matrix and chart dimensions differ");
  const std::size_t d = m.dim();
  HpMatrix linear = HpMatrix::from_columns(chart.columns, d, bits_);
  HpMatrix step = HpMatrix::from_z(ZMatrix(m), bits_);
  TorusPoint base(chart.base);
  for (std::size_t k = 0; k <= max_time; ++k) {
    double norm = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      HpReal row = hp_zero(bits_);
      for (std::size_t j = 0; j < linear.cols(); ++j) row += abs(linear.at(i, j));
      norm = std::max(norm, row.convert_to<double>());
    }
    if (norm > max_norm) break;
    norms_.push_back(norm);
    base_images_.push_back(to_hp(base.coords(), bits_));
    linear_.push_back(linear);
    linear = step * linear;
    base = apply(m, base);
  }
}

HpReal OrbitImages::distance(std::size_t k, const FixedVector& c, const HpVector& y) const {
  HpVector cc = to_hp(c, bits_);
  HpVector z = linear_[k] * cc;
  for (std::size_t i = 0; i < z.size(); ++i) z[i] += base_images_[k][i];
  z = frac(z);
  HpReal best = hp_zero(bits_);
  for (std::size_t i = 0; i < z.size(); ++i) {
    HpReal diff = abs(z[i] - y[i]);
    HpReal other = 1 - diff;
    if (other < diff) diff = other;
    if (diff > best) best = diff;
  }
  return best;
}

AvoidStrategy::AvoidStrategy(const IntMatrix& m, const TorusPoint& target, Chart chart,
                             AvoidConfig cfg)
    : cfg_(std::move(cfg)), chart_(std::move(chart)) {
  if (!(cfg_.c1 > 0 && cfg_.c1 < cfg_.c2 && cfg_.c2 <= 0.5))
    fail(ErrorKind::kConfiguration, "avoid window needs 0 < c1 < c2 <= 1/2");
  require(cfg_.delta > 0, ErrorKind::kConfiguration, "avoid separation must be positive");
  require(target.dim() == chart_.torus_dim(), ErrorKind::kRejectedInput,
          "target dimension differs from the chart");
  require(cfg_.frozen.empty() || cfg_.frozen.size() == chart_.game_dim(),
          ErrorKind::kConfiguration, "frozen mask has the wrong length");
  require(is_ergodic(m), ErrorKind::kRejectedInput, "avoidance needs an ergodic matrix");
  target_ = to_hp(target.coords(), chart_.bits);
  images_ = std::make_shared<OrbitImages>(m, chart_, cfg_.c2 / cfg_.delta, cfg_.max_time);
}

std::unique_ptr<StrategyState> AvoidStrategy::init(const GameParams& params) const {
  require(params.space.dim == chart_.game_dim(), ErrorKind::kRejectedInput,
          "avoid strategy chart does not match the game space");
  auto s = std::make_unique<AvoidState>();
  s->cleared.assign(images_->times(), false);
  return s;
}

Move AvoidStrategy::move(const MoveContext& ctx, StrategyState* state) const {
  auto& cleared = static_cast<AvoidState*>(state)->cleared;
  const double scale = ctx.parent.radius;
  // Due times sit in [c1, c2] at this scale; uncleared times below c1 are
  // a backlog and stay in the set until handled.
  std::vector<std::size_t> due;
  for (std::size_t k = 0; k < images_->times(); ++k)
    if (!cleared[k] && images_->norm(k) * scale <= cfg_.c2) due.push_back(k);
  if (due.empty()) return {ctx.parent.center, ""};

  const unsigned bits = images_->bits();
  const HpReal delta = hp(cfg_.delta, bits);
  std::vector<FixedVector> grid =
      candidate_grid(ctx.parent.center, ctx.parent.radius - ctx.radius, cfg_.frozen);
  std::size_t best = 0;
  HpReal best_score;
  std::vector<HpReal> best_parts;
  for (std::size_t c = 0; c < grid.size(); ++c) {
    std::vector<HpReal> parts;
    HpReal worst;
    for (std::size_t k : due) {
      HpReal s = images_->distance(k, grid[c], target_) -
                 hp(images_->norm(k) * ctx.radius, bits) - delta;
      if (parts.empty() || s < worst) worst = s;
      parts.push_back(s);
    }
    if (c == 0 || worst > best_score) {
      best = c;
      best_score = worst;
      best_parts = std::move(parts);
    }
  }
  for (std::size_t i = 0; i < due.size(); ++i)
    if (best_parts[i] > 0) cleared[due[i]] = true;
  return {grid[best], ""};
}

GreedyStrategy::GreedyStrategy(const IntMatrix& m, const TorusPoint& target, Chart chart,
                               double c2, std::size_t max_time, double min_radius)
    : c2_(c2), chart_(std::move(chart)) {
  require(c2 > 0 && min_radius > 0, ErrorKind::kConfiguration, "greedy scale must be positive");
  target_ = to_hp(target.coords(), chart_.bits);
  images_ = std::make_shared<OrbitImages>(m, chart_, c2 / min_radius, max_time);
}

Move GreedyStrategy::move(const MoveContext& ctx, StrategyState*) const {
  std::vector<std::size_t> visible;
  for (std::size_t k = 0; k < images_->times(); ++k)
    if (images_->norm(k) * ctx.parent.radius <= c2_) visible.push_back(k);
  if (visible.empty()) return {ctx.parent.center, ""};
  std::vector<FixedVector> grid =
      candidate_grid(ctx.parent.center, ctx.parent.radius - ctx.radius, {});
  std::size_t best = 0;
  HpReal best_value;
  for (std::size_t c = 0; c < grid.size(); ++c) {
    HpReal value;
    bool first = true;
    for (std::size_t k : visible) {
      HpReal v = images_->distance(k, grid[c], target_) / images_->norm(k);
      if (first || v < value) value = v;
      first = false;
    }
    if (c == 0 || value < best_value) {
      best = c;
      best_value = value;
    }
  }
  return {grid[best], ""};
}

ProjectStrategy::ProjectStrategy(StrategyPtr inner, FixedVector fiber_basepoint)
    : inner_(std::move(inner)), fiber_(std::move(fiber_basepoint)) {
  require(inner_ != nullptr, ErrorKind::kConfiguration, "projection needs an inner strategy");
  require(fiber_.size() >= 1, ErrorKind::kRejectedInput, "fiber basepoint is empty");
}

std::string ProjectStrategy::name() const { return "project(" + inner_->name() + ")"; }

namespace {

FixedVector lift(const FixedVector& v, const FixedVector& fiber) {
  std::vector<mpz_class> raw = v.raws();
  FixedVector f = fiber.with_bits(v.bits());
  raw.insert(raw.end(), f.raws().begin(), f.raws().end());
  return FixedVector(std::move(raw), v.bits());
}

}  // namespace

std::unique_ptr<StrategyState> ProjectStrategy::init(const GameParams& params) const {
  auto s = std::make_unique<ProjectState>();
  s->lifted = params;
  s->lifted.space.dim = params.space.dim + fiber_.size();
  s->lifted.initial_center = lift(params.initial_center, fiber_);
  s->inner = inner_->init(s->lifted);
  return s;
}

Move ProjectStrategy::move(const MoveContext& ctx, StrategyState* state) const {
  auto* s = static_cast<ProjectState*>(state);
  const std::size_t dim = ctx.parent.center.size();
  require(dim + fiber_.size() == s->lifted.space.dim, ErrorKind::kRejectedInput,
          "projected game dimension mismatch");
  MoveContext up = ctx;
  up.params = &s->lifted;
  up.parent.center = lift(ctx.parent.center, fiber_);
  up.history.clear();
  for (const auto& b : ctx.history) up.history.push_back({lift(b.center, fiber_), b.radius});
  Move mv = inner_->move(up, s->inner.get());
  require(mv.center.size() == dim + fiber_.size(), ErrorKind::kRejectedInput,
          "inner strategy returned a center of the wrong dimension");
  std::vector<mpz_class> raw(mv.center.raws().begin(), mv.center.raws().begin() + dim);
  return {FixedVector(std::move(raw), mv.center.bits()), mv.actor};
}

RoundRobinStrategy::RoundRobinStrategy(std::vector<StrategyPtr> delegates)
    : delegates_(std::move(delegates)) {
  if (delegates_.empty()) fail(ErrorKind::kConfiguration, "round robin needs a delegate");
  for (const auto& d : delegates_) {
    require(d != nullptr, ErrorKind::kConfiguration, "null delegate");
    auto a = d->required_alpha();
    if (!a) continue;
    if (alpha_ && std::fabs(*alpha_ - *a) > 1e-12)
      fail(ErrorKind::kConfiguration, "round robin delegates require different alpha values");
    alpha_ = a;
  }
}

std::unique_ptr<StrategyState> RoundRobinStrategy::init(const GameParams& params) const {
  auto s = std::make_unique<RoundRobinState>();
  for (const auto& d : delegates_) s->delegates.push_back(d->init(params));
  return s;
}

Move RoundRobinStrategy::move(const MoveContext& ctx, StrategyState* state) const {
  auto* s = static_cast<RoundRobinState*>(state);
  const std::size_t k = delegates_.size();
  const std::size_t i = (ctx.round - 1) % k;
  // The delegate sees only its own balls; everything between two of its
  // turns reads as a single opponent move.
  MoveContext view = ctx;
  view.history.clear();
  for (std::size_t m = i + 1; m < ctx.round; m += k) {
    std::size_t b = 2 * (m - 1);
    if (b + 1 >= ctx.history.size()) break;
    view.history.push_back(ctx.history[b]);
    view.history.push_back(ctx.history[b + 1]);
  }
  view.history.push_back(ctx.parent);
  Move mv = delegates_[i]->move(view, s->delegates[i].get());
  std::string inner = mv.actor.empty() ? delegates_[i]->name() : mv.actor;
  mv.actor = "round_robin[" + std::to_string(i) + "]:" + inner;
  return mv;
}

}  // namespace torlab
