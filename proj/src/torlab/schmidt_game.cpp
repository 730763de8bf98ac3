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

#include "torlab/schmidt_game.hpp"

#include <cmath>
#include <json.hpp>
#include <sstream>

#include "torlab/errors.hpp"
#include "torlab/strategies.hpp"

namespace torlab {

namespace {

// floor(v * 2^bits) for a finite nonnegative double, exactly.
mpz_class floor_scaled(double v, unsigned bits) {
  int e = 0;
  double m = std::frexp(v, &e);
  mpz_class mant;
  mpz_set_d(mant.get_mpz_t(), std::ldexp(m, 53));
  long shift = static_cast<long>(e) - 53 + static_cast<long>(bits);
  if (shift >= 0) {
    mpz_mul_2exp(mant.get_mpz_t(), mant.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
  } else {
    mpz_fdiv_q_2exp(mant.get_mpz_t(), mant.get_mpz_t(), static_cast<mp_bitcnt_t>(-shift));
  }
  return mant;
}

mpz_class raw_distance(const GameSpace& space, const FixedVector& a, const FixedVector& b) {
  require(a.size() == b.size() && a.bits() == b.bits(), ErrorKind::kRejectedInput,
          "game points differ in dimension or precision");
  mpz_class one;
  mpz_ui_pow_ui(one.get_mpz_t(), 2, a.bits());
  mpz_class best = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    mpz_class diff = a.raw(i) - b.raw(i);
    if (space.periodic) {
      mpz_fdiv_r_2exp(diff.get_mpz_t(), diff.get_mpz_t(), a.bits());
      mpz_class other = one - diff;
      if (other < diff) diff = other;
    } else {
      diff = abs(diff);
    }
    if (diff > best) best = diff;
  }
  return best;
}

FixedVector normalize(const GameSpace& space, FixedVector v) {
  if (!space.periodic) return v;
  for (std::size_t i = 0; i < v.size(); ++i)
    mpz_fdiv_r_2exp(v.raw(i).get_mpz_t(), v.raw(i).get_mpz_t(), v.bits());
  return v;
}

}  // namespace

double GameParams::alice_radius(std::size_t n) const {
  return rho * alpha * std::pow(alpha * beta, static_cast<double>(n - 1));
}

double GameParams::bob_radius(std::size_t n) const {
  return rho * std::pow(alpha * beta, static_cast<double>(n));
}

void GameParams::validate() const {
  require(alpha > 0 && alpha < 1 && beta > 0 && beta < 1, ErrorKind::kRejectedInput,
          "game parameters alpha and beta must lie in (0,1)");
  require(rho > 0 && rho <= 0.25, ErrorKind::kRejectedInput,
          "initial radius must lie in (0, 1/4]");
  require(space.dim >= 1 && initial_center.size() == space.dim, ErrorKind::kRejectedInput,
          "initial center does not match the game dimension");
  require(bits() >= 8, ErrorKind::kRejectedInput, "game precision too small");
}

unsigned game_precision(double alpha, double beta, double rho, std::size_t rounds) {
  double log_final = std::log2(rho) + static_cast<double>(rounds) * std::log2(alpha * beta);
  return 2u * static_cast<unsigned>(std::ceil(-log_final)) + 128u;
}

const char* to_string(Role r) { return r == Role::kAlice ? "alice" : "bob"; }

std::unique_ptr<StrategyState> Strategy::init(const GameParams&) const { return nullptr; }

double space_distance(const GameSpace& space, const FixedVector& a, const FixedVector& b) {
  return fixed_to_double(raw_distance(space, a, b), a.bits());
}

bool contained(const GameSpace& space, const FixedVector& child, const FixedVector& parent,
               double allowed, double* excess) {
  mpz_class dist = raw_distance(space, child, parent);
  bool ok = allowed >= 0 && dist <= floor_scaled(allowed, child.bits());
  if (excess) *excess = fixed_to_double(dist, child.bits()) - allowed;
  return ok;
}

GameTranscript play(const Strategy& alice, const Strategy& bob, const GameParams& params,
                    std::size_t rounds) {
  params.validate();
  require(rounds >= 1, ErrorKind::kRejectedInput, "a game needs at least one round");
  for (const Strategy* s : {&alice, &bob}) {
    auto req = s->required_alpha();
    if (req && std::fabs(*req - params.alpha) > 1e-12)
      fail(ErrorKind::kConfiguration, s->name() + " requires alpha = " + std::to_string(*req));
  }
  GameTranscript t;
  t.params = params;
  t.rounds = rounds;
  t.alice = alice.name();
  t.bob = bob.name();
  auto alice_state = alice.init(params);
  auto bob_state = bob.init(params);
  Ball current{normalize(params.space, params.initial_center), params.rho};
  t.bob_balls.push_back(current);
  MoveContext ctx;
  ctx.params = &params;
  ctx.history.push_back(current);

  auto step = [&](const Strategy& who, StrategyState* state, Role role, std::size_t n,
                  double radius) -> bool {
    ctx.round = n;
    ctx.role = role;
    ctx.parent = current;
    ctx.radius = radius;
    Move mv = who.move(ctx, state);
    std::string actor = mv.actor.empty() ? who.name() : mv.actor;
    require(mv.center.size() == params.space.dim && mv.center.bits() == params.bits(),
            ErrorKind::kValidation, actor + " returned a center of the wrong shape");
    FixedVector center = normalize(params.space, std::move(mv.center));
    double excess = 0.0;
    if (!contained(params.space, center, current.center, current.radius - radius, &excess)) {
      t.violation = Violation{n, role, actor, excess, center};
      return false;
    }
    current = Ball{std::move(center), radius};
    ctx.history.push_back(current);
    (role == Role::kAlice ? t.alice_balls : t.bob_balls).push_back(current);
    return true;
  };

  for (std::size_t n = 1; n <= rounds; ++n) {
    if (!step(alice, alice_state.get(), Role::kAlice, n, params.alice_radius(n))) break;
    if (!step(bob, bob_state.get(), Role::kBob, n, params.bob_radius(n))) break;
  }
  t.valid = !t.violation.has_value();
  t.limit_estimate = current.center;
  t.limit_error = current.radius;
  return t;
}

LimitPoint limit_point(const GameTranscript& t) {
  require(t.valid, ErrorKind::kRejectedInput, "limit of an invalid transcript");
  return {t.limit_estimate, t.limit_error};
}

TorusPoint limit_torus_point(const GameTranscript& t) {
  require(t.params.space.periodic, ErrorKind::kRejectedInput,
          "limit point of a chart game is not a torus point");
  LimitPoint lp = limit_point(t);
  return TorusPoint(lp.center, std::log2(lp.error));
}

namespace {

using nlohmann::json;

json decimals(const FixedVector& v) { return v.to_decimals(); }

FixedVector from_decimals(const json& j, unsigned bits) {
  std::vector<std::string> s = j.get<std::vector<std::string>>();
  return FixedVector::from_decimals(s, bits);
}

}  // namespace

std::string transcript_to_jsonl(const GameTranscript& t) {
  std::ostringstream os;
  const GameParams& p = t.params;
  json head = {{"record", "game"},
               {"alpha", p.alpha},
               {"beta", p.beta},
               {"rho", p.rho},
               {"bits", p.bits()},
               {"dim", p.space.dim},
               {"periodic", p.space.periodic},
               {"rounds", t.rounds},
               {"alice", t.alice},
               {"bob", t.bob},
               {"initial_center", decimals(p.initial_center)}};
  os << head.dump() << '\n';
  for (std::size_t n = 1; n <= t.rounds; ++n) {
    for (Role role : {Role::kAlice, Role::kBob}) {
      const auto& balls = role == Role::kAlice ? t.alice_balls : t.bob_balls;
      std::size_t idx = role == Role::kAlice ? n - 1 : n;
      if (idx < balls.size()) {
        json b = {{"record", "ball"},
                  {"round", n},
                  {"role", to_string(role)},
                  {"center", decimals(balls[idx].center)},
                  {"radius", balls[idx].radius},
                  {"valid", true}};
        os << b.dump() << '\n';
      } else if (t.violation && t.violation->round == n && t.violation->role == role) {
        double radius = role == Role::kAlice ? p.alice_radius(n) : p.bob_radius(n);
        json b = {{"record", "ball"},
                  {"round", n},
                  {"role", to_string(role)},
                  {"center", decimals(t.violation->center)},
                  {"radius", radius},
                  {"valid", false},
                  {"actor", t.violation->actor},
                  {"excess", t.violation->excess}};
        os << b.dump() << '\n';
      }
    }
  }
  json tail = {{"record", "result"},
               {"valid", t.valid},
               {"limit", decimals(t.limit_estimate)},
               {"limit_error", t.limit_error}};
  if (t.violation) {
    tail["violation"] = {{"round", t.violation->round},
                         {"role", to_string(t.violation->role)},
                         {"actor", t.violation->actor},
                         {"excess", t.violation->excess}};
  }
  os << tail.dump() << '\n';
  return os.str();
}

GameTranscript transcript_from_jsonl(std::string_view text) {
  GameTranscript t;
  std::istringstream is{std::string(text)};
  std::string line;
  bool have_head = false;
  bool have_tail = false;
  try {
    while (std::getline(is, line)) {
      if (line.empty()) continue;
      json j = json::parse(line);
      std::string rec = j.at("record").get<std::string>();
      if (rec == "game") {
        unsigned bits = j.at("bits").get<unsigned>();
        t.params.alpha = j.at("alpha").get<double>();
        t.params.beta = j.at("beta").get<double>();
        t.params.rho = j.at("rho").get<double>();
        t.params.space.dim = j.at("dim").get<std::size_t>();
        t.params.space.periodic = j.at("periodic").get<bool>();
        t.params.initial_center = from_decimals(j.at("initial_center"), bits);
        t.rounds = j.at("rounds").get<std::size_t>();
        t.alice = j.at("alice").get<std::string>();
        t.bob = j.at("bob").get<std::string>();
        t.bob_balls.push_back({t.params.initial_center, t.params.rho});
        have_head = true;
      } else if (rec == "ball") {
        require(have_head, ErrorKind::kValidation, "ball record before game header");
        Ball b{from_decimals(j.at("center"), t.params.bits()), j.at("radius").get<double>()};
        Role role = j.at("role").get<std::string>() == "alice" ? Role::kAlice : Role::kBob;
        if (j.at("valid").get<bool>()) {
          (role == Role::kAlice ? t.alice_balls : t.bob_balls).push_back(b);
        } else {
          t.violation = Violation{j.at("round").get<std::size_t>(), role,
                                  j.at("actor").get<std::string>(), j.at("excess").get<double>(),
                                  b.center};
        }
      } else if (rec == "result") {
        t.valid = j.at("valid").get<bool>();
        t.limit_estimate = from_decimals(j.at("limit"), t.params.bits());
        t.limit_error = j.at("limit_error").get<double>();
        have_tail = true;
      } else {
        fail(ErrorKind::kValidation, "unknown transcript record '" + rec + "'");
      }
    }
  } catch (const json::exception& e) {
    fail(ErrorKind::kValidation, std::string("malformed transcript: ") + e.what());
  }
  require(have_head && have_tail, ErrorKind::kValidation, "transcript is incomplete");
  return t;
}

GameTranscript replay(const GameTranscript& t) {
  std::vector<Move> alice_moves;
  std::vector<Move> bob_moves;
  for (const auto& b : t.alice_balls) alice_moves.push_back({b.center, ""});
  for (std::size_t i = 1; i < t.bob_balls.size(); ++i) bob_moves.push_back({t.bob_balls[i].center, ""});
  if (t.violation) {
    auto& moves = t.violation->role == Role::kAlice ? alice_moves : bob_moves;
    moves.push_back({t.violation->center, t.violation->actor});
  }
  ScriptedStrategy alice(t.alice, std::move(alice_moves));
  ScriptedStrategy bob(t.bob, std::move(bob_moves));
  return play(alice, bob, t.params, t.rounds);
}

bool same_transcript(const GameTranscript& a, const GameTranscript& b) {
  auto same_balls = [](const std::vector<Ball>& x, const std::vector<Ball>& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (!(x[i].center == y[i].center) || x[i].radius != y[i].radius) return false;
    return true;
  };
  if (a.valid != b.valid || a.rounds != b.rounds || a.alice != b.alice || a.bob != b.bob)
    return false;
  if (a.params.alpha != b.params.alpha || a.params.beta != b.params.beta ||
      a.params.rho != b.params.rho || !(a.params.initial_center == b.params.initial_center) ||
      a.params.space.periodic != b.params.space.periodic)
    return false;
  if (!same_balls(a.alice_balls, b.alice_balls) || !same_balls(a.bob_balls, b.bob_balls))
    return false;
  if (a.violation.has_value() != b.violation.has_value()) return false;
  if (a.violation) {
    const Violation& x = *a.violation;
    const Violation& y = *b.violation;
    if (x.round != y.round || x.role != y.role || x.actor != y.actor || x.excess != y.excess ||
        !(x.center == y.center))
      return false;
  }
  return a.limit_estimate == b.limit_estimate && a.limit_error == b.limit_error;
}

}  // namespace torlab
