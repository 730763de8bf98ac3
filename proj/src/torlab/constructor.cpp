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

#include "torlab/constructor.hpp"

#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <random>
#include <sstream>

#include "torlab/errors.hpp"
#include "torlab/strategies.hpp"

namespace torlab {

namespace {

using nlohmann::json;

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::vector<TorusPoint> parse_targets(const ConstructionConfig& cfg, unsigned bits) {
  std::vector<TorusPoint> out;
  for (const auto& t : cfg.targets) {
    require(t.size() == cfg.s_matrix.dim(), ErrorKind::kValidation,
            "target dimension differs from the matrices");
    out.push_back(parse_point(t, bits));
  }
  return out;
}

// sum_j coeff_j * basis_j, coefficients given as raw * 2^-coeff_bits.
HpVector combine(const std::vector<HpVector>& basis, const std::vector<mpz_class>& coeff,
                 unsigned coeff_bits, std::size_t d, unsigned bits) {
  HpVector v(d, hp_zero(bits));
  for (std::size_t j = 0; j < basis.size(); ++j) {
    HpReal c = hp_from_fixed(coeff[j], coeff_bits, bits);
    for (std::size_t i = 0; i < d; ++i) v[i] += c * basis[j][i];
  }
  return v;
}

std::vector<mpz_class> to_raw(const HpVector& v, unsigned bits) {
  std::vector<mpz_class> out;
  for (const auto& x : v) out.push_back(hp_round_to_mpz(ldexp(x, static_cast<int>(bits))));
  return out;
}

std::vector<mpz_class> mod_one(std::vector<mpz_class> raw, unsigned bits) {
  for (auto& r : raw) mpz_fdiv_r_2exp(r.get_mpz_t(), r.get_mpz_t(), bits);
  return raw;
}

std::vector<std::string> decimals(const std::vector<mpz_class>& raw, unsigned bits) {
  std::vector<std::string> out;
  for (const auto& r : raw) out.push_back(fixed_to_decimal(r, bits));
  return out;
}

std::vector<mpz_class> parse_raw(const std::vector<std::string>& s, unsigned bits) {
  std::vector<mpz_class> out;
  for (const auto& x : s) out.push_back(decimal_to_fixed(x, bits));
  return out;
}

TargetMargin avoidance_margin(const IntMatrix& t, const TorusPoint& x, const TorusPoint& y,
                              std::size_t horizon) {
  TargetMargin m;
  m.target = y.to_decimals();
  m.margin = 1.0;
  TorusPoint yy = y.with_precision(x.precision());
  visit_orbit(t, x, horizon, [&](std::size_t n, const TorusPoint& p) {
    double d = torus_distance(p, yy);
    if (d < m.margin) {
      m.margin = d;
      m.argmin = n;
    }
  });
  return m;
}

std::vector<HpVector> with_bits(const std::vector<HpVector>& vs, unsigned bits) {
  std::vector<HpVector> out;
  for (const auto& v : vs) {
    HpVector w;
    for (const auto& x : v) w.push_back(hp_with_bits(x, bits));
    out.push_back(std::move(w));
  }
  return out;
}

void validate(const ConstructionConfig& cfg) {
  require(cfg.s_matrix.dim() == cfg.t_matrix.dim(), ErrorKind::kValidation,
          "S and T have different dimensions");
  require(!cfg.targets.empty(), ErrorKind::kValidation, "at least one target is required");
  require(cfg.rounds >= 1 && cfg.horizon_s >= 1 && cfg.horizon_t >= 1, ErrorKind::kValidation,
          "rounds and horizons must be positive");
  require(cfg.box >= 1, ErrorKind::kValidation, "character box must be positive");
  require(cfg.max_attempts >= 1, ErrorKind::kValidation, "need at least one attempt");
  if (std::fabs(cfg.alpha - 0.5) > 1e-12)
    fail(ErrorKind::kConfiguration, "the avoidance strategy is built for alpha = 1/2");
}

}  // namespace

const char* to_string(BobKind b) {
  switch (b) {
    case BobKind::kStationary:
      return "stationary";
    case BobKind::kRandom:
      return "random";
    case BobKind::kGreedy:
      return "greedy";
  }
  return "unknown";
}

BobKind bob_kind_from_string(std::string_view s) {
  if (s == "stationary") return BobKind::kStationary;
  if (s == "random") return BobKind::kRandom;
  if (s == "greedy") return BobKind::kGreedy;
  fail(ErrorKind::kValidation, "unknown bob strategy '" + std::string(s) + "'");
}

unsigned ConstructionConfig::budget_bits() const {
  return std::max(required_precision(s_matrix, horizon_s), required_precision(t_matrix, horizon_t));
}

double ConstructionConfig::delta_game() const {
  return rho * std::pow(alpha * beta, static_cast<double>(rounds)) / 4;
}

double ConstructionConfig::delta_out() const {
  return rho * std::pow(alpha * beta, static_cast<double>(rounds)) / 8;
}

double ConstructionConfig::score_threshold() const { return weyl_threshold(horizon_s); }

std::string fnv1a64_hex(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

BaseSample sample_base(const std::vector<HpVector>& t_basis, std::uint64_t seed, unsigned bits,
                       unsigned required_bits) {
  if (bits < required_bits)
    throw BudgetError(required_bits, "base sample needs " + std::to_string(required_bits) +
                                         " bits, got " + std::to_string(bits));
  require(!t_basis.empty(), ErrorKind::kRejectedInput, "empty complement basis");
  const std::size_t d = t_basis.front().size();
  std::mt19937_64 engine(seed);
  const std::size_t words = (bits + 63) / 64;
  BaseSample s;
  s.bits = bits;
  for (std::size_t j = 0; j < t_basis.size(); ++j) {
    std::vector<std::uint64_t> w(words);
    for (auto& x : w) x = engine();
    mpz_class r;
    mpz_import(r.get_mpz_t(), words, 1, sizeof(std::uint64_t), 0, 0, w.data());
    mpz_fdiv_q_2exp(r.get_mpz_t(), r.get_mpz_t(), words * 64 - bits);
    s.fractions.push_back(r);
  }
  HpVector a = combine(t_basis, s.fractions, bits, d, bits + 64);
  std::vector<mpz_class> raw = mod_one(to_raw(a, bits), bits);
  s.point = TorusPoint(FixedVector(std::move(raw), bits), -static_cast<double>(bits) + 16.0);
  return s;
}

OffsetResult nondense_offset(const IntMatrix& t_matrix, const std::vector<TorusPoint>& targets,
                             const ComplementPair& cp, const BaseSample& base,
                             const ConstructionConfig& cfg, std::uint64_t bob_seed) {
  const std::size_t ds = cp.s_basis.size();
  const std::size_t dt = cp.t_basis.size();
  const std::size_t d = cp.dim;
  const unsigned game_bits = game_precision(cfg.alpha, cfg.beta, cfg.rho, cfg.rounds);
  const unsigned chart_bits = game_bits + 64;

  Chart product;
  product.base = FixedVector(std::vector<mpz_class>(d, 0), chart_bits);
  product.bits = chart_bits;
  product.columns = with_bits(cp.s_basis, chart_bits);
  for (auto& col : with_bits(cp.t_basis, chart_bits)) product.columns.push_back(std::move(col));

  AvoidConfig acfg;
  acfg.delta = cfg.delta_game();
  acfg.max_time = cfg.horizon_t;
  acfg.frozen.assign(ds, false);
  acfg.frozen.resize(ds + dt, true);

  std::vector<StrategyPtr> avoiders;
  for (const auto& y : targets)
    avoiders.push_back(std::make_shared<AvoidStrategy>(t_matrix, y, product, acfg));
  StrategyPtr inner =
      avoiders.size() == 1 ? avoiders.front() : std::make_shared<RoundRobinStrategy>(avoiders);

  std::vector<mpz_class> fiber_raw;
  for (const auto& f : base.fractions) fiber_raw.push_back(rescale(f, base.bits, game_bits));
  ProjectStrategy alice(inner, FixedVector(std::move(fiber_raw), game_bits));

  GameParams params;
  params.alpha = cfg.alpha;
  params.beta = cfg.beta;
  params.rho = cfg.rho;
  params.space = {ds, false};
  params.initial_center = FixedVector(std::vector<mpz_class>(ds, 0), game_bits);

  std::unique_ptr<Strategy> bob;
  switch (cfg.bob) {
    case BobKind::kStationary:
      bob = std::make_unique<StationaryStrategy>();
      break;
    case BobKind::kRandom:
      bob = std::make_unique<RandomStrategy>(bob_seed);
      break;
    case BobKind::kGreedy: {
      Chart leaf;
      leaf.base = base.point.coords();
      leaf.bits = chart_bits;
      leaf.columns = with_bits(cp.s_basis, chart_bits);
      bob = std::make_unique<GreedyStrategy>(t_matrix, targets.front(), leaf, acfg.c2,
                                             cfg.horizon_t, acfg.delta);
      break;
    }
  }
  OffsetResult out;
  out.transcript = play(alice, *bob, params, cfg.rounds);
  if (!out.transcript.valid) {
    const Violation& v = *out.transcript.violation;
    fail(ErrorKind::kConstruction, "leaf game invalid: " + v.actor + " violated containment in round " +
                                       std::to_string(v.round));
  }
  out.coefficients = limit_point(out.transcript).center;
  return out;
}

Certificate construct_point(const ConstructionConfig& cfg) {
  validate(cfg);
  const unsigned budget = cfg.budget_bits();
  const unsigned bits = cfg.precision.value_or(budget);
  if (bits < budget)
    throw BudgetError(budget, "precision override of " + std::to_string(bits) +
                                  " bits is below the budget of " + std::to_string(budget));
  const IntMatrix& s = cfg.s_matrix;
  const IntMatrix& t = cfg.t_matrix;
  const std::size_t d = s.dim();
  Splitting sp_s = splitting(s, cfg.tol, bits);
  Splitting sp_t = splitting(t, cfg.tol, bits);

  Certificate c;
  c.bits = bits;
  c.classification_s = to_string(sp_s.classification);
  c.classification_t = to_string(sp_t.classification);
  SpanCheck span = span_condition(sp_s, sp_t);
  if (!span.warning.empty()) c.flags.push_back(span.warning);
  if (sp_t.classification != Classification::kHyperbolic && abs(t.determinant()) != 1)
    c.flags.push_back(
        "T is a quasihyperbolic endomorphism that is not an automorphism; outside the stated "
        "hypotheses of the entropy argument");
  ComplementPair cp = choose_complements(sp_s, sp_t);
  c.s_dim = cp.s_basis.size();
  c.t_dim = cp.t_basis.size();
  c.condition_number = cp.condition_number;
  c.delta_out = cfg.delta_out();
  c.score_threshold = cfg.score_threshold();
  std::vector<TorusPoint> targets = parse_targets(cfg, bits);

  for (int attempt = 0; attempt < cfg.max_attempts; ++attempt) {
    const std::uint64_t draw = cfg.seed + kGolden * static_cast<std::uint64_t>(attempt);
    BaseSample base = sample_base(cp.t_basis, draw, bits, budget);
    std::vector<mpz_class> b_raw(d, 0);
    std::vector<mpz_class> coeff_raw;
    unsigned coeff_bits = 0;
    GameTranscript transcript;
    if (!cfg.zero_offset) {
      OffsetResult off = nondense_offset(t, targets, cp, base, cfg, draw ^ 0xB0B0B0B0ULL);
      coeff_raw = off.coefficients.raws();
      coeff_bits = off.coefficients.bits();
      b_raw = to_raw(combine(cp.s_basis, coeff_raw, coeff_bits, d, bits + 64), bits);
      transcript = std::move(off.transcript);
    }
    std::vector<mpz_class> x_raw(d);
    for (std::size_t i = 0; i < d; ++i) x_raw[i] = base.point.coords().raw(i) + b_raw[i];
    x_raw = mod_one(std::move(x_raw), bits);
    const double err = -static_cast<double>(bits) + 16.0;
    TorusPoint x(FixedVector(x_raw, bits), err);

    c.attempt = attempt;
    c.draw_seed = draw;
    c.x = decimals(x_raw, bits);
    c.a = base.point.to_decimals();
    c.b = decimals(b_raw, bits);
    c.base_fractions = decimals(base.fractions, bits);
    c.offset_coefficients = coeff_bits ? decimals(coeff_raw, coeff_bits) : std::vector<std::string>{};
    c.offset_bits = coeff_bits;
    c.x_error_log2 = err;
    c.equidistribution = equidistribution_score(x, s, cfg.horizon_s, cfg.box);
    c.orbit_error_log2_s = c.equidistribution.final_error_log2;
    c.orbit_error_log2_t = err + static_cast<double>(cfg.horizon_t) * t.log2_norm();
    c.margins.clear();
    bool avoid_ok = true;
    for (const auto& y : targets) {
      c.margins.push_back(avoidance_margin(t, x, y, cfg.horizon_t));
      avoid_ok = avoid_ok && c.margins.back().margin >= c.delta_out;
    }
    bool equi_ok = c.equidistribution.max_score <= c.score_threshold;
    c.accepted = equi_ok && avoid_ok;
    c.transcript = std::move(transcript);
    c.transcript_hash =
        cfg.zero_offset ? "" : "fnv1a64:" + fnv1a64_hex(transcript_to_jsonl(c.transcript));
    char line[256];
    std::snprintf(line, sizeof line, "attempt %d: max_score %.6g (%s), min margin %.6g (%s)",
                  attempt, c.equidistribution.max_score, equi_ok ? "pass" : "fail",
                  [&] {
                    double m = 1.0;
                    for (const auto& tm : c.margins) m = std::min(m, tm.margin);
                    return m;
                  }(),
                  avoid_ok ? "pass" : "fail");
    c.log.push_back(line);
    if (c.accepted) break;
  }
  return c;
}

VerificationReport verify_certificate(const Certificate& c, const ConstructionConfig& cfg) {
  validate(cfg);
  const IntMatrix& s = cfg.s_matrix;
  const IntMatrix& t = cfg.t_matrix;
  const std::size_t d = s.dim();
  const unsigned p = c.bits;
  const unsigned p2 = 2 * p;
  require(p >= cfg.budget_bits(), ErrorKind::kRejectedCertificate,
          "certificate precision is below the configured budget");
  require(c.x.size() == d && c.a.size() == d && c.b.size() == d, ErrorKind::kRejectedCertificate,
          "certificate vectors have the wrong dimension");
  VerificationReport r;
  r.bits = p2;

  std::vector<mpz_class> x = parse_raw(c.x, p);
  std::vector<mpz_class> a = parse_raw(c.a, p);
  std::vector<mpz_class> b = parse_raw(c.b, p);
  std::vector<mpz_class> sum(d);
  for (std::size_t i = 0; i < d; ++i) sum[i] = a[i] + b[i];
  r.decomposition_ok = mod_one(sum, p) == x;

  // Rebuild a and b from their basis coefficients with a splitting at twice
  // the precision; the result must sit within the recorded error of x.
  Splitting sp_s = splitting(s, cfg.tol, p2);
  Splitting sp_t = splitting(t, cfg.tol, p2);
  ComplementPair cp = choose_complements(sp_s, sp_t);
  std::vector<mpz_class> fractions = parse_raw(c.base_fractions, p);
  require(fractions.size() == cp.t_basis.size(), ErrorKind::kRejectedCertificate,
          "base coefficients do not match the complement dimension");
  HpVector rebuilt = combine(cp.t_basis, fractions, p, d, p2 + 64);
  if (!c.offset_coefficients.empty()) {
    std::vector<mpz_class> coeff = parse_raw(c.offset_coefficients, c.offset_bits);
    require(coeff.size() == cp.s_basis.size(), ErrorKind::kRejectedCertificate,
            "offset coefficients do not match the leaf dimension");
    HpVector off = combine(cp.s_basis, coeff, c.offset_bits, d, p2 + 64);
    for (std::size_t i = 0; i < d; ++i) rebuilt[i] += off[i];
  }
  TorusPoint x2(FixedVector(mod_one(to_raw(rebuilt, p2), p2), p2));
  TorusPoint xp(FixedVector(x, p), c.x_error_log2);
  TorusPoint x_wide = xp.with_precision(p2);
  r.rebuild_distance = torus_distance(x_wide, x2);
  r.rebuild_ok = std::log2(r.rebuild_distance) <= c.x_error_log2;

  EquidistributionReport eq = equidistribution_score(x_wide, s, cfg.horizon_s, cfg.box);
  r.max_score = eq.max_score;
  r.equidistribution_ok = eq.max_score <= cfg.score_threshold();
  std::vector<TorusPoint> targets = parse_targets(cfg, p2);
  r.avoidance_ok = true;
  for (const auto& y : targets) {
    TargetMargin m = avoidance_margin(t, x_wide, y, cfg.horizon_t);
    r.margins.push_back(m.margin);
    r.avoidance_ok = r.avoidance_ok && m.margin >= cfg.delta_out();
  }
  if (r.decomposition_ok) {
    // A consistent certificate must reproduce its own numbers.
    const double orbit_slack = std::exp2(c.orbit_error_log2_t) + 1e-15;
    if (std::fabs(eq.max_score - c.equidistribution.max_score) > 1e-9)
      fail(ErrorKind::kIntegrity, "recomputed Weyl score disagrees with the certificate");
    require(c.margins.size() == r.margins.size(), ErrorKind::kIntegrity,
            "certificate lists a different number of targets");
    for (std::size_t i = 0; i < r.margins.size(); ++i)
      if (std::fabs(r.margins[i] - c.margins[i].margin) > orbit_slack)
        fail(ErrorKind::kIntegrity, "recomputed avoidance margin disagrees with the certificate");
  }
  return r;
}

std::string certificate_to_jsonl(const Certificate& c) {
  auto finite_or_null = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
  std::ostringstream os;
  json head = {{"record", "certificate"},
               {"bits", c.bits},
               {"x", c.x},
               {"a", c.a},
               {"b", c.b},
               {"base_fractions", c.base_fractions},
               {"offset_coefficients", c.offset_coefficients},
               {"offset_bits", c.offset_bits},
               {"x_error_log2", finite_or_null(c.x_error_log2)},
               {"classification_s", c.classification_s},
               {"classification_t", c.classification_t},
               {"s_dim", c.s_dim},
               {"t_dim", c.t_dim},
               {"condition_number", c.condition_number},
               {"score_threshold", c.score_threshold},
               {"delta_out", c.delta_out},
               {"orbit_error_log2_s", finite_or_null(c.orbit_error_log2_s)},
               {"orbit_error_log2_t", finite_or_null(c.orbit_error_log2_t)},
               {"accepted", c.accepted},
               {"attempt", c.attempt},
               {"draw_seed", c.draw_seed},
               {"transcript", c.transcript_hash},
               {"flags", c.flags},
               {"log", c.log},
               {"finite_horizon", "evidence at the stated horizons only"}};
  os << head.dump() << '\n';
  const auto& e = c.equidistribution;
  json scores = json::array();
  for (const auto& sc : e.scores) scores.push_back({{"j", sc.j}, {"score", sc.score}});
  json eq = {{"record", "equidistribution"},
             {"n_terms", e.n_terms},
             {"box", e.box},
             {"max_score", e.max_score},
             {"argmax", e.argmax},
             {"precision_ok", e.precision_ok},
             {"final_error_log2", finite_or_null(e.final_error_log2)},
             {"scores", scores}};
  os << eq.dump() << '\n';
  for (const auto& m : c.margins) {
    json av = {{"record", "avoidance"},
               {"target", m.target},
               {"margin", m.margin},
               {"argmin", m.argmin}};
    os << av.dump() << '\n';
  }
  return os.str();
}

Certificate certificate_from_jsonl(std::string_view text) {
  auto log2_or_exact = [](const json& j) { return j.is_null() ? kExact : j.get<double>(); };
  Certificate c;
  bool have_head = false;
  std::istringstream is{std::string(text)};
  std::string line;
  try {
    while (std::getline(is, line)) {
      if (line.empty()) continue;
      json j = json::parse(line);
      const std::string rec = j.at("record").get<std::string>();
      if (rec == "certificate") {
        c.bits = j.at("bits").get<unsigned>();
        c.x = j.at("x").get<std::vector<std::string>>();
        c.a = j.at("a").get<std::vector<std::string>>();
        c.b = j.at("b").get<std::vector<std::string>>();
        c.base_fractions = j.at("base_fractions").get<std::vector<std::string>>();
        c.offset_coefficients = j.at("offset_coefficients").get<std::vector<std::string>>();
        c.offset_bits = j.at("offset_bits").get<unsigned>();
        c.x_error_log2 = log2_or_exact(j.at("x_error_log2"));
        c.classification_s = j.at("classification_s").get<std::string>();
        c.classification_t = j.at("classification_t").get<std::string>();
        c.s_dim = j.at("s_dim").get<std::size_t>();
        c.t_dim = j.at("t_dim").get<std::size_t>();
        c.condition_number = j.at("condition_number").get<double>();
        c.score_threshold = j.at("score_threshold").get<double>();
        c.delta_out = j.at("delta_out").get<double>();
        c.orbit_error_log2_s = log2_or_exact(j.at("orbit_error_log2_s"));
        c.orbit_error_log2_t = log2_or_exact(j.at("orbit_error_log2_t"));
        c.accepted = j.at("accepted").get<bool>();
        c.attempt = j.at("attempt").get<int>();
        c.draw_seed = j.at("draw_seed").get<std::uint64_t>();
        c.transcript_hash = j.at("transcript").get<std::string>();
        c.flags = j.at("flags").get<std::vector<std::string>>();
        c.log = j.at("log").get<std::vector<std::string>>();
        have_head = true;
      } else if (rec == "equidistribution") {
        auto& e = c.equidistribution;
        e.n_terms = j.at("n_terms").get<std::size_t>();
        e.box = j.at("box").get<int>();
        e.max_score = j.at("max_score").get<double>();
        e.argmax = j.at("argmax").get<CharacterIndex>();
        e.precision_ok = j.at("precision_ok").get<bool>();
        e.final_error_log2 = log2_or_exact(j.at("final_error_log2"));
        for (const auto& sc : j.at("scores"))
          e.scores.push_back({sc.at("j").get<CharacterIndex>(), sc.at("score").get<double>()});
      } else if (rec == "avoidance") {
        c.margins.push_back({j.at("target").get<std::vector<std::string>>(),
                             j.at("margin").get<double>(), j.at("argmin").get<std::size_t>()});
      } else {
        fail(ErrorKind::kRejectedCertificate, "unknown certificate record '" + rec + "'");
      }
    }
  } catch (const json::exception& e) {
    fail(ErrorKind::kRejectedCertificate, std::string("malformed certificate: ") + e.what());
  }
  require(have_head, ErrorKind::kRejectedCertificate, "certificate header missing");
  return c;
}

}  // namespace torlab
