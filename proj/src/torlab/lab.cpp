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

#include "torlab/lab.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <random>
#include <sstream>
#include <thread>

#include "torlab/dimension.hpp"
#include "torlab/entropy.hpp"
#include "torlab/equidist.hpp"
#include "torlab/errors.hpp"
#include "torlab/spectral.hpp"
#include "torlab/strategies.hpp"

namespace torlab {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) {
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  // Rethrow the first failure in seed order so errors are deterministic too.
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::string jsonl(const std::vector<json>& lines) {
  std::string out;
  for (const auto& j : lines) out += j.dump() + "\n";
  return out;
}

std::string csv_number(double v) {
  std::ostringstream o;
  o.precision(10);
  o << v;
  return o.str();
}

std::uint64_t seed_at(const ExperimentConfig& c, std::size_t i) { return c.seed + i; }

double unit_double(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

json rows_json(const IntMatrix& m) { return m.rows(); }

// ---------------------------------------------------------------- classify

json classification_json(const char* name, const IntMatrix& m) {
  json j = {{"record", "classification"}, {"matrix", name}, {"rows", rows_json(m)}};
  Spectrum sp = spectrum(m, 128);
  j["characteristic"] = sp.characteristic.to_string();
  json factors = json::array();
  for (const auto& f : sp.factors)
    factors.push_back({{"polynomial", f.polynomial.to_string()},
                       {"multiplicity", f.multiplicity},
                       {"cyclotomic_order", f.cyclotomic},
                       {"unit_roots", f.unit_roots},
                       {"jordan", f.jordan}});
  j["factors"] = factors;
  Classification c = classify(m);
  j["classification"] = to_string(c);
  j["ergodic"] = c != Classification::kNonergodic;
  if (c != Classification::kNonergodic) {
    Splitting s = splitting(m, 1e-10, 128);
    j["stable"] = s.stable.size();
    j["central"] = s.central.size();
    j["unstable"] = s.unstable.size();
    j["central_semisimple"] = s.central_semisimple.size();
    j["rotation_angles"] = s.rotation_angles;
  }
  return j;
}

void run_classify(const ExperimentConfig& c, ExperimentRecord& r) {
  std::vector<json> lines;
  std::string csv = "matrix,classification,ergodic,stable,central,unstable,central_semisimple\n";
  std::ostringstream sum;
  for (const char* name : {"S", "T"}) {
    const auto& m = name[0] == 'S' ? c.s_matrix : c.t_matrix;
    if (!m) continue;
    json j = classification_json(name, *m);
    csv += std::string(name) + "," + j["classification"].get<std::string>() + "," +
           (j["ergodic"].get<bool>() ? "true" : "false");
    for (const char* k : {"stable", "central", "unstable", "central_semisimple"})
      csv += "," + (j.contains(k) ? std::to_string(j[k].get<std::size_t>()) : std::string());
    csv += "\n";
    sum << name << ": " << j["classification"].get<std::string>() << "\n";
    lines.push_back(std::move(j));
  }
  r.outputs = {{"classify.jsonl", jsonl(lines)}, {"summary.csv", csv}};
  r.summary = sum.str();
}

// -------------------------------------------------------------------- game

struct GameRun {
  json line;
  std::string transcript;
  std::string hash;
  bool avoided = false;
  double min_margin = 1.0;
  bool valid = false;
};

GameRun play_one(const ExperimentConfig& c, std::uint64_t seed) {
  const IntMatrix& t = *c.t_matrix;
  const std::size_t d = t.dim();
  const unsigned bits = game_precision(c.game.alpha, c.game.beta, c.game.rho, c.game.rounds);
  const double delta = c.game.rho * std::pow(c.game.alpha * c.game.beta, double(c.game.rounds));
  AvoidConfig acfg;
  acfg.delta = delta / 4;
  acfg.max_time = c.horizons.avoid;
  Chart chart = Chart::identity(d, bits + 64);
  std::vector<TorusPoint> targets;
  std::vector<StrategyPtr> avoiders;
  for (const auto& y : c.targets) {
    targets.push_back(parse_point(y, bits + 64));
    avoiders.push_back(std::make_shared<AvoidStrategy>(t, targets.back(), chart, acfg));
  }
  StrategyPtr alice =
      avoiders.size() == 1 ? avoiders.front() : std::make_shared<RoundRobinStrategy>(avoiders);
  std::unique_ptr<Strategy> bob;
  switch (c.game.bob) {
    case BobKind::kStationary:
      bob = std::make_unique<StationaryStrategy>();
      break;
    case BobKind::kRandom:
      bob = std::make_unique<RandomStrategy>(seed);
      break;
    case BobKind::kGreedy:
      bob = std::make_unique<GreedyStrategy>(t, targets.front(), chart, acfg.c2, c.horizons.avoid,
                                             acfg.delta);
      break;
  }
  GameParams p;
  p.alpha = c.game.alpha;
  p.beta = c.game.beta;
  p.rho = c.game.rho;
  p.space = {d, true};
  p.initial_center = random_point(d, seed, 64, bits).coords();
  GameTranscript tr = play(*alice, *bob, p, c.game.rounds);

  GameRun g;
  g.valid = tr.valid;
  g.transcript = transcript_to_jsonl(tr);
  g.hash = "fnv1a64:" + fnv1a64_hex(g.transcript);
  json line = {{"record", "game"},     {"seed", seed},         {"valid", tr.valid},
               {"alice", alice->name()}, {"bob", bob->name()},  {"rounds", c.game.rounds},
               {"delta_out", delta / 8}, {"transcript", g.hash}};
  if (tr.valid) {
    TorusPoint x = limit_torus_point(tr);
    const unsigned vb = std::max(x.precision(), required_precision(t, c.horizons.avoid));
    TorusPoint xx(x.coords().with_bits(vb));
    json margins = json::array();
    g.avoided = true;
    for (const auto& y : targets) {
      TorusPoint yy = y.with_precision(vb);
      double m = 1.0;
      visit_orbit(t, xx, c.horizons.avoid,
                  [&](std::size_t, const TorusPoint& z) { m = std::min(m, torus_distance(z, yy)); });
      margins.push_back(m);
      g.min_margin = std::min(g.min_margin, m);
      g.avoided = g.avoided && m >= delta / 8;
    }
    line["limit"] = x.to_decimals();
    line["margins"] = margins;
  } else {
    line["violation"] = tr.violation->actor;
  }
  line["avoided"] = g.avoided;
  g.line = std::move(line);
  return g;
}

void run_game(const ExperimentConfig& c, const RunOptions& o, ExperimentRecord& r) {
  std::vector<GameRun> runs(c.samples);
  parallel_for(c.samples, o.parallel, [&](std::size_t i) { runs[i] = play_one(c, seed_at(c, i)); });
  std::vector<json> lines;
  std::string csv = "seed,valid,avoided,min_margin,delta_out,transcript\n";
  std::size_t ok = 0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const GameRun& g = runs[i];
    lines.push_back(g.line);
    csv += std::to_string(seed_at(c, i)) + "," + (g.valid ? "true" : "false") + "," +
           (g.avoided ? "true" : "false") + "," + csv_number(g.min_margin) + "," +
           csv_number(g.line["delta_out"].get<double>()) + "," + g.hash + "\n";
    r.outputs.push_back({"transcripts/" + g.hash.substr(8) + ".jsonl", g.transcript});
    ok += g.valid && g.avoided;
  }
  r.outputs.insert(r.outputs.begin(), {{"game.jsonl", jsonl(lines)}, {"summary.csv", csv}});
  r.summary = std::to_string(ok) + "/" + std::to_string(runs.size()) +
              " games valid with the limit orbit avoiding every target\n";
}

// ---------------------------------------------------------------- equidist

void run_equidist(const ExperimentConfig& c, const RunOptions& o, ExperimentRecord& r) {
  const IntMatrix& s = *c.s_matrix;
  const std::size_t n = c.horizons.equidist;
  const unsigned bits = c.precision ? c.precision : required_precision(s, n);
  std::vector<json> lines(c.samples);
  parallel_for(c.samples, o.parallel, [&](std::size_t i) {
    TorusPoint x = random_point(s.dim(), seed_at(c, i), 512, bits);
    EquidistributionReport e = equidistribution_score(x, s, n, c.horizons.box);
    json scores = json::array();
    for (const auto& sc : e.scores) scores.push_back({{"j", sc.j}, {"score", sc.score}});
    lines[i] = {{"record", "equidistribution"},
                {"seed", seed_at(c, i)},
                {"n_terms", n},
                {"box", c.horizons.box},
                {"bits", bits},
                {"max_score", e.max_score},
                {"argmax", e.argmax},
                {"threshold", weyl_threshold(n)},
                {"pass", e.max_score <= weyl_threshold(n)},
                {"precision_ok", e.precision_ok},
                {"scores", scores}};
  });
  std::string csv = "seed,max_score,threshold,pass\n";
  std::size_t pass = 0;
  for (const auto& j : lines) {
    csv += std::to_string(j["seed"].get<std::uint64_t>()) + "," +
           csv_number(j["max_score"].get<double>()) + "," +
           csv_number(j["threshold"].get<double>()) + "," + (j["pass"].get<bool>() ? "true" : "false") +
           "\n";
    pass += j["pass"].get<bool>();
  }
  r.outputs = {{"equidist.jsonl", jsonl(lines)}, {"summary.csv", csv}};
  r.summary = std::to_string(pass) + "/" + std::to_string(lines.size()) +
              " points below the Weyl threshold " + csv_number(weyl_threshold(n)) + "\n";
}

// ----------------------------------------------------------------- entropy

json entropy_json(const EntropyEstimate& e) {
  return {{"value", e.value},   {"method", to_string(e.method)}, {"scale", e.scale},
          {"windows", e.windows}, {"counts", e.counts},           {"fit_quality", e.fit_quality},
          {"warnings", e.warnings}};
}

void run_entropy(const ExperimentConfig& c, const RunOptions& o, ExperimentRecord& r) {
  const IntMatrix& s = *c.s_matrix;
  const std::size_t n = c.entropy.orbit;
  const unsigned bits = c.precision ? c.precision : required_precision(s, n);
  EntropyEstimate exact = entropy_spectrum(s);
  std::vector<json> lines;
  json head = entropy_json(exact);
  head["record"] = "entropy";
  lines.push_back(head);
  const std::size_t k = c.entropy.start.empty() ? c.samples : 1;
  std::vector<json> est(k);
  parallel_for(k, o.parallel, [&](std::size_t i) {
    TorusPoint x = c.entropy.start.empty() ? random_point(s.dim(), seed_at(c, i), 512, bits)
                                           : parse_point(c.entropy.start, bits);
    json j = {{"record", "entropy"}, {"orbit", n}};
    if (c.entropy.start.empty()) j["seed"] = seed_at(c, i);
    try {
      j.update(entropy_json(orbit_closure_entropy(x, s, n)));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kEstimation) throw;
      j["method"] = to_string(EntropyMethod::kSpanningSet);
      j["value"] = nullptr;
      j["error"] = e.what();
    }
    est[i] = std::move(j);
  });
  std::string csv = "seed,method,value\n";
  csv += ",spectrum," + csv_number(exact.value) + "\n";
  std::ostringstream sum;
  sum << "spectral entropy " << exact.value << "\n";
  for (auto& j : est) {
    std::string v = j["value"].is_null() ? "" : csv_number(j["value"].get<double>());
    csv += (j.contains("seed") ? std::to_string(j["seed"].get<std::uint64_t>()) : "") + "," +
           j["method"].get<std::string>() + "," + v + "\n";
    sum << "orbit estimate " << (v.empty() ? "unavailable" : v) << "\n";
    lines.push_back(std::move(j));
  }
  r.outputs = {{"entropy.jsonl", jsonl(lines)}, {"summary.csv", csv}};
  r.summary = sum.str();
}

// --------------------------------------------------------------- dimension

std::vector<double> cantor(std::size_t n, std::size_t depth, std::mt19937_64& g) {
  std::vector<double> out(n);
  for (auto& v : out) {
    double x = 0, scale = 1.0 / 3;
    for (std::size_t k = 0; k < depth; ++k, scale /= 3)
      if (g() & 1) x += 2 * scale;
    v = x;
  }
  return out;
}

json dimension_json(const std::string& label, const std::vector<double>& pts, std::size_t dim,
                    const BoxConfig& cfg = {}) {
  json j = {{"record", "dimension"}, {"set", label}, {"points", pts.size() / dim}, {"dim", dim}};
  try {
    DimensionEstimate e = box_dimension(pts, dim, cfg);
    j["value"] = e.value;
    j["raw_slope"] = e.raw_slope;
    j["scales"] = e.scales;
    j["counts"] = e.counts;
    j["fit_scales"] = e.fit_scales;
    j["fit_quality"] = e.fit_quality;
    j["warnings"] = e.warnings;
    j["note"] = e.note;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kEstimation) throw;
    j["value"] = nullptr;
    j["error"] = e.what();
  }
  return j;
}

std::vector<double> accepted_points(const ExperimentConfig& c, const RunOptions& o,
                                    std::size_t* tried);

void run_dimension(const ExperimentConfig& c, const RunOptions& o, ExperimentRecord& r) {
  const auto& dc = c.dimension;
  std::mt19937_64 g(c.seed);
  std::vector<json> lines;
  if (dc.source == "uniform") {
    std::vector<double> pts(2 * dc.points);
    for (auto& v : pts) v = unit_double(g);
    lines.push_back(dimension_json("uniform_square", pts, 2));
  } else if (dc.source == "cantor") {
    lines.push_back(dimension_json("cantor", cantor(dc.points, dc.depth, g), 1));
  } else if (dc.source == "product") {
    std::vector<double> base = cantor(dc.points, dc.depth, g);
    std::vector<double> fiber(dc.points), pts;
    for (auto& v : fiber) v = unit_double(g);
    for (std::size_t i = 0; i < dc.points; ++i) {
      pts.push_back(base[i]);
      pts.push_back(fiber[i]);
    }
    json b = dimension_json("cantor", base, 1);
    json f = dimension_json("uniform_interval", fiber, 1);
    json p = dimension_json("cantor_x_interval", pts, 2);
    if (!b["value"].is_null() && !f["value"].is_null()) {
      p["slicing_bound"] = slicing_bound(b["value"].get<double>(), f["value"].get<double>());
    }
    lines = {b, f, p};
  } else {
    std::size_t tried = 0;
    std::vector<double> pts = accepted_points(c, o, &tried);
    BoxConfig cfg;
    cfg.min_samples = 1;
    json j = dimension_json("accepted_certificates", pts, c.dim(), cfg);
    j["constructions"] = tried;
    lines.push_back(j);
  }
  std::string csv = "set,points,value\n";
  std::ostringstream sum;
  for (const auto& j : lines) {
    std::string v = j["value"].is_null() ? "" : csv_number(j["value"].get<double>());
    csv += j["set"].get<std::string>() + "," + std::to_string(j["points"].get<std::size_t>()) + "," +
           v + "\n";
    sum << j["set"].get<std::string>() << ": " << (v.empty() ? "unavailable" : v) << "\n";
  }
  r.outputs = {{"dimension.jsonl", jsonl(lines)}, {"summary.csv", csv}};
  r.summary = sum.str();
}

// --------------------------------------------------------------- construct

struct Built {
  std::optional<Certificate> cert;
  std::string error;
};

std::vector<Built> build_all(const ExperimentConfig& c, const RunOptions& o) {
  std::vector<Built> out(c.samples);
  parallel_for(c.samples, o.parallel, [&](std::size_t i) {
    try {
      out[i].cert = construct_point(c.construction(seed_at(c, i)));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kConstruction) throw;
      out[i].error = e.what();
    }
  });
  return out;
}

std::vector<double> accepted_points(const ExperimentConfig& c, const RunOptions& o,
                                    std::size_t* tried) {
  std::vector<double> pts;
  auto built = build_all(c, o);
  *tried = built.size();
  for (const auto& b : built)
    if (b.cert && b.cert->accepted)
      for (const auto& s : b.cert->x) pts.push_back(fixed_to_double(decimal_to_fixed(s, 64), 64));
  return pts;
}

void run_construct(const ExperimentConfig& c, const RunOptions& o, ExperimentRecord& r) {
  auto built = build_all(c, o);
  std::vector<json> lines;
  std::string csv = "seed,accepted,attempt,max_score,threshold,min_margin,delta_out,transcript\n";
  std::size_t accepted = 0;
  for (std::size_t i = 0; i < built.size(); ++i) {
    const std::uint64_t seed = seed_at(c, i);
    const Built& b = built[i];
    json j = {{"record", "construction"}, {"seed", seed}};
    if (!b.cert) {
      j["accepted"] = false;
      j["error"] = b.error;
      csv += std::to_string(seed) + ",false,,,,,,\n";
      lines.push_back(j);
      r.rejected = true;
      continue;
    }
    const Certificate& cert = *b.cert;
    double m = 1.0;
    for (const auto& tm : cert.margins) m = std::min(m, tm.margin);
    const std::string name = "certificates/certificate-" + std::to_string(seed) + ".jsonl";
    r.outputs.push_back({name, certificate_to_jsonl(cert)});
    if (!cert.transcript_hash.empty())
      r.outputs.push_back({"transcripts/" + cert.transcript_hash.substr(8) + ".jsonl",
                           transcript_to_jsonl(cert.transcript)});
    j["accepted"] = cert.accepted;
    j["attempt"] = cert.attempt;
    j["max_score"] = cert.equidistribution.max_score;
    j["threshold"] = cert.score_threshold;
    j["min_margin"] = m;
    j["delta_out"] = cert.delta_out;
    j["bits"] = cert.bits;
    j["certificate"] = name;
    j["transcript"] = cert.transcript_hash;
    j["flags"] = cert.flags;
    csv += std::to_string(seed) + "," + (cert.accepted ? "true" : "false") + "," +
           std::to_string(cert.attempt) + "," + csv_number(cert.equidistribution.max_score) + "," +
           csv_number(cert.score_threshold) + "," + csv_number(m) + "," +
           csv_number(cert.delta_out) + "," + cert.transcript_hash + "\n";
    lines.push_back(j);
    accepted += cert.accepted;
    r.rejected = r.rejected || !cert.accepted;
  }
  r.outputs.insert(r.outputs.begin(), {{"construct.jsonl", jsonl(lines)}, {"summary.csv", csv}});
  r.summary = std::to_string(accepted) + "/" + std::to_string(built.size()) +
              " certificates accepted (finite-horizon evidence only)\n";
}

// ------------------------------------------------------------------ verify

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, "cannot read '" + p.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void run_verify(const ExperimentConfig& c, const RunOptions& o, ExperimentRecord& r) {
  fs::path p(c.certificate);
  if (p.is_relative() && !o.base_dir.empty()) p = fs::path(o.base_dir) / p;
  Certificate cert = certificate_from_jsonl(read_file(p));
  VerificationReport v = verify_certificate(cert, c.construction(c.seed));
  json j = {{"record", "verification"},
            {"certificate", fs::path(c.certificate).filename().string()},
            {"decomposition_ok", v.decomposition_ok},
            {"rebuild_ok", v.rebuild_ok},
            {"equidistribution_ok", v.equidistribution_ok},
            {"avoidance_ok", v.avoidance_ok},
            {"max_score", v.max_score},
            {"margins", v.margins},
            {"bits", v.bits},
            {"passed", v.passed()}};
  std::string csv = "check,pass\n";
  for (const char* k : {"decomposition_ok", "rebuild_ok", "equidistribution_ok", "avoidance_ok"})
    csv += std::string(k) + "," + (j[k].get<bool>() ? "true" : "false") + "\n";
  r.outputs = {{"verify.jsonl", jsonl({j})}, {"summary.csv", csv}};
  r.rejected = !v.passed();
  r.summary = std::string("certificate ") + (v.passed() ? "verified" : "rejected") + " at " +
              std::to_string(v.bits) + " bits\n";
}

// ------------------------------------------------------------------ report

void run_report(const RunOptions& o, ExperimentRecord& r) {
  require(!o.out_dir.empty(), ErrorKind::kValidation, "--out: report needs an output directory");
  fs::path root(o.out_dir);
  std::ostringstream rep;
  for (const auto& cmd : commands()) {
    if (cmd == "report") continue;
    fs::path rec = root / cmd / "record.json";
    if (!fs::exists(rec)) continue;
    json j = json::parse(read_file(rec));
    rep << "== " << cmd << " (" << j.value("id", "") << ", seed " << j.value("seed", 0) << ")\n";
    rep << j.value("summary", "");
    fs::path csv = root / cmd / "summary.csv";
    if (fs::exists(csv)) rep << read_file(csv);
    rep << "\n";
  }
  if (rep.str().empty()) fail(ErrorKind::kIo, "no experiment records under '" + o.out_dir + "'");
  r.outputs = {{"report.txt", rep.str()}};
  r.summary = rep.str();
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> c = {"classify", "game",      "equidist", "entropy",
                                             "dimension", "construct", "verify",   "report"};
  return c;
}

ExperimentRecord run(std::string_view command, ExperimentConfig cfg, const RunOptions& opts) {
  if (opts.seed) cfg.seed = *opts.seed;
  if (opts.precision) cfg.precision = *opts.precision;
  validate_for(cfg, command);
  ExperimentRecord r;
  r.id = cfg.id;
  r.command = std::string(command);
  r.config_text = to_text(cfg);
  r.seed = cfg.seed;
  auto t0 = std::chrono::steady_clock::now();
  if (command == "classify") run_classify(cfg, r);
  else if (command == "game") run_game(cfg, opts, r);
  else if (command == "equidist") run_equidist(cfg, opts, r);
  else if (command == "entropy") run_entropy(cfg, opts, r);
  else if (command == "dimension") run_dimension(cfg, opts, r);
  else if (command == "construct") run_construct(cfg, opts, r);
  else if (command == "verify") run_verify(cfg, opts, r);
  else run_report(opts, r);
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

ExperimentRecord run_file(std::string_view command, const std::string& config_path,
                          RunOptions opts) {
  if (command == "report" && config_path.empty()) return run(command, ExperimentConfig{}, opts);
  ExperimentConfig cfg = load_config(config_path);
  if (opts.base_dir.empty()) opts.base_dir = fs::path(config_path).parent_path().string();
  return run(command, std::move(cfg), opts);
}

std::string record_to_json(const ExperimentRecord& r) {
  json outs = json::array();
  for (const auto& f : r.outputs)
    outs.push_back({{"name", f.name}, {"bytes", f.content.size()}, {"hash", "fnv1a64:" + fnv1a64_hex(f.content)}});
  json j = {{"id", r.id},
            {"command", r.command},
            {"seed", r.seed},
            {"version", r.version},
            {"status", r.rejected ? "rejected" : "ok"},
            {"config", r.config_text},
            {"outputs", outs},
            {"summary", r.summary},
            {"wall_time_s", r.wall_time}};
  return j.dump(2) + "\n";
}

void write_record(const ExperimentRecord& r, const std::string& dir) {
  fs::path base = fs::path(dir) / r.command;
  std::error_code ec;
  fs::create_directories(base, ec);
  if (ec) fail(ErrorKind::kIo, "cannot create '" + base.string() + "': " + ec.message());
  auto put = [&](const fs::path& p, const std::string& content) {
    fs::create_directories(p.parent_path(), ec);
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out << content;
    if (!out) fail(ErrorKind::kIo, "cannot write '" + p.string() + "'");
  };
  for (const auto& f : r.outputs) put(base / f.name, f.content);
  put(base / "config.toml", r.config_text);
  put(base / "record.json", record_to_json(r));
}

}  // namespace torlab
