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

#include "torlab/torlab.h"

#include <cmath>
#include <cstring>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "torlab/config.hpp"
#include "torlab/constructor.hpp"
#include "torlab/dimension.hpp"
#include "torlab/entropy.hpp"
#include "torlab/equidist.hpp"
#include "torlab/errors.hpp"
#include "torlab/lab.hpp"
#include "torlab/schmidt_game.hpp"
#include "torlab/spectral.hpp"
#include "torlab/strategies.hpp"
#include "torlab/torus.hpp"

struct tl_matrix {
  torlab::IntMatrix m;
};

struct tl_point {
  torlab::TorusPoint p;
  std::vector<std::string> decimals;  // filled on first request
};

struct tl_splitting {
  torlab::Splitting s;
};

struct tl_transcript {
  torlab::GameTranscript t;
  std::string jsonl;
};

struct tl_certificate {
  torlab::Certificate c;
  std::string jsonl;
};

struct tl_record {
  torlab::ExperimentRecord r;
  std::string json;
};

namespace {

thread_local std::string last_error;

tl_status status_of(torlab::ErrorKind k) {
  using torlab::ErrorKind;
  switch (k) {
    case ErrorKind::kRejectedInput:
      return TL_ERR_REJECTED_INPUT;
    case ErrorKind::kBudget:
      return TL_ERR_BUDGET;
    case ErrorKind::kClassification:
      return TL_ERR_CLASSIFICATION;
    case ErrorKind::kCertification:
      return TL_ERR_CERTIFICATION;
    case ErrorKind::kConfiguration:
      return TL_ERR_CONFIGURATION;
    case ErrorKind::kConstruction:
      return TL_ERR_CONSTRUCTION;
    case ErrorKind::kEstimation:
      return TL_ERR_ESTIMATION;
    case ErrorKind::kValidation:
      return TL_ERR_VALIDATION;
    case ErrorKind::kRejectedCertificate:
      return TL_ERR_REJECTED_CERTIFICATE;
    case ErrorKind::kIntegrity:
      return TL_ERR_INTEGRITY;
    case ErrorKind::kIo:
      return TL_ERR_IO;
  }
  return TL_ERR_INTERNAL;
}

tl_status set_error(tl_status s, const std::string& what) {
  last_error = what;
  return s;
}

template <class Fn>
tl_status guard(Fn fn) {
  try {
    fn();
    return TL_OK;
  } catch (const torlab::Error& e) {
    return set_error(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(TL_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(TL_ERR_INTERNAL, e.what());
  }
}

#define TL_REQUIRE(cond, msg) \
  if (!(cond)) return set_error(TL_ERR_INVALID_ARGUMENT, msg)

tl_classification to_c(torlab::Classification c) {
  switch (c) {
    case torlab::Classification::kHyperbolic:
      return TL_HYPERBOLIC;
    case torlab::Classification::kCentralSpin:
      return TL_QUASIHYPERBOLIC_CENTRAL_SPIN;
    case torlab::Classification::kJordan:
      return TL_QUASIHYPERBOLIC_JORDAN;
    case torlab::Classification::kNonergodic:
      return TL_NONERGODIC;
  }
  return TL_NONERGODIC;
}

const std::vector<torlab::HpVector>* subspace(const torlab::Splitting& s, tl_subspace which) {
  switch (which) {
    case TL_STABLE:
      return &s.stable;
    case TL_CENTRAL:
      return &s.central;
    case TL_UNSTABLE:
      return &s.unstable;
    case TL_CENTRAL_SEMISIMPLE:
      return &s.central_semisimple;
  }
  return nullptr;
}

torlab::RunOptions run_options(const tl_run_options* o) {
  torlab::RunOptions r;
  if (!o) return r;
  if (o->has_seed) r.seed = o->seed;
  if (o->precision) r.precision = o->precision;
  r.parallel = o->parallel ? o->parallel : 1;
  if (o->out_dir) r.out_dir = o->out_dir;
  return r;
}

}  // namespace

extern "C" {

const char* tl_version(void) { return torlab::kVersion; }

const char* tl_last_error(void) { return last_error.c_str(); }

const char* tl_status_name(tl_status s) {
  switch (s) {
    case TL_OK:
      return "ok";
    case TL_ERR_INVALID_ARGUMENT:
      return "invalid_argument";
    case TL_ERR_VALIDATION:
      return "validation";
    case TL_ERR_BUDGET:
      return "budget";
    case TL_ERR_REJECTED_CERTIFICATE:
      return "rejected_certificate";
    case TL_ERR_REJECTED_INPUT:
      return "rejected_input";
    case TL_ERR_CLASSIFICATION:
      return "classification";
    case TL_ERR_CERTIFICATION:
      return "certification";
    case TL_ERR_CONFIGURATION:
      return "configuration";
    case TL_ERR_CONSTRUCTION:
      return "construction";
    case TL_ERR_ESTIMATION:
      return "estimation";
    case TL_ERR_INTEGRITY:
      return "integrity";
    case TL_ERR_IO:
      return "io";
    case TL_ERR_INTERNAL:
      return "internal";
  }
  return "unknown";
}

const char* tl_classification_name(tl_classification c) {
  switch (c) {
    case TL_HYPERBOLIC:
      return to_string(torlab::Classification::kHyperbolic);
    case TL_QUASIHYPERBOLIC_CENTRAL_SPIN:
      return to_string(torlab::Classification::kCentralSpin);
    case TL_QUASIHYPERBOLIC_JORDAN:
      return to_string(torlab::Classification::kJordan);
    case TL_NONERGODIC:
      return to_string(torlab::Classification::kNonergodic);
  }
  return "unknown";
}

// ------------------------------------------------------------------ matrix

tl_status tl_matrix_create(size_t dim, const int64_t* entries, tl_matrix** out) {
  TL_REQUIRE(out && entries && dim > 0, "tl_matrix_create: null argument or zero dimension");
  *out = nullptr;
  return guard([&] {
    std::vector<std::int64_t> e(entries, entries + dim * dim);
    auto m = std::make_unique<tl_matrix>(tl_matrix{torlab::IntMatrix(dim, std::move(e))});
    torlab::require(m->m.determinant() != 0, torlab::ErrorKind::kValidation,
                    "matrix is singular");
    *out = m.release();
  });
}

void tl_matrix_free(tl_matrix* m) { delete m; }

size_t tl_matrix_dim(const tl_matrix* m) { return m ? m->m.dim() : 0; }

tl_status tl_matrix_entry(const tl_matrix* m, size_t row, size_t col, int64_t* out) {
  TL_REQUIRE(m && out, "tl_matrix_entry: null argument");
  TL_REQUIRE(row < m->m.dim() && col < m->m.dim(), "tl_matrix_entry: index out of range");
  *out = m->m.at(row, col);
  return TL_OK;
}

tl_status tl_matrix_classify(const tl_matrix* m, tl_classification* out) {
  TL_REQUIRE(m && out, "tl_matrix_classify: null argument");
  return guard([&] { *out = to_c(torlab::classify(m->m)); });
}

tl_status tl_matrix_is_ergodic(const tl_matrix* m, int* out) {
  TL_REQUIRE(m && out, "tl_matrix_is_ergodic: null argument");
  return guard([&] { *out = torlab::is_ergodic(m->m) ? 1 : 0; });
}

tl_status tl_required_precision(const tl_matrix* m, size_t steps, unsigned* out_bits) {
  TL_REQUIRE(m && out_bits, "tl_required_precision: null argument");
  return guard([&] { *out_bits = torlab::required_precision(m->m, steps); });
}

tl_status tl_entropy_spectrum(const tl_matrix* m, double* out) {
  TL_REQUIRE(m && out, "tl_entropy_spectrum: null argument");
  return guard([&] { *out = torlab::entropy_spectrum(m->m).value; });
}

// ------------------------------------------------------------------- point

tl_status tl_point_parse(size_t dim, const char* const* decimals, unsigned bits, tl_point** out) {
  TL_REQUIRE(out && decimals && dim > 0, "tl_point_parse: null argument or zero dimension");
  *out = nullptr;
  for (size_t i = 0; i < dim; ++i) TL_REQUIRE(decimals[i], "tl_point_parse: null coordinate");
  return guard([&] {
    std::vector<std::string> s(decimals, decimals + dim);
    *out = new tl_point{torlab::parse_point(s, bits), {}};
  });
}

tl_status tl_point_random(size_t dim, uint64_t seed, unsigned bits, tl_point** out) {
  TL_REQUIRE(out && dim > 0, "tl_point_random: null argument or zero dimension");
  *out = nullptr;
  return guard([&] {
    *out = new tl_point{torlab::random_point(dim, seed, std::min(bits, 512u), bits), {}};
  });
}

void tl_point_free(tl_point* p) { delete p; }

size_t tl_point_dim(const tl_point* p) { return p ? p->p.dim() : 0; }

unsigned tl_point_bits(const tl_point* p) { return p ? p->p.precision() : 0; }

tl_status tl_point_coordinate(const tl_point* p, size_t i, double* out) {
  TL_REQUIRE(p && out, "tl_point_coordinate: null argument");
  TL_REQUIRE(i < p->p.dim(), "tl_point_coordinate: index out of range");
  *out = p->p.coordinate(i);
  return TL_OK;
}

const char* tl_point_decimal(const tl_point* p, size_t i) {
  if (!p || i >= p->p.dim()) {
    set_error(TL_ERR_INVALID_ARGUMENT, "tl_point_decimal: bad argument");
    return nullptr;
  }
  auto* self = const_cast<tl_point*>(p);
  if (self->decimals.empty()) self->decimals = p->p.to_decimals();
  return self->decimals[i].c_str();
}

tl_status tl_point_apply(const tl_matrix* m, const tl_point* p, tl_point** out) {
  TL_REQUIRE(m && p && out, "tl_point_apply: null argument");
  *out = nullptr;
  TL_REQUIRE(m->m.dim() == p->p.dim(), "tl_point_apply: dimension mismatch");
  return guard([&] { *out = new tl_point{torlab::apply(m->m, p->p), {}}; });
}

tl_status tl_torus_distance(const tl_point* a, const tl_point* b, double* out) {
  TL_REQUIRE(a && b && out, "tl_torus_distance: null argument");
  TL_REQUIRE(a->p.dim() == b->p.dim(), "tl_torus_distance: dimension mismatch");
  return guard([&] {
    unsigned bits = std::max(a->p.precision(), b->p.precision());
    *out = torlab::torus_distance(a->p.with_precision(bits), b->p.with_precision(bits));
  });
}

// ------------------------------------------------------------- diagnostics

tl_status tl_equidistribution_score(const tl_point* x, const tl_matrix* m, size_t n_terms, int box,
                                    double* max_score) {
  TL_REQUIRE(x && m && max_score, "tl_equidistribution_score: null argument");
  return guard(
      [&] { *max_score = torlab::equidistribution_score(x->p, m->m, n_terms, box).max_score; });
}

tl_status tl_orbit_entropy(const tl_point* x, const tl_matrix* m, size_t n_terms, double* out) {
  TL_REQUIRE(x && m && out, "tl_orbit_entropy: null argument");
  return guard([&] { *out = torlab::orbit_closure_entropy(x->p, m->m, n_terms).value; });
}

tl_status tl_box_dimension(const double* samples, size_t n_points, size_t dim, double* out) {
  TL_REQUIRE(samples && out && dim > 0, "tl_box_dimension: null argument");
  return guard([&] {
    std::vector<double> s(samples, samples + n_points * dim);
    *out = torlab::box_dimension(s, dim).value;
  });
}

// --------------------------------------------------------------- splitting

tl_status tl_splitting_create(const tl_matrix* m, double tol, unsigned bits, tl_splitting** out) {
  TL_REQUIRE(m && out, "tl_splitting_create: null argument");
  *out = nullptr;
  return guard([&] {
    *out = new tl_splitting{torlab::splitting(m->m, tol > 0 ? tol : 1e-10, bits ? bits : 256)};
  });
}

void tl_splitting_free(tl_splitting* s) { delete s; }

tl_classification tl_splitting_classification(const tl_splitting* s) {
  return s ? to_c(s->s.classification) : TL_NONERGODIC;
}

size_t tl_splitting_dim(const tl_splitting* s, tl_subspace which) {
  if (!s) return 0;
  const auto* v = subspace(s->s, which);
  return v ? v->size() : 0;
}

tl_status tl_splitting_basis(const tl_splitting* s, tl_subspace which, size_t k, double* out) {
  TL_REQUIRE(s && out, "tl_splitting_basis: null argument");
  const auto* v = subspace(s->s, which);
  TL_REQUIRE(v && k < v->size(), "tl_splitting_basis: index out of range");
  for (size_t i = 0; i < s->s.dim; ++i) out[i] = static_cast<double>((*v)[k][i]);
  return TL_OK;
}

size_t tl_splitting_rotation_count(const tl_splitting* s) {
  return s ? s->s.rotation_angles.size() : 0;
}

double tl_splitting_rotation(const tl_splitting* s, size_t i) {
  if (!s || i >= s->s.rotation_angles.size()) return NAN;
  return s->s.rotation_angles[i];
}

// -------------------------------------------------------------------- game

tl_game_params tl_game_params_default(void) { return {0.5, 0.5, 0.25, 40, 200}; }

tl_status tl_game_avoid(const tl_matrix* m, const tl_point* const* targets, size_t n_targets,
                        const tl_game_params* params, tl_bob bob, uint64_t seed,
                        tl_transcript** out) {
  TL_REQUIRE(m && targets && n_targets > 0 && params && out, "tl_game_avoid: null argument");
  *out = nullptr;
  for (size_t i = 0; i < n_targets; ++i)
    TL_REQUIRE(targets[i] && targets[i]->p.dim() == m->m.dim(),
               "tl_game_avoid: target missing or of the wrong dimension");
  return guard([&] {
    using namespace torlab;
    const std::size_t d = m->m.dim();
    const unsigned bits = game_precision(params->alpha, params->beta, params->rho, params->rounds);
    AvoidConfig acfg;
    acfg.delta = params->rho * std::pow(params->alpha * params->beta, double(params->rounds)) / 4;
    acfg.max_time = params->horizon;
    Chart chart = Chart::identity(d, bits + 64);
    std::vector<StrategyPtr> avoiders;
    std::vector<TorusPoint> ys;
    for (size_t i = 0; i < n_targets; ++i) {
      ys.push_back(targets[i]->p.with_precision(bits + 64));
      avoiders.push_back(std::make_shared<AvoidStrategy>(m->m, ys.back(), chart, acfg));
    }
    StrategyPtr alice =
        avoiders.size() == 1 ? avoiders.front() : std::make_shared<RoundRobinStrategy>(avoiders);
    std::unique_ptr<Strategy> b;
    if (bob == TL_BOB_STATIONARY) b = std::make_unique<StationaryStrategy>();
    else if (bob == TL_BOB_GREEDY)
      b = std::make_unique<GreedyStrategy>(m->m, ys.front(), chart, acfg.c2, params->horizon,
                                           acfg.delta);
    else b = std::make_unique<RandomStrategy>(seed);
    GameParams p;
    p.alpha = params->alpha;
    p.beta = params->beta;
    p.rho = params->rho;
    p.space = {d, true};
    p.initial_center = random_point(d, seed, 64, bits).coords();
    *out = new tl_transcript{play(*alice, *b, p, params->rounds), {}};
  });
}

void tl_transcript_free(tl_transcript* t) { delete t; }

int tl_transcript_valid(const tl_transcript* t) { return t && t->t.valid ? 1 : 0; }

size_t tl_transcript_rounds(const tl_transcript* t) { return t ? t->t.rounds : 0; }

tl_status tl_transcript_limit(const tl_transcript* t, tl_point** out) {
  TL_REQUIRE(t && out, "tl_transcript_limit: null argument");
  *out = nullptr;
  return guard([&] { *out = new tl_point{torlab::limit_torus_point(t->t), {}}; });
}

const char* tl_transcript_jsonl(const tl_transcript* t) {
  if (!t) return nullptr;
  auto* self = const_cast<tl_transcript*>(t);
  if (self->jsonl.empty()) self->jsonl = torlab::transcript_to_jsonl(t->t);
  return self->jsonl.c_str();
}

tl_status tl_transcript_from_jsonl(const char* text, tl_transcript** out) {
  TL_REQUIRE(text && out, "tl_transcript_from_jsonl: null argument");
  *out = nullptr;
  return guard([&] { *out = new tl_transcript{torlab::transcript_from_jsonl(text), {}}; });
}

tl_status tl_transcript_replay(const tl_transcript* t, int* same) {
  TL_REQUIRE(t && same, "tl_transcript_replay: null argument");
  return guard([&] { *same = torlab::same_transcript(torlab::replay(t->t), t->t) ? 1 : 0; });
}

// ------------------------------------------------------------- certificate

tl_status tl_certificate_construct(const char* config_text, uint64_t seed, tl_certificate** out) {
  TL_REQUIRE(config_text && out, "tl_certificate_construct: null argument");
  *out = nullptr;
  return guard([&] {
    torlab::ExperimentConfig cfg = torlab::parse_config(config_text);
    torlab::validate_for(cfg, "construct");
    *out = new tl_certificate{torlab::construct_point(cfg.construction(seed)), {}};
  });
}

void tl_certificate_free(tl_certificate* c) { delete c; }

int tl_certificate_accepted(const tl_certificate* c) { return c && c->c.accepted ? 1 : 0; }

double tl_certificate_max_score(const tl_certificate* c) {
  return c ? c->c.equidistribution.max_score : NAN;
}

double tl_certificate_min_margin(const tl_certificate* c) {
  if (!c || c->c.margins.empty()) return NAN;
  double m = INFINITY;
  for (const auto& t : c->c.margins) m = std::min(m, t.margin);
  return m;
}

double tl_certificate_delta_out(const tl_certificate* c) { return c ? c->c.delta_out : NAN; }

const char* tl_certificate_jsonl(const tl_certificate* c) {
  if (!c) return nullptr;
  auto* self = const_cast<tl_certificate*>(c);
  if (self->jsonl.empty()) self->jsonl = torlab::certificate_to_jsonl(c->c);
  return self->jsonl.c_str();
}

tl_status tl_certificate_from_jsonl(const char* text, tl_certificate** out) {
  TL_REQUIRE(text && out, "tl_certificate_from_jsonl: null argument");
  *out = nullptr;
  return guard([&] { *out = new tl_certificate{torlab::certificate_from_jsonl(text), {}}; });
}

tl_status tl_certificate_verify(const tl_certificate* c, const char* config_text, int* passed) {
  TL_REQUIRE(c && config_text && passed, "tl_certificate_verify: null argument");
  return guard([&] {
    torlab::ExperimentConfig cfg = torlab::parse_config(config_text);
    torlab::validate_for(cfg, "construct");
    *passed = torlab::verify_certificate(c->c, cfg.construction(cfg.seed)).passed() ? 1 : 0;
  });
}

// -------------------------------------------------------------------- runs

tl_run_options tl_run_options_default(void) { return {0, 0, 0, 1, nullptr}; }

tl_status tl_config_canonical(const char* config_text, char* buf, size_t cap, size_t* needed) {
  TL_REQUIRE(config_text, "tl_config_canonical: null argument");
  return guard([&] {
    std::string t = torlab::to_text(torlab::parse_config(config_text));
    if (needed) *needed = t.size() + 1;
    if (buf && cap) {
      size_t n = std::min(cap - 1, t.size());
      std::memcpy(buf, t.data(), n);
      buf[n] = '\0';
    }
  });
}

tl_status tl_run(const char* command, const char* config_path, const tl_run_options* options,
                 tl_record** out) {
  TL_REQUIRE(command && out, "tl_run: null argument");
  *out = nullptr;
  return guard([&] {
    *out = new tl_record{
        torlab::run_file(command, config_path ? config_path : "", run_options(options)), {}};
  });
}

tl_status tl_run_text(const char* command, const char* config_text, const tl_run_options* options,
                      tl_record** out) {
  TL_REQUIRE(command && config_text && out, "tl_run_text: null argument");
  *out = nullptr;
  return guard([&] {
    *out = new tl_record{
        torlab::run(command, torlab::parse_config(config_text), run_options(options)), {}};
  });
}

void tl_record_free(tl_record* r) { delete r; }

int tl_record_rejected(const tl_record* r) { return r && r->r.rejected ? 1 : 0; }

const char* tl_record_command(const tl_record* r) { return r ? r->r.command.c_str() : nullptr; }

const char* tl_record_summary(const tl_record* r) { return r ? r->r.summary.c_str() : nullptr; }

const char* tl_record_config(const tl_record* r) { return r ? r->r.config_text.c_str() : nullptr; }

const char* tl_record_json(const tl_record* r) {
  if (!r) return nullptr;
  auto* self = const_cast<tl_record*>(r);
  if (self->json.empty()) self->json = torlab::record_to_json(r->r);
  return self->json.c_str();
}

size_t tl_record_output_count(const tl_record* r) { return r ? r->r.outputs.size() : 0; }

const char* tl_record_output_name(const tl_record* r, size_t i) {
  return r && i < r->r.outputs.size() ? r->r.outputs[i].name.c_str() : nullptr;
}

const char* tl_record_output_content(const tl_record* r, size_t i) {
  return r && i < r->r.outputs.size() ? r->r.outputs[i].content.c_str() : nullptr;
}

tl_status tl_record_write(const tl_record* r, const char* dir) {
  TL_REQUIRE(r && dir, "tl_record_write: null argument");
  return guard([&] { torlab::write_record(r->r, dir); });
}

}  // extern "C"
