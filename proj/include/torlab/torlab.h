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

#ifndef TORLAB_TORLAB_H
#define TORLAB_TORLAB_H

/* C interface to the toral dynamics laboratory. All objects are opaque
   handles released with the matching *_free call. Functions return a
   tl_status; on failure tl_last_error() holds a message for the calling
   thread until its next failing call. Strings returned as const char* are
   owned by the handle they came from. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(TORLAB_BUILDING_LIBRARY)
#    define TL_API __declspec(dllexport)
#  else
#    define TL_API __declspec(dllimport)
#  endif
#else
#  define TL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tl_status {
  TL_OK = 0,
  TL_ERR_INVALID_ARGUMENT = 1,
  TL_ERR_VALIDATION = 2,
  TL_ERR_BUDGET = 3,
  TL_ERR_REJECTED_CERTIFICATE = 4,
  TL_ERR_REJECTED_INPUT = 5,
  TL_ERR_CLASSIFICATION = 6,
  TL_ERR_CERTIFICATION = 7,
  TL_ERR_CONFIGURATION = 8,
  TL_ERR_CONSTRUCTION = 9,
  TL_ERR_ESTIMATION = 10,
  TL_ERR_INTEGRITY = 11,
  TL_ERR_IO = 12,
  TL_ERR_INTERNAL = 13
} tl_status;

typedef enum tl_classification {
  TL_HYPERBOLIC = 0,
  TL_QUASIHYPERBOLIC_CENTRAL_SPIN = 1,
  TL_QUASIHYPERBOLIC_JORDAN = 2,
  TL_NONERGODIC = 3
} tl_classification;

typedef enum tl_subspace {
  TL_STABLE = 0,
  TL_CENTRAL = 1,
  TL_UNSTABLE = 2,
  TL_CENTRAL_SEMISIMPLE = 3
} tl_subspace;

typedef enum tl_bob { TL_BOB_STATIONARY = 0, TL_BOB_RANDOM = 1, TL_BOB_GREEDY = 2 } tl_bob;

typedef struct tl_matrix tl_matrix;
typedef struct tl_point tl_point;
typedef struct tl_splitting tl_splitting;
typedef struct tl_transcript tl_transcript;
typedef struct tl_certificate tl_certificate;
typedef struct tl_record tl_record;

TL_API const char* tl_version(void);
TL_API const char* tl_last_error(void);
TL_API const char* tl_status_name(tl_status s);
TL_API const char* tl_classification_name(tl_classification c);

/* Matrices: row-major entries of a nonsingular dim x dim integer matrix. */
TL_API tl_status tl_matrix_create(size_t dim, const int64_t* entries, tl_matrix** out);
TL_API void tl_matrix_free(tl_matrix* m);
TL_API size_t tl_matrix_dim(const tl_matrix* m);
TL_API tl_status tl_matrix_entry(const tl_matrix* m, size_t row, size_t col, int64_t* out);
TL_API tl_status tl_matrix_classify(const tl_matrix* m, tl_classification* out);
TL_API tl_status tl_matrix_is_ergodic(const tl_matrix* m, int* out);
TL_API tl_status tl_required_precision(const tl_matrix* m, size_t steps, unsigned* out_bits);
TL_API tl_status tl_entropy_spectrum(const tl_matrix* m, double* out);

/* Torus points in fixed point at `bits` fractional bits. */
TL_API tl_status tl_point_parse(size_t dim, const char* const* decimals, unsigned bits,
                                tl_point** out);
TL_API tl_status tl_point_random(size_t dim, uint64_t seed, unsigned bits, tl_point** out);
TL_API void tl_point_free(tl_point* p);
TL_API size_t tl_point_dim(const tl_point* p);
TL_API unsigned tl_point_bits(const tl_point* p);
TL_API tl_status tl_point_coordinate(const tl_point* p, size_t i, double* out);
TL_API const char* tl_point_decimal(const tl_point* p, size_t i);
TL_API tl_status tl_point_apply(const tl_matrix* m, const tl_point* p, tl_point** out);
TL_API tl_status tl_torus_distance(const tl_point* a, const tl_point* b, double* out);

/* Diagnostics. */
TL_API tl_status tl_equidistribution_score(const tl_point* x, const tl_matrix* m, size_t n_terms,
                                           int box, double* max_score);
TL_API tl_status tl_orbit_entropy(const tl_point* x, const tl_matrix* m, size_t n_terms,
                                  double* out);
TL_API tl_status tl_box_dimension(const double* samples, size_t n_points, size_t dim,
                                  double* out);

/* Spectral splitting of an ergodic matrix. */
TL_API tl_status tl_splitting_create(const tl_matrix* m, double tol, unsigned bits,
                                     tl_splitting** out);
TL_API void tl_splitting_free(tl_splitting* s);
TL_API tl_classification tl_splitting_classification(const tl_splitting* s);
TL_API size_t tl_splitting_dim(const tl_splitting* s, tl_subspace which);
/* Copies basis vector k of the subspace (dim doubles) into out. */
TL_API tl_status tl_splitting_basis(const tl_splitting* s, tl_subspace which, size_t k,
                                    double* out);
TL_API size_t tl_splitting_rotation_count(const tl_splitting* s);
TL_API double tl_splitting_rotation(const tl_splitting* s, size_t i);

/* Avoidance game on the torus: Alice keeps the orbit of the limit point
   under m away from every target; Bob plays the chosen strategy. */
typedef struct tl_game_params {
  double alpha;
  double beta;
  double rho;
  size_t rounds;
  size_t horizon;
} tl_game_params;

TL_API tl_game_params tl_game_params_default(void);
TL_API tl_status tl_game_avoid(const tl_matrix* m, const tl_point* const* targets,
                               size_t n_targets, const tl_game_params* params, tl_bob bob,
                               uint64_t seed, tl_transcript** out);
TL_API void tl_transcript_free(tl_transcript* t);
TL_API int tl_transcript_valid(const tl_transcript* t);
TL_API size_t tl_transcript_rounds(const tl_transcript* t);
TL_API tl_status tl_transcript_limit(const tl_transcript* t, tl_point** out);
TL_API const char* tl_transcript_jsonl(const tl_transcript* t);
TL_API tl_status tl_transcript_from_jsonl(const char* text, tl_transcript** out);
/* Replays recorded moves through the game engine; *same = 1 if identical. */
TL_API tl_status tl_transcript_replay(const tl_transcript* t, int* same);

/* Certificates from an experiment configuration text. */
TL_API tl_status tl_certificate_construct(const char* config_text, uint64_t seed,
                                          tl_certificate** out);
TL_API void tl_certificate_free(tl_certificate* c);
TL_API int tl_certificate_accepted(const tl_certificate* c);
TL_API double tl_certificate_max_score(const tl_certificate* c);
TL_API double tl_certificate_min_margin(const tl_certificate* c);
TL_API double tl_certificate_delta_out(const tl_certificate* c);
TL_API const char* tl_certificate_jsonl(const tl_certificate* c);
TL_API tl_status tl_certificate_from_jsonl(const char* text, tl_certificate** out);
TL_API tl_status tl_certificate_verify(const tl_certificate* c, const char* config_text,
                                       int* passed);

/* Experiment runs. */
typedef struct tl_run_options {
  int has_seed;
  uint64_t seed;
  unsigned precision; /* 0: automatic */
  unsigned parallel;  /* 0 or 1: sequential */
  const char* out_dir; /* read by "report"; may be NULL */
} tl_run_options;

TL_API tl_run_options tl_run_options_default(void);
/* Canonical text of a configuration. Copies at most cap bytes including
   the terminator; *needed receives the full size. */
TL_API tl_status tl_config_canonical(const char* config_text, char* buf, size_t cap,
                                     size_t* needed);
TL_API tl_status tl_run(const char* command, const char* config_path,
                        const tl_run_options* options, tl_record** out);
TL_API tl_status tl_run_text(const char* command, const char* config_text,
                             const tl_run_options* options, tl_record** out);
TL_API void tl_record_free(tl_record* r);
TL_API int tl_record_rejected(const tl_record* r);
TL_API const char* tl_record_command(const tl_record* r);
TL_API const char* tl_record_summary(const tl_record* r);
TL_API const char* tl_record_config(const tl_record* r);
TL_API const char* tl_record_json(const tl_record* r);
TL_API size_t tl_record_output_count(const tl_record* r);
TL_API const char* tl_record_output_name(const tl_record* r, size_t i);
TL_API const char* tl_record_output_content(const tl_record* r, size_t i);
TL_API tl_status tl_record_write(const tl_record* r, const char* dir);

#ifdef __cplusplus
}
#endif

#endif
