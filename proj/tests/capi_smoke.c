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

/* Plain C client: checks that the header compiles as C and that the
   shared library works without any C++ on the caller's side. */

#include <stdio.h>
#include <string.h>

#include "torlab/torlab.h"

#define EXPECT(cond)                                        \
  do {                                                      \
    if (!(cond)) {                                          \
      fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
      return 1;                                             \
    }                                                       \
  } while (0)

int main(void) {
  int64_t cat[4] = {2, 1, 1, 1};
  tl_matrix* m = NULL;
  tl_point* p = NULL;
  tl_point* q = NULL;
  const char* dec[2] = {"0.25", "0.5"};
  double x = 0;
  tl_classification c;
  int64_t bad[4] = {1, 1, 1, 1};

  EXPECT(tl_matrix_create(2, cat, &m) == TL_OK);
  EXPECT(tl_matrix_classify(m, &c) == TL_OK && c == TL_HYPERBOLIC);
  EXPECT(tl_point_parse(2, dec, 64, &p) == TL_OK);
  EXPECT(tl_point_apply(m, p, &q) == TL_OK);
  EXPECT(tl_point_coordinate(q, 0, &x) == TL_OK && x == 0.0);
  EXPECT(tl_point_coordinate(q, 1, &x) == TL_OK && x == 0.75);
  tl_point_free(q);
  tl_point_free(p);
  tl_matrix_free(m);

  m = NULL;
  EXPECT(tl_matrix_create(2, bad, &m) == TL_ERR_REJECTED_INPUT);
  EXPECT(m == NULL);
  EXPECT(strlen(tl_last_error()) > 0);
  printf("torlab %s C smoke ok\n", tl_version());
  return 0;
}
