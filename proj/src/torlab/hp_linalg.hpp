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

// Dense linear algebra over HpReal, sized for the small dimensions of
// integer toral maps.

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

#include "torlab/hp.hpp"

namespace torlab {

class IntMatrix;
class ZMatrix;

class HpMatrix {
 public:
  HpMatrix(std::size_t rows, std::size_t cols, unsigned bits);
  static HpMatrix from_z(const ZMatrix& m, unsigned bits);
  static HpMatrix from_columns(const std::vector<HpVector>& cols, std::size_t rows, unsigned bits);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  unsigned bits() const { return bits_; }
  HpReal& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const HpReal& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

  HpMatrix operator*(const HpMatrix& o) const;
  HpVector operator*(const HpVector& v) const;
  HpVector column(std::size_t j) const;
  std::vector<HpVector> columns() const;
  Eigen::MatrixXd to_double() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  unsigned bits_;
  std::vector<HpReal> e_;
};

// Monic polynomial with the given roots; ascending complex coefficients.
std::vector<HpComplex> poly_from_roots(const std::vector<HpComplex>& roots, unsigned bits);
// Real parts of the above; roots must be closed under conjugation.
std::vector<HpReal> real_poly_from_roots(const std::vector<HpComplex>& roots, unsigned bits);
// p(M) for real coefficients (ascending).
HpMatrix evaluate_at(const std::vector<HpReal>& ascending, const IntMatrix& m, unsigned bits);

HpReal dot(const HpVector& a, const HpVector& b);
HpReal norm2(const HpVector& a);

struct GramSchmidtResult {
  std::vector<HpVector> basis;  // orthonormal
  // Residual norm of each accepted pivot and of the best rejected one,
  // relative to the largest input column norm.
  std::vector<double> pivots;
  double next_residual = 0.0;
};

// Column-pivoted Gram-Schmidt with one reorthogonalization pass; keeps at
// most max_rank vectors.
GramSchmidtResult pivoted_gram_schmidt(const std::vector<HpVector>& columns, std::size_t max_rank,
                                       unsigned bits);

Eigen::MatrixXd to_eigen(const std::vector<HpVector>& cols, std::size_t rows);
HpVector hp_vector(const std::vector<mpz_class>& v, unsigned bits);

}  // namespace torlab
