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

#include "torlab/hp_linalg.hpp"

#include <algorithm>

#include "torlab/errors.hpp"
#include "torlab/torus.hpp"

namespace torlab {

HpMatrix::HpMatrix(std::size_t rows, std::size_t cols, unsigned bits)
    : rows_(rows), cols_(cols), bits_(bits), e_(rows * cols, hp_zero(bits)) {}

HpMatrix HpMatrix::from_z(const ZMatrix& m, unsigned bits) {
  HpMatrix out(m.dim(), m.dim(), bits);
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) out.at(i, j) = hp_from_mpz(m.at(i, j), bits);
  return out;
}

HpMatrix HpMatrix::from_columns(const std::vector<HpVector>& cols, std::size_t rows,
                                unsigned bits) {
  HpMatrix out(rows, cols.size(), bits);
  for (std::size_t j = 0; j < cols.size(); ++j) {
    require(cols[j].size() == rows, ErrorKind::kRejectedInput, "column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) out.at(i, j) = cols[j][i];
  }
  return out;
}

HpMatrix HpMatrix::operator*(const HpMatrix& o) const {
  require(cols_ == o.rows_, ErrorKind::kRejectedInput, "matrix shape mismatch");
  HpMatrix out(rows_, o.cols_, std::max(bits_, o.bits_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      if (at(i, k) == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) out.at(i, j) += at(i, k) * o.at(k, j);
    }
  return out;
}

HpVector HpMatrix::operator*(const HpVector& v) const {
  require(cols_ == v.size(), ErrorKind::kRejectedInput, "matrix-vector shape mismatch");
  HpVector out(rows_, hp_zero(bits_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) out[i] += at(i, k) * v[k];
  return out;
}

HpVector HpMatrix::column(std::size_t j) const {
  HpVector out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(at(i, j));
  return out;
}

std::vector<HpVector> HpMatrix::columns() const {
  std::vector<HpVector> out;
  for (std::size_t j = 0; j < cols_; ++j) out.push_back(column(j));
  return out;
}

Eigen::MatrixXd HpMatrix::to_double() const {
  Eigen::MatrixXd out(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = at(i, j).convert_to<double>();
  return out;
}

std::vector<HpComplex> poly_from_roots(const std::vector<HpComplex>& roots, unsigned bits) {
  std::vector<HpComplex> poly{{hp(1.0, bits), hp_zero(bits)}};
  for (const auto& z : roots) {
    std::vector<HpComplex> next(poly.size() + 1, {hp_zero(bits), hp_zero(bits)});
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] = next[i + 1] + poly[i];
      next[i] = next[i] - poly[i] * z;
    }
    poly = std::move(next);
  }
  return poly;
}

std::vector<HpReal> real_poly_from_roots(const std::vector<HpComplex>& roots, unsigned bits) {
  std::vector<HpReal> out;
  for (const auto& c : poly_from_roots(roots, bits)) out.push_back(c.re);
  return out;
}

HpMatrix evaluate_at(const std::vector<HpReal>& ascending, const IntMatrix& m, unsigned bits) {
  const std::size_t d = m.dim();
  HpMatrix a = HpMatrix::from_z(ZMatrix(m), bits);
  HpMatrix acc(d, d, bits);
  for (std::size_t i = ascending.size(); i-- > 0;) {
    acc = acc * a;
    for (std::size_t k = 0; k < d; ++k) acc.at(k, k) += ascending[i];
  }
  return acc;
}

HpReal dot(const HpVector& a, const HpVector& b) {
  require(a.size() == b.size(), ErrorKind::kRejectedInput, "vector length mismatch");
  if (a.empty()) return HpReal(0);
  HpReal acc = a[0] * b[0];
  for (std::size_t i = 1; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

HpReal norm2(const HpVector& a) { return sqrt(dot(a, a)); }

GramSchmidtResult pivoted_gram_schmidt(const std::vector<HpVector>& columns, std::size_t max_rank,
                                       unsigned bits) {
  GramSchmidtResult out;
  if (columns.empty()) return out;
  std::vector<HpVector> work = columns;
  HpReal scale = hp_zero(bits);
  for (const auto& c : work) {
    HpReal n = norm2(c);
    if (n > scale) scale = n;
  }
  if (scale == 0) return out;
  std::vector<bool> used(work.size(), false);
  while (true) {
    std::size_t best = work.size();
    HpReal best_norm = hp_zero(bits);
    for (std::size_t j = 0; j < work.size(); ++j) {
      if (used[j]) continue;
      HpReal n = norm2(work[j]);
      if (best == work.size() || n > best_norm) {
        best = j;
        best_norm = n;
      }
    }
    if (best == work.size()) {
      out.next_residual = 0.0;
      break;
    }
    double rel = HpReal(best_norm / scale).convert_to<double>();
    if (out.basis.size() == max_rank) {
      out.next_residual = rel;
      break;
    }
    used[best] = true;
    HpVector q = work[best];
    for (auto& x : q) x /= best_norm;
    // second pass against the existing basis
    for (const auto& b : out.basis) {
      HpReal c = dot(q, b);
      for (std::size_t i = 0; i < q.size(); ++i) q[i] -= c * b[i];
    }
    HpReal qn = norm2(q);
    for (auto& x : q) x /= qn;
    for (std::size_t j = 0; j < work.size(); ++j) {
      if (used[j]) continue;
      HpReal c = dot(work[j], q);
      for (std::size_t i = 0; i < q.size(); ++i) work[j][i] -= c * q[i];
    }
    out.basis.push_back(std::move(q));
    out.pivots.push_back(rel);
  }
  return out;
}

Eigen::MatrixXd to_eigen(const std::vector<HpVector>& cols, std::size_t rows) {
  Eigen::MatrixXd out(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i) out(i, j) = cols[j][i].convert_to<double>();
  return out;
}

HpVector hp_vector(const std::vector<mpz_class>& v, unsigned bits) {
  HpVector out;
  for (const auto& x : v) out.push_back(hp_from_mpz(x, bits));
  return out;
}

}  // namespace torlab
