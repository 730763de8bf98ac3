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

// Eigenstructure of integer toral maps: exact ergodicity and unit-circle
// screening, the stable/central/unstable splitting, its semisimple central
// part, and complementary subspace pairs for two maps.

#include <Eigen/Dense>

#include <cstddef>
#include <string>
#include <vector>

#include "torlab/hp.hpp"
#include "torlab/polynomial.hpp"

namespace torlab {

class IntMatrix;

enum class Classification { kHyperbolic, kCentralSpin, kJordan, kNonergodic };
const char* to_string(Classification c);

struct FactorInfo {
  IntPolynomial polynomial;
  int multiplicity = 1;      // in the characteristic polynomial
  unsigned cyclotomic = 0;   // order k if the factor is a cyclotomic polynomial
  bool reciprocal = false;
  int unit_roots = 0;        // exact: Sturm count for reciprocal factors
  bool jordan = false;       // rank p(M) != rank p(M)^2
  std::size_t eigenspace_copies = 0;  // dim ker p(M) / deg p
};

struct Eigenvalue {
  HpComplex value;
  int multiplicity = 1;
  std::size_t factor = 0;  // index into Spectrum::factors
  bool unit = false;       // exact decision
};

struct Spectrum {
  IntPolynomial characteristic;
  std::vector<FactorInfo> factors;
  std::vector<Eigenvalue> eigenvalues;  // one entry per distinct root
  unsigned bits = 0;
};

// Exact factorization, unit-circle certification and high-precision roots.
// Does not require ergodicity.
Spectrum spectrum(const IntMatrix& m, unsigned bits = 256, double tol = 1e-10);

bool is_ergodic(const IntMatrix& m);

struct Splitting {
  std::size_t dim = 0;
  unsigned bits = 0;
  double tol = 1e-10;
  Classification classification = Classification::kHyperbolic;
  // Orthonormal bases at `bits` precision.
  std::vector<HpVector> stable;
  std::vector<HpVector> central;
  std::vector<HpVector> unstable;
  std::vector<HpVector> central_semisimple;
  // One angle in [0,1) per rotation block of the semisimple central part.
  std::vector<double> rotation_angles;
  Spectrum spectrum;

  Eigen::MatrixXd stable_d() const;
  Eigen::MatrixXd central_d() const;
  Eigen::MatrixXd unstable_d() const;
  Eigen::MatrixXd central_semisimple_d() const;
};

// Classification without requiring ergodicity.
Classification classify(const IntMatrix& m);

Splitting splitting(const IntMatrix& m, double tol = 1e-10, unsigned bits = 256);

// Angles of the rotation blocks; throws for the Jordan case.
std::vector<double> rotation_vector(const Splitting& sp);

struct SpanCheck {
  bool spans = false;
  std::size_t rank = 0;
  std::string warning;  // nonempty if a stable space is trivial
};

SpanCheck span_condition(const Splitting& s, const Splitting& t);

struct ComplementPair {
  std::size_t dim = 0;
  unsigned bits = 0;
  std::vector<HpVector> s_basis;
  std::vector<HpVector> t_basis;
  Eigen::MatrixXd proj_s;
  Eigen::MatrixXd proj_t;
  double condition_number = 0.0;
};

ComplementPair choose_complements(const Splitting& s, const Splitting& t);

}  // namespace torlab
