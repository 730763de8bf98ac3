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

#include <stdexcept>
#include <string>

namespace torlab {

enum class ErrorKind {
  kRejectedInput,
  kBudget,
  kClassification,
  kCertification,
  kConfiguration,
  kConstruction,
  kEstimation,
  kValidation,
  kRejectedCertificate,
  kIntegrity,
  kIo,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Raised when a computation would need more bits than it was given.
class BudgetError : public Error {
 public:
  BudgetError(unsigned required_bits, const std::string& what)
      : Error(ErrorKind::kBudget, what), required_bits_(required_bits) {}
  unsigned required_bits() const { return required_bits_; }

 private:
  unsigned required_bits_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool ok, ErrorKind kind, const std::string& what) {
  if (!ok) fail(kind, what);
}

}  // namespace torlab
