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

#include "torlab/errors.hpp"

namespace torlab {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kRejectedInput:
      return "rejected_input";
    case ErrorKind::kBudget:
      return "budget";
    case ErrorKind::kClassification:
      return "classification";
    case ErrorKind::kCertification:
      return "certification";
    case ErrorKind::kConfiguration:
      return "configuration";
    case ErrorKind::kConstruction:
      return "construction";
    case ErrorKind::kEstimation:
      return "estimation";
    case ErrorKind::kValidation:
      return "validation";
    case ErrorKind::kRejectedCertificate:
      return "rejected_certificate";
    case ErrorKind::kIntegrity:
      return "integrity";
    case ErrorKind::kIo:
      return "io";
  }
  return "unknown";
}

}  // namespace torlab
