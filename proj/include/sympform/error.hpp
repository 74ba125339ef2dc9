// Copyright 2026 The sympform Authors
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
#include <string_view>

namespace sympform {

enum class ErrorKind {
  DimensionError,
  NonFinite,
  SingularInput,
  DegenerateSpectrum,
  ClusteringAmbiguous,
  EigenFailure,
  NotSkewHamiltonian,
  IsotropicEigenspace,
  NoNonsingularFactor,
  NotPositiveDefinite,
  NotSymmetric,
  NotPure,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. `kind()` identifies the violated
/// precondition; callers that only care about the category should switch on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionError: return "DimensionError";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::SingularInput: return "SingularInput";
    case ErrorKind::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorKind::ClusteringAmbiguous: return "ClusteringAmbiguous";
    case ErrorKind::EigenFailure: return "EigenFailure";
    case ErrorKind::NotSkewHamiltonian: return "NotSkewHamiltonian";
    case ErrorKind::IsotropicEigenspace: return "IsotropicEigenspace";
    case ErrorKind::NoNonsingularFactor: return "NoNonsingularFactor";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::NotPure: return "NotPure";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace sympform
