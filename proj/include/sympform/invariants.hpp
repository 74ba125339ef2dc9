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

#include <array>
#include <complex>
#include <vector>

#include "sympform/symplectic_core.hpp"

namespace sympform {

enum class InvariantKind { Real, ComplexPair };

/// One symplectic-equivalence invariant. A ComplexPair stands for the conjugate
/// pair re +/- i im and occupies two of the n invariant slots.
struct Invariant {
  double re = 0.0;
  double im = 0.0;  // 0 for Real, > 0 for ComplexPair
  InvariantKind kind = InvariantKind::Real;

  int slots() const { return kind == InvariantKind::Real ? 1 : 2; }
  std::complex<double> value() const { return {re, im}; }
};

/// Descending re, ties broken by ascending im.
bool canonical_less(const Invariant& a, const Invariant& b);

struct InvariantSpectrum {
  int n = 0;
  std::vector<Invariant> values;  // canonical order; slots sum to n
  double pairing_residual = 0.0;  // worst within-double gap / max(1, spectral_radius)
  double spectral_radius = 0.0;   // of Sigma(X)
  bool has_zero = false;          // singular X; canonical_form refuses these
  bool has_repeated = false;      // two entries closer than the degeneracy gap

  /// The n eigenvalues of J: each Real once, each ComplexPair as a +/- ib.
  std::vector<std::complex<double>> expanded() const;
};

/// Sigma(X) = X sigma X^T sigma^T.
Mat sigma_matrix(const Mat& X);

/// ||(Sigma sigma)^T + Sigma sigma||_F, zero for skew-Hamiltonian input.
double skew_hamiltonian_residual(const Mat& Sigma);

InvariantSpectrum invariants(const Mat& X, const Tolerances& tol = {});

/// Worst distance between two invariant multisets after greedy nearest matching,
/// relative to max(1, largest magnitude in either set).
double multiset_distance(const std::vector<std::complex<double>>& a,
                         const std::vector<std::complex<double>>& b);

namespace detail {

/// Doubles of Sigma's spectrum grouped into invariants, remembering which raw
/// eigenvalue indices produced each entry. `members[k]` lists the two indices of
/// the double (for a ComplexPair: the double with positive imaginary part).
struct PairedSpectrum {
  InvariantSpectrum spectrum;
  std::vector<std::array<int, 2>> members;
};

PairedSpectrum pair_eigenvalues(const CVec& eigenvalues, const Tolerances& tol);

}  // namespace detail

}  // namespace sympform
