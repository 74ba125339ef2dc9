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

#include <cstdint>
#include <vector>

#include "sympform/invariants.hpp"
#include "sympform/symplectic_core.hpp"

namespace sympform {

/// N = 1_n (+) J. Each Real block fills one diagonal slot of J with lambda; each
/// ComplexPair fills a 2x2 slot [[a, b], [-b, a]] with b > 0.
struct CanonicalBlocks {
  int n = 0;
  std::vector<Invariant> blocks;
  Mat assembled;

  std::vector<std::complex<double>> eigenvalues() const;
};

CanonicalBlocks assemble_blocks(int n, std::vector<Invariant> blocks);
CanonicalBlocks canonical_from_invariants(const InvariantSpectrum& spectrum);

/// S1 X S2 = N with S1, S2 symplectic. The factors are not unique; only N and the
/// residuals are meaningful.
struct Decomposition {
  Mat S1;
  Mat S2;
  CanonicalBlocks blocks;
  double recon_residual = 0.0;  // ||S1 X S2 - N||_F / (||S1|| ||X|| ||S2||)
  double s1_residual = 0.0;     // symplectic_residual(S1)
  double s2_residual = 0.0;
  double s_prime_residual = 0.0;  // symplecticity of the intermediate (SX)^{-1} W
};

Decomposition decompose(const Mat& X, const Tolerances& tol = {}, std::uint64_t seed = 0);

struct Verification {
  double recon = 0.0;
  double s1 = 0.0;
  double s2 = 0.0;
  double spectrum_match = 0.0;
  bool verdict = false;
};

/// Recomputes every residual of `d` against X from scratch, including a fresh
/// invariant computation.
Verification verify_decomposition(const Mat& X, const Decomposition& d, const Tolerances& tol = {});

struct WilliamsonResult {
  Mat S;
  std::vector<double> nu;           // descending, > 0
  std::vector<double> occupations;  // (nu - 1) / 2
  double residual = 0.0;            // ||S X S^T - diag(nu, nu)||_F / ||X||_F
};

/// S X S^T = diag(nu_1..nu_n, nu_1..nu_n) for symmetric positive definite X.
WilliamsonResult williamson(const Mat& X, const Tolerances& tol = {});

struct TwoSymmetricFactors {
  Mat A;  // symmetric, nonsingular
  Mat B;  // symmetric
  double residual = 0.0;  // ||AB - M||_F / ||M||_F
};

/// M = A B with A, B symmetric. Any symmetric nonsingular T intertwining
/// M^T T = T M gives A = T^{-1}, B = T M; T is drawn at random from the
/// null space of that linear map.
TwoSymmetricFactors factor_two_symmetric(const Mat& M, std::uint64_t seed = 0,
                                         const Tolerances& tol = {}, int max_draws = 64);

struct SkewHamiltonianBlocks {
  Mat S;  // symplectic
  Mat M;  // S Sigma S^{-1} = -(M (+) M^T)
  double residual = 0.0;  // ||S Sigma S^{-1} + (M (+) M^T)||_F
};

SkewHamiltonianBlocks block_diagonalize_skew_hamiltonian(const Mat& Sigma, const Tolerances& tol = {});

/// Real Jordan form of a diagonalizable K: G K G^{-1} = J with J block diagonal in
/// canonical order. `G_inv` holds the real eigenbasis columns.
struct RealJordan {
  Mat G;
  Mat G_inv;
  std::vector<Invariant> blocks;
};

RealJordan real_jordan(const Mat& K, const Tolerances& tol = {});

}  // namespace sympform
