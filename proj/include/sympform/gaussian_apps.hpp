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

#include "sympform/canonical_form.hpp"
#include "sympform/invariants.hpp"
#include "sympform/symplectic_core.hpp"

namespace sympform {

/// Covariance matrix of n + n modes split between two parties. Layout is
/// party-major, (P, Q)-ordered within each party, so the global form is
/// sigma_n (+) sigma_n. Vacuum is the identity.
struct BipartiteCovariance {
  int n = 0;
  Mat gamma_a;
  Mat gamma_b;
  Mat x;  // correlation block

  Mat assembled() const;
  static BipartiteCovariance split(const Mat& gamma);
};

/// sigma_n (+) sigma_n.
Mat party_major_form(int n);

/// Permutation P with P * gamma_party_major * P^T in the global
/// (P_A, P_B, Q_A, Q_B) ordering used by sigma_{2n}.
Mat party_major_to_global(int n);

/// Two-mode squeezed vacuum with squeezing r: Gamma_A = Gamma_B = cosh(2r) 1,
/// X = sinh(2r) diag(1, -1).
BipartiteCovariance two_mode_squeezed(double r);

/// Gamma -> X^T Gamma X + Y, subject to Y + i(X^T sigma X - sigma) >= 0.
struct GaussianChannel {
  int n = 0;
  Mat x;
  Mat y;
  double validity_residual = 0.0;  // minimal Hermitian eigenvalue of the constraint
};

GaussianChannel make_channel(const Mat& x, const Mat& y, const Tolerances& tol = {});

struct ValidityReport {
  double min_eig = 0.0;
  bool valid = false;
};

/// Minimal eigenvalue of the Hermitian matrix A + iB (A symmetric, B antisymmetric),
/// computed through the real embedding [[A, -B], [B, A]].
double hermitian_min_eigenvalue(const Mat& A, const Mat& B);

/// Gamma + i sigma >= 0 with the global sigma_n.
ValidityReport state_validity(const Mat& gamma, const Tolerances& tol = {});
/// Same check in the party-major layout.
ValidityReport state_validity(const BipartiteCovariance& g, const Tolerances& tol = {});

ValidityReport channel_validity(const GaussianChannel& ch, const Tolerances& tol = {});

Mat apply_channel(const Mat& gamma, const GaussianChannel& ch);

struct CondensedCorrelations {
  Mat s_a;
  Mat s_b;
  BipartiteCovariance g_out;
  CanonicalBlocks blocks;
};

/// Local symplectics S_A, S_B bringing the correlation block to 1 (+) J.
CondensedCorrelations condense_correlations(const BipartiteCovariance& g, const Tolerances& tol = {},
                                            std::uint64_t seed = 0);

struct SchmidtCheck {
  std::vector<double> nu_local;  // descending
  std::vector<double> lambda;    // ascending, so sqrt(1 - lambda) pairs with nu_local
  double max_relative_error = 0.0;
};

/// For pure states the local normal-mode frequencies of party A satisfy
/// nu_k = sqrt(1 - lambda_k) with the correlation invariants lambda_k <= 0.
SchmidtCheck schmidt_relation_check(const BipartiteCovariance& g, const Tolerances& tol = {});

struct NormalizedChannel {
  Mat s1;
  Mat s2;
  GaussianChannel ch_out;
  CanonicalBlocks blocks;
};

/// X, Y -> S1 X S2, S2^T Y S2 with S1 X S2 canonical.
NormalizedChannel normalize_channel(const GaussianChannel& ch, const Tolerances& tol = {},
                                    std::uint64_t seed = 0);

/// X = [[c, d], [-d, c]], the interaction block of a number-preserving dilation.
struct PassiveInteraction {
  int n = 0;
  Mat c;
  Mat d;
  Mat x;
  Mat predicted_sigma;          // [[dd^T + cc^T, dc^T - cd^T], [cd^T - dc^T, dd^T + cc^T]]
  double sigma_residual = 0.0;  // ||predicted - sigma_matrix(x)||_F / max(1, ||sigma_matrix(x)||_F)
};

PassiveInteraction passive_interaction(const Mat& c, const Mat& d);

enum class WitnessVerdict { SqueezingWitnessed, Inconclusive };

struct WitnessReport {
  InvariantSpectrum spectrum;
  bool complex_found = false;
  WitnessVerdict verdict = WitnessVerdict::Inconclusive;
};

/// Complex invariants certify a squeezing system-environment interaction. Real
/// invariants certify nothing.
WitnessReport squeezing_witness(const Mat& x, const Tolerances& tol = {});

/// Channel obtained from a global symplectic on n system + env_modes environment
/// modes with the environment in vacuum. Passive (squeezing = false) dilations are
/// built from a random unitary C + iD.
GaussianChannel random_valid_channel(int n, int env_modes, bool squeezing, std::uint64_t seed);

}  // namespace sympform
