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

#include <Eigen/Dense>

#include "sympform/error.hpp"

namespace sympform {

/// Dense real matrix carrying X, S, Sigma, Gamma and Y throughout the library.
/// Phase-space vectors are ordered (P_1..P_n, Q_1..Q_n).
using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;

struct Tolerances {
  double residual_tol = 1e-8;
  /// Relative; multiplied by max(1, spectral radius) where used.
  double degeneracy_gap = 1e-6;
  double psd_tol = 1e-9;

  void validate() const;
};

/// The 2n x 2n form [[0, -1_n], [1_n, 0]].
struct SymplecticForm {
  int n = 0;
  Mat matrix;
};

SymplecticForm symplectic_form(int n);

struct SymplecticCheck {
  double residual = 0.0;  // ||S sigma S^T - sigma||_F
  bool verdict = false;
};

SymplecticCheck is_symplectic(const Mat& S, const Tolerances& tol = {});

/// ||S sigma S^T - sigma||_F / max(1, ||S||_F^2); the scale-free form used in reports.
double symplectic_residual(const Mat& S);

/// G^{-1} (+) G^T. Throws SingularInput when rcond(G) < 1e-12.
Mat gl_embed(const Mat& G);

Mat direct_sum(const Mat& A, const Mat& B);

/// Deterministic Sp(2n) sample built from GL embeddings, symmetric shears and sigma.
Mat random_symplectic(int n, std::uint64_t seed);

/// [[1, 0], [Z, 1]] for symmetric Z.
Mat lower_shear(const Mat& Z);

/// Exact inverse of a symplectic matrix, -sigma S^T sigma.
Mat symplectic_inverse(const Mat& S);

// Shape and value guards shared by every module.
void require_finite(const Mat& m, std::string_view what);
int require_even_square(const Mat& m, std::string_view what);
void require_symmetric(const Mat& m, double rel_tol, std::string_view what);

/// sigma_min / sigma_max from a full SVD; 0 for an empty or zero matrix.
double reciprocal_condition(const Mat& m);

}  // namespace sympform
