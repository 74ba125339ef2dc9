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

#include <cmath>

#include "sympform/canonical_form.hpp"

namespace sympform {

WilliamsonResult williamson(const Mat& X, const Tolerances& tol) {
  tol.validate();
  const int n = require_even_square(X, "X");
  require_symmetric(X, 1e-10, "X");
  const Mat Xs = 0.5 * (X + X.transpose());

  Eigen::SelfAdjointEigenSolver<Mat> spd(Xs);
  if (spd.info() != Eigen::Success) throw Error(ErrorKind::EigenFailure, "eigensolver failed on X");
  if (spd.eigenvalues().minCoeff() <= tol.psd_tol * Xs.norm()) {
    throw Error(ErrorKind::NotPositiveDefinite, "X is not strictly positive definite");
  }
  const Mat inv_sqrt =
      spd.eigenvectors() * spd.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() * spd.eigenvectors().transpose();

  // K = X^{-1/2} sigma X^{-1/2} is antisymmetric with spectrum +/- i/nu_k.
  const Mat sigma = symplectic_form(n).matrix;
  const Mat K = inv_sqrt * sigma * inv_sqrt;
  const CMat H = std::complex<double>(0.0, 1.0) * K.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<CMat> herm(H);
  if (herm.info() != Eigen::Success) throw Error(ErrorKind::EigenFailure, "eigensolver failed on iK");

  // Positive eigenvalues omega of iK, ascending, so nu = 1/omega descends. For
  // eigenvector z, y = conj(z) = p + iq satisfies K p = -omega q, K q = omega p.
  const auto dim = static_cast<Eigen::Index>(2 * n);
  Mat O(dim, dim);
  Vec nu(n);
  for (int k = 0; k < n; ++k) {
    const Eigen::Index idx = n + k;
    const double w = herm.eigenvalues()(idx);
    const CVec y = herm.eigenvectors().col(idx).conjugate();
    O.col(k) = std::sqrt(2.0) * y.imag();
    O.col(n + k) = std::sqrt(2.0) * y.real();
    nu(k) = 1.0 / w;
  }

  WilliamsonResult out;
  Vec scale(dim);
  scale << nu.cwiseSqrt(), nu.cwiseSqrt();
  out.S = scale.asDiagonal() * O.transpose() * inv_sqrt;
  Vec doubled(dim);
  doubled << nu, nu;
  out.residual = (out.S * Xs * out.S.transpose() - Mat(doubled.asDiagonal())).norm() / Xs.norm();
  for (int k = 0; k < n; ++k) {
    out.nu.push_back(nu(k));
    out.occupations.push_back(0.5 * (nu(k) - 1.0));
  }
  return out;
}

}  // namespace sympform
