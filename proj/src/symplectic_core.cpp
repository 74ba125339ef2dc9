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

#include "sympform/symplectic_core.hpp"

#include <cmath>
#include <random>
#include <string>

namespace sympform {

void Tolerances::validate() const {
  if (!(residual_tol > 0.0) || !(degeneracy_gap > 0.0) || !(psd_tol > 0.0)) {
    throw Error(ErrorKind::ParseError, "tolerances must be strictly positive");
  }
}

SymplecticForm symplectic_form(int n) {
  if (n < 1) throw Error(ErrorKind::DimensionError, "mode count must be >= 1");
  SymplecticForm form{n, Mat::Zero(2 * n, 2 * n)};
  form.matrix.topRightCorner(n, n) = -Mat::Identity(n, n);
  form.matrix.bottomLeftCorner(n, n) = Mat::Identity(n, n);
  return form;
}

void require_finite(const Mat& m, std::string_view what) {
  if (!m.allFinite()) {
    throw Error(ErrorKind::NonFinite, std::string(what) + " has non-finite entries");
  }
}

int require_even_square(const Mat& m, std::string_view what) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0 || m.rows() == 0) {
    throw Error(ErrorKind::DimensionError,
                std::string(what) + " must be square with even dimension, got " +
                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  require_finite(m, what);
  return static_cast<int>(m.rows() / 2);
}

void require_symmetric(const Mat& m, double rel_tol, std::string_view what) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::DimensionError, std::string(what) + " must be square");
  }
  const double asym = (m - m.transpose()).norm();
  if (asym > rel_tol * std::max(1.0, m.norm())) {
    throw Error(ErrorKind::NotSymmetric,
                std::string(what) + " is not symmetric (||M - M^T||_F = " + std::to_string(asym) + ")");
  }
}

double reciprocal_condition(const Mat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(m);
  const Vec& s = svd.singularValues();
  if (s(0) == 0.0) return 0.0;
  return s(s.size() - 1) / s(0);
}

SymplecticCheck is_symplectic(const Mat& S, const Tolerances& tol) {
  const int n = require_even_square(S, "S");
  const Mat sigma = symplectic_form(n).matrix;
  SymplecticCheck check;
  check.residual = (S * sigma * S.transpose() - sigma).norm();
  check.verdict = check.residual <= tol.residual_tol * std::max(1.0, S.squaredNorm());
  return check;
}

double symplectic_residual(const Mat& S) {
  return is_symplectic(S).residual / std::max(1.0, S.squaredNorm());
}

Mat gl_embed(const Mat& G) {
  if (G.rows() != G.cols() || G.rows() == 0) {
    throw Error(ErrorKind::DimensionError, "gl_embed expects a nonempty square matrix");
  }
  require_finite(G, "G");
  if (reciprocal_condition(G) < 1e-12) {
    throw Error(ErrorKind::SingularInput, "gl_embed: G is singular within tolerance");
  }
  return direct_sum(G.partialPivLu().inverse(), G.transpose());
}

Mat direct_sum(const Mat& A, const Mat& B) {
  Mat out = Mat::Zero(A.rows() + B.rows(), A.cols() + B.cols());
  out.topLeftCorner(A.rows(), A.cols()) = A;
  out.bottomRightCorner(B.rows(), B.cols()) = B;
  return out;
}

Mat lower_shear(const Mat& Z) {
  const Eigen::Index n = Z.rows();
  Mat L = Mat::Identity(2 * n, 2 * n);
  L.bottomLeftCorner(n, n) = Z;
  return L;
}

Mat symplectic_inverse(const Mat& S) {
  const int n = require_even_square(S, "S");
  const Mat sigma = symplectic_form(n).matrix;
  return -sigma * S.transpose() * sigma;
}

Mat random_symplectic(int n, std::uint64_t seed) {
  const Mat sigma = symplectic_form(n).matrix;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double scale = 0.5 / std::sqrt(static_cast<double>(n));

  auto near_identity = [&]() {
    Mat G = Mat::Identity(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) G(i, j) += scale * normal(rng);
    return G;
  };
  auto symmetric = [&]() {
    Mat Z(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) Z(i, j) = Z(j, i) = scale * normal(rng);
    return Z;
  };

  // gl_embed rejects near-singular draws; near_identity is redrawn until usable.
  auto embed = [&]() {
    for (;;) {
      Mat G = near_identity();
      if (reciprocal_condition(G) > 1e-3) return gl_embed(G);
    }
  };

  Mat S = embed();
  S = S * lower_shear(symmetric());
  S = S * sigma;
  S = S * lower_shear(symmetric());
  S = S * embed();
  return S;
}

}  // namespace sympform
