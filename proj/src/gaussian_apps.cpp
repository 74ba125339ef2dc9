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

#include "sympform/gaussian_apps.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace sympform {
namespace {

void require_same_shape(const Mat& a, const Mat& b, std::string_view what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::DimensionError, std::string(what) + ": shape mismatch");
  }
}

Mat select(const Mat& m, const std::vector<Eigen::Index>& rows, const std::vector<Eigen::Index>& cols) {
  Mat out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out(Eigen::Index(i), Eigen::Index(j)) = m(rows[i], cols[j]);
  return out;
}

ValidityReport validity(const Mat& symmetric, const Mat& antisymmetric, double scale, const Tolerances& tol) {
  ValidityReport r;
  r.min_eig = hermitian_min_eigenvalue(symmetric, antisymmetric);
  r.valid = r.min_eig >= -tol.psd_tol * scale;
  return r;
}

}  // namespace

Mat BipartiteCovariance::assembled() const {
  const Eigen::Index m = 2 * n;
  Mat g(2 * m, 2 * m);
  g << gamma_a, x, x.transpose(), gamma_b;
  return g;
}

BipartiteCovariance BipartiteCovariance::split(const Mat& gamma) {
  if (gamma.rows() != gamma.cols() || gamma.rows() % 4 != 0 || gamma.rows() == 0) {
    throw Error(ErrorKind::DimensionError, "bipartite covariance must be 4n x 4n");
  }
  require_finite(gamma, "Gamma");
  const Eigen::Index m = gamma.rows() / 2;
  BipartiteCovariance g;
  g.n = static_cast<int>(m / 2);
  g.gamma_a = gamma.topLeftCorner(m, m);
  g.gamma_b = gamma.bottomRightCorner(m, m);
  g.x = gamma.topRightCorner(m, m);
  return g;
}

Mat party_major_form(int n) {
  const Mat s = symplectic_form(n).matrix;
  return direct_sum(s, s);
}

Mat party_major_to_global(int n) {
  // Party-major index: A:(P 0..n-1, Q n..2n-1), B:(P 2n..3n-1, Q 3n..4n-1).
  // Global index:      P_A 0..n-1, P_B n..2n-1, Q_A 2n..3n-1, Q_B 3n..4n-1.
  Mat P = Mat::Zero(4 * n, 4 * n);
  for (int k = 0; k < n; ++k) {
    P(k, k) = 1.0;
    P(n + k, 2 * n + k) = 1.0;
    P(2 * n + k, n + k) = 1.0;
    P(3 * n + k, 3 * n + k) = 1.0;
  }
  return P;
}

BipartiteCovariance two_mode_squeezed(double r) {
  BipartiteCovariance g;
  g.n = 1;
  g.gamma_a = std::cosh(2.0 * r) * Mat::Identity(2, 2);
  g.gamma_b = g.gamma_a;
  g.x = Mat::Zero(2, 2);
  g.x(0, 0) = std::sinh(2.0 * r);
  g.x(1, 1) = -std::sinh(2.0 * r);
  return g;
}

double hermitian_min_eigenvalue(const Mat& A, const Mat& B) {
  const Eigen::Index m = A.rows();
  Mat embed(2 * m, 2 * m);
  embed << A, -B, B, A;
  Eigen::SelfAdjointEigenSolver<Mat> solver(embed, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::EigenFailure, "Hermitian eigensolve failed");
  return solver.eigenvalues()(0);
}

ValidityReport state_validity(const Mat& gamma, const Tolerances& tol) {
  const int n = require_even_square(gamma, "Gamma");
  require_symmetric(gamma, 1e-10, "Gamma");
  return validity(gamma, symplectic_form(n).matrix, std::max(1.0, gamma.norm()), tol);
}

ValidityReport state_validity(const BipartiteCovariance& g, const Tolerances& tol) {
  const Mat gamma = g.assembled();
  require_finite(gamma, "Gamma");
  require_symmetric(gamma, 1e-10, "Gamma");
  return validity(gamma, party_major_form(g.n), std::max(1.0, gamma.norm()), tol);
}

GaussianChannel make_channel(const Mat& x, const Mat& y, const Tolerances& tol) {
  GaussianChannel ch;
  ch.n = require_even_square(x, "X");
  require_same_shape(x, y, "channel");
  require_finite(y, "Y");
  ch.x = x;
  ch.y = y;
  ch.validity_residual = channel_validity(ch, tol).min_eig;
  return ch;
}

ValidityReport channel_validity(const GaussianChannel& ch, const Tolerances& tol) {
  const int n = require_even_square(ch.x, "X");
  require_same_shape(ch.x, ch.y, "channel");
  require_symmetric(ch.y, 1e-10, "Y");
  const Mat sigma = symplectic_form(n).matrix;
  const Mat twist = ch.x.transpose() * sigma * ch.x - sigma;
  const Mat antisym = 0.5 * (twist - twist.transpose());
  const double scale = std::max({1.0, ch.y.norm(), ch.x.squaredNorm()});
  return validity(0.5 * (ch.y + ch.y.transpose()), antisym, scale, tol);
}

Mat apply_channel(const Mat& gamma, const GaussianChannel& ch) {
  if (gamma.rows() != ch.x.rows() || gamma.cols() != ch.x.rows() || ch.x.rows() != ch.x.cols()) {
    throw Error(ErrorKind::DimensionError, "apply_channel: Gamma does not match the channel");
  }
  require_same_shape(ch.x, ch.y, "channel");
  return ch.x.transpose() * gamma * ch.x + ch.y;
}

CondensedCorrelations condense_correlations(const BipartiteCovariance& g, const Tolerances& tol,
                                            std::uint64_t seed) {
  if (g.n < 1) throw Error(ErrorKind::DimensionError, "bipartite covariance needs n >= 1");
  const Eigen::Index m = 2 * g.n;
  for (const Mat* block : {&g.gamma_a, &g.gamma_b, &g.x}) {
    if (block->rows() != m || block->cols() != m) {
      throw Error(ErrorKind::DimensionError, "bipartite blocks must be 2n x 2n");
    }
  }
  require_symmetric(g.gamma_a, 1e-10, "Gamma_A");
  require_symmetric(g.gamma_b, 1e-10, "Gamma_B");

  const Decomposition d = decompose(g.x, tol, seed);
  CondensedCorrelations out;
  out.s_a = d.S1;
  out.s_b = d.S2.transpose();
  const Mat local = direct_sum(out.s_a, out.s_b);
  out.g_out = BipartiteCovariance::split(local * g.assembled() * local.transpose());
  out.blocks = d.blocks;
  return out;
}

SchmidtCheck schmidt_relation_check(const BipartiteCovariance& g, const Tolerances& tol) {
  const Mat P = party_major_to_global(g.n);
  const WilliamsonResult global = williamson(P * g.assembled() * P.transpose(), tol);
  for (double nu : global.nu) {
    if (std::abs(nu - 1.0) > tol.degeneracy_gap * std::max(1.0, nu)) {
      throw Error(ErrorKind::NotPure, "global normal-mode frequency " + std::to_string(nu) + " != 1");
    }
  }
  if (reciprocal_condition(g.x) < 1e-12) throw Error(ErrorKind::SingularInput, "correlation block is singular");

  SchmidtCheck out;
  out.nu_local = williamson(g.gamma_a, tol).nu;
  const InvariantSpectrum spectrum = invariants(g.x, tol);
  for (const auto& v : spectrum.values) {
    if (v.kind != InvariantKind::Real) throw Error(ErrorKind::NotPure, "complex correlation invariant");
    if (v.re > tol.psd_tol) throw Error(ErrorKind::NotPure, "positive correlation invariant");
    out.lambda.push_back(v.re);
  }
  std::sort(out.lambda.begin(), out.lambda.end());
  for (std::size_t k = 0; k < out.nu_local.size(); ++k) {
    const double predicted = std::sqrt(1.0 - out.lambda[k]);
    out.max_relative_error =
        std::max(out.max_relative_error, std::abs(out.nu_local[k] - predicted) / out.nu_local[k]);
  }
  return out;
}

NormalizedChannel normalize_channel(const GaussianChannel& ch, const Tolerances& tol, std::uint64_t seed) {
  require_even_square(ch.x, "X");
  require_same_shape(ch.x, ch.y, "channel");
  require_symmetric(ch.y, 1e-10, "Y");
  const Decomposition d = decompose(ch.x, tol, seed);
  NormalizedChannel out;
  out.s1 = d.S1;
  out.s2 = d.S2;
  const Mat y = d.S2.transpose() * ch.y * d.S2;
  out.ch_out = make_channel(d.S1 * ch.x * d.S2, 0.5 * (y + y.transpose()), tol);
  out.blocks = d.blocks;
  return out;
}

PassiveInteraction passive_interaction(const Mat& c, const Mat& d) {
  if (c.rows() != c.cols() || c.rows() == 0) throw Error(ErrorKind::DimensionError, "c must be square");
  require_same_shape(c, d, "passive_interaction");
  require_finite(c, "c");
  require_finite(d, "d");
  PassiveInteraction p;
  p.n = static_cast<int>(c.rows());
  p.c = c;
  p.d = d;
  p.x.resize(2 * p.n, 2 * p.n);
  p.x << c, d, -d, c;
  const Mat diag = d * d.transpose() + c * c.transpose();
  const Mat off = d * c.transpose() - c * d.transpose();
  p.predicted_sigma.resize(2 * p.n, 2 * p.n);
  p.predicted_sigma << diag, off, -off, diag;
  const Mat direct = sigma_matrix(p.x);
  p.sigma_residual = (p.predicted_sigma - direct).norm() / std::max(1.0, direct.norm());
  return p;
}

WitnessReport squeezing_witness(const Mat& x, const Tolerances& tol) {
  WitnessReport r;
  r.spectrum = invariants(x, tol);
  r.complex_found = std::any_of(r.spectrum.values.begin(), r.spectrum.values.end(),
                                [](const Invariant& v) { return v.kind == InvariantKind::ComplexPair; });
  r.verdict = r.complex_found ? WitnessVerdict::SqueezingWitnessed : WitnessVerdict::Inconclusive;
  return r;
}

GaussianChannel random_valid_channel(int n, int env_modes, bool squeezing, std::uint64_t seed) {
  if (n < 1 || env_modes < 1) throw Error(ErrorKind::DimensionError, "need n >= 1 and env_modes >= 1");
  const int total = n + env_modes;
  Mat global;
  if (squeezing) {
    global = random_symplectic(total, seed);
  } else {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    CMat z(total, total);
    for (int i = 0; i < total; ++i)
      for (int j = 0; j < total; ++j) z(i, j) = {normal(rng), normal(rng)};
    Eigen::HouseholderQR<CMat> qr(z);
    const CMat U = qr.householderQ() * CMat::Identity(total, total);
    const Mat C = U.real();
    const Mat D = U.imag();
    global.resize(2 * total, 2 * total);
    global << C, D, -D, C;
  }

  std::vector<Eigen::Index> sys;
  std::vector<Eigen::Index> env;
  for (int k = 0; k < total; ++k) (k < n ? sys : env).push_back(k);
  for (int k = 0; k < total; ++k) (k < n ? sys : env).push_back(total + k);

  // Gamma_sys -> S_ss Gamma S_ss^T + S_se 1 S_se^T for a vacuum environment.
  const Mat s_ss = select(global, sys, sys);
  const Mat s_se = select(global, sys, env);
  const Mat y = s_se * s_se.transpose();
  return make_channel(s_ss.transpose(), 0.5 * (y + y.transpose()));
}

}  // namespace sympform
