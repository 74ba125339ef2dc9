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

#include "sympform/canonical_form.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace sympform {
namespace {

using Complex = std::complex<double>;

double omega(const Vec& u, const Vec& w, const Mat& sigma) { return u.dot(sigma * w); }

/// Flips v so that its largest-magnitude entry is positive.
void fix_sign(Vec& v) {
  Eigen::Index k = 0;
  v.cwiseAbs().maxCoeff(&k);
  if (v(k) < 0.0) v = -v;
}

/// Rotates the phase of z so that Re z and Im z are orthogonal, then fixes the sign
/// of the real part.
CVec orthogonal_phase(const CVec& z) {
  const Complex zz = z.transpose() * z;
  CVec out = z * std::polar(1.0, -0.5 * std::arg(zz));
  Vec re = out.real();
  Eigen::Index k = 0;
  re.cwiseAbs().maxCoeff(&k);
  if (re(k) < 0.0) out = -out;
  return out;
}

struct PhasePair {
  Vec u;
  Vec w;
};

/// Projects x onto the symplectic complement of the pair (u, w), where
/// omega(u, w) = -1.
void symplectic_project(Vec& x, const PhasePair& p, const Mat& sigma) {
  const double alpha = -omega(x, p.w, sigma);
  const double beta = omega(x, p.u, sigma);
  x -= alpha * p.u + beta * p.w;
}

void balance(PhasePair& p) {
  const double s = std::sqrt(p.w.norm() / p.u.norm());
  p.u *= s;
  p.w /= s;
}

/// Symplectic Gram-Schmidt with pivoting on an orthonormal basis of an invariant
/// subspace on which Sigma acts as a real scalar.
std::vector<PhasePair> symplectic_basis(const Mat& Q, const Mat& sigma) {
  std::vector<Vec> remaining;
  for (Eigen::Index c = 0; c < Q.cols(); ++c) remaining.emplace_back(Q.col(c));
  std::vector<PhasePair> pairs;
  while (!remaining.empty()) {
    Vec u = remaining.front();
    remaining.erase(remaining.begin());
    std::size_t best = 0;
    double best_val = -1.0;
    for (std::size_t j = 0; j < remaining.size(); ++j) {
      const double v = std::abs(omega(u, remaining[j], sigma)) / (u.norm() * remaining[j].norm());
      if (v > best_val) {
        best_val = v;
        best = j;
      }
    }
    if (remaining.empty() || best_val <= 1e-8) {
      throw Error(ErrorKind::IsotropicEigenspace, "symplectic form degenerates on an eigenspace of Sigma");
    }
    Vec w = remaining[best];
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
    w = -w / omega(u, w, sigma);
    PhasePair pair{u, w};
    balance(pair);
    for (auto& r : remaining) symplectic_project(r, pair, sigma);
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

/// Two steps of shifted subspace (inverse) iteration pull a computed eigenbasis onto
/// the invariant subspace of the eigenvalues nearest to `shift`.
template <typename Matrix>
Matrix refine_subspace(const Matrix& A, Matrix basis, typename Matrix::Scalar shift) {
  const Eigen::Index dim = A.rows();
  Eigen::PartialPivLU<Matrix> lu(A - shift * Matrix::Identity(dim, dim));
  for (int it = 0; it < 2; ++it) {
    Matrix next = lu.solve(basis);
    if (!next.allFinite()) break;
    Eigen::HouseholderQR<Matrix> qr(next);
    basis = qr.householderQ() * Matrix::Identity(dim, basis.cols());
  }
  return basis;
}

struct Cluster {
  Invariant value;
  std::vector<int> members;  // raw eigenvalue indices
  int slots = 0;
};

std::vector<Cluster> group_clusters(const detail::PairedSpectrum& paired, double threshold) {
  std::vector<Cluster> clusters;
  const auto& values = paired.spectrum.values;
  for (std::size_t k = 0; k < values.size(); ++k) {
    const Invariant& v = values[k];
    if (v.kind == InvariantKind::ComplexPair) {
      for (std::size_t j = 0; j < values.size(); ++j) {
        if (j != k && values[j].kind == InvariantKind::ComplexPair &&
            std::abs(values[j].value() - v.value()) <= threshold) {
          throw Error(ErrorKind::DegenerateSpectrum, "repeated complex invariant");
        }
      }
      clusters.push_back({v, {paired.members[k][0], paired.members[k][1]}, 2});
      continue;
    }
    auto it = std::find_if(clusters.begin(), clusters.end(), [&](const Cluster& c) {
      return c.value.kind == InvariantKind::Real && std::abs(c.value.re - v.re) <= threshold;
    });
    if (it == clusters.end()) {
      clusters.push_back({v, {paired.members[k][0], paired.members[k][1]}, 1});
    } else {
      it->members.push_back(paired.members[k][0]);
      it->members.push_back(paired.members[k][1]);
      it->slots += 1;
    }
  }
  return clusters;
}

// Each canonical block leaves a scaling freedom S1 -> D S1, S2 -> S2 D^{-1} with
// D = diag(a, 1/a) on the block's P and Q coordinates. Pick a per block so that
// ||S1||^2 + ||S2||^2 is minimal.
void balance_gauge(Mat& S1, Mat& S2, const std::vector<Invariant>& blocks, int n) {
  int offset = 0;
  for (const auto& b : blocks) {
    const int width = b.slots();
    double grow = 0.0;    // coefficient of a^2
    double shrink = 0.0;  // coefficient of a^-2
    for (int k = offset; k < offset + width; ++k) {
      grow += S1.row(k).squaredNorm() + S2.col(n + k).squaredNorm();
      shrink += S1.row(n + k).squaredNorm() + S2.col(k).squaredNorm();
    }
    if (grow > 0.0 && shrink > 0.0) {
      const double a = std::pow(shrink / grow, 0.25);
      for (int k = offset; k < offset + width; ++k) {
        S1.row(k) *= a;
        S1.row(n + k) /= a;
        S2.col(k) /= a;
        S2.col(n + k) *= a;
      }
    }
    offset += width;
  }
}

}  // namespace

std::vector<std::complex<double>> CanonicalBlocks::eigenvalues() const {
  std::vector<std::complex<double>> out;
  for (const auto& b : blocks) {
    out.emplace_back(b.re, b.im);
    if (b.kind == InvariantKind::ComplexPair) out.emplace_back(b.re, -b.im);
  }
  return out;
}

CanonicalBlocks assemble_blocks(int n, std::vector<Invariant> blocks) {
  Mat J = Mat::Zero(n, n);
  int slot = 0;
  for (const auto& b : blocks) {
    if (slot + b.slots() > n) throw Error(ErrorKind::DimensionError, "canonical blocks overflow n slots");
    if (b.kind == InvariantKind::Real) {
      J(slot, slot) = b.re;
    } else {
      J(slot, slot) = b.re;
      J(slot, slot + 1) = b.im;
      J(slot + 1, slot) = -b.im;
      J(slot + 1, slot + 1) = b.re;
    }
    slot += b.slots();
  }
  if (slot != n) throw Error(ErrorKind::DimensionError, "canonical blocks do not fill n slots");
  return {n, std::move(blocks), direct_sum(Mat::Identity(n, n), J)};
}

CanonicalBlocks canonical_from_invariants(const InvariantSpectrum& spectrum) {
  return assemble_blocks(spectrum.n, spectrum.values);
}

SkewHamiltonianBlocks block_diagonalize_skew_hamiltonian(const Mat& Sigma, const Tolerances& tol) {
  const int n = require_even_square(Sigma, "Sigma");
  const Mat sigma = symplectic_form(n).matrix;
  if (skew_hamiltonian_residual(Sigma) > 1e-10 * std::max(1.0, Sigma.norm())) {
    throw Error(ErrorKind::NotSkewHamiltonian, "(Sigma sigma)^T != -(Sigma sigma)");
  }

  Eigen::EigenSolver<Mat> solver(Sigma, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::EigenFailure, "eigensolver did not converge on Sigma");
  }
  const auto paired = detail::pair_eigenvalues(solver.eigenvalues(), tol);
  const double threshold = tol.degeneracy_gap * std::max(1.0, paired.spectrum.spectral_radius);
  const CMat vectors = solver.eigenvectors();
  const auto dim = static_cast<Eigen::Index>(2 * n);

  std::vector<PhasePair> pairs;
  for (const Cluster& cluster : group_clusters(paired, threshold)) {
    const auto k = static_cast<Eigen::Index>(cluster.members.size());
    if (cluster.value.kind == InvariantKind::Real) {
      // Real span of the cluster's eigenvectors; a collapse signals a defective Sigma.
      Mat raw(dim, 2 * k);
      for (Eigen::Index c = 0; c < k; ++c) {
        raw.col(c) = vectors.col(cluster.members[c]).real();
        raw.col(k + c) = vectors.col(cluster.members[c]).imag();
      }
      Eigen::JacobiSVD<Mat> svd(raw, Eigen::ComputeThinU);
      if (svd.singularValues()(k - 1) <= 1e-8 * svd.singularValues()(0)) {
        throw Error(ErrorKind::DegenerateSpectrum, "Sigma is defective (eigenvectors collapse)");
      }
      Mat Q = svd.matrixU().leftCols(k);
      Q = refine_subspace<Mat>(Sigma, Q, cluster.value.re + 1e-2 * threshold);
      if ((Sigma * Q - cluster.value.re * Q).norm() > 10.0 * threshold * std::sqrt(double(k))) {
        throw Error(ErrorKind::DegenerateSpectrum, "Sigma is not diagonalizable on a repeated invariant");
      }
      for (auto& p : symplectic_basis(Q, sigma)) pairs.push_back(std::move(p));
    } else {
      CMat Z(dim, 2);
      Z.col(0) = vectors.col(cluster.members[0]);
      Z.col(1) = vectors.col(cluster.members[1]);
      Eigen::JacobiSVD<CMat> svd(Z, Eigen::ComputeThinU);
      if (svd.singularValues()(1) <= 1e-8 * svd.singularValues()(0)) {
        throw Error(ErrorKind::DegenerateSpectrum, "Sigma is defective (eigenvectors collapse)");
      }
      const Complex lambda = cluster.value.value();
      Z = refine_subspace<CMat>(Sigma.cast<Complex>(), svd.matrixU(), lambda + 1e-2 * threshold);
      if ((Sigma.cast<Complex>() * Z - lambda * Z).norm() > 10.0 * threshold * std::sqrt(2.0)) {
        throw Error(ErrorKind::DegenerateSpectrum, "Sigma is not diagonalizable on a complex invariant");
      }
      // Re/Im of one eigenvector span an isotropic Sigma-invariant plane carrying
      // the rotation-scaling block; the second eigenvector supplies its conjugate plane.
      const CVec z1 = orthogonal_phase(Z.col(0));
      const CVec z2 = orthogonal_phase(Z.col(1));
      Mat U(dim, 2);
      U << z1.real(), z1.imag();
      Mat W(dim, 2);
      W << z2.real(), z2.imag();
      const Mat gram = U.transpose() * sigma * W;
      if (std::abs(gram.determinant()) <= 1e-16 * U.squaredNorm() * W.squaredNorm()) {
        throw Error(ErrorKind::IsotropicEigenspace, "symplectic form degenerates on a complex eigenspace");
      }
      W = W * (-gram.inverse());
      const double s = std::sqrt(W.norm() / U.norm());
      pairs.push_back({U.col(0) * s, W.col(0) / s});
      pairs.push_back({U.col(1) * s, W.col(1) / s});
    }
  }

  // One symplectic Gram-Schmidt sweep makes the basis exactly symplectic.
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    for (std::size_t j = 0; j < k; ++j) {
      symplectic_project(pairs[k].u, pairs[j], sigma);
      symplectic_project(pairs[k].w, pairs[j], sigma);
    }
    pairs[k].w /= -omega(pairs[k].u, pairs[k].w, sigma);
  }

  Mat T(dim, dim);
  for (int k = 0; k < n; ++k) {
    T.col(k) = pairs[static_cast<std::size_t>(k)].u;
    T.col(n + k) = pairs[static_cast<std::size_t>(k)].w;
  }
  SkewHamiltonianBlocks out;
  out.S = symplectic_inverse(T);
  const Mat reduced = out.S * Sigma * T;
  out.M = -reduced.topLeftCorner(n, n);
  out.residual = (reduced + direct_sum(out.M, out.M.transpose())).norm();
  return out;
}

TwoSymmetricFactors factor_two_symmetric(const Mat& M, std::uint64_t seed, const Tolerances& tol,
                                         int max_draws) {
  if (M.rows() != M.cols() || M.rows() == 0) {
    throw Error(ErrorKind::DimensionError, "factor_two_symmetric expects a nonempty square matrix");
  }
  require_finite(M, "M");
  const Eigen::Index n = M.rows();
  const Eigen::Index unknowns = n * (n + 1) / 2;
  const double off = 1.0 / std::sqrt(2.0);

  auto symmetric_from = [&](const Vec& v) {
    Mat T(n, n);
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i; j < n; ++j, ++k) {
        T(i, j) = T(j, i) = (i == j) ? v(k) : off * v(k);
      }
    }
    return T;
  };

  // Columns: vec(M^T E - E M) for an orthonormal basis E of symmetric matrices.
  Mat L(n * n, unknowns);
  for (Eigen::Index k = 0; k < unknowns; ++k) {
    const Mat E = symmetric_from(Vec::Unit(unknowns, k));
    const Mat image = M.transpose() * E - E * M;
    L.col(k) = Eigen::Map<const Vec>(image.data(), n * n);
  }
  Eigen::JacobiSVD<Mat> svd(L, Eigen::ComputeFullV);
  const Vec& s = svd.singularValues();
  // The null space has dimension >= n; extra directions appear for derogatory M.
  const double cutoff = 1e-10 * std::max(1.0, M.norm());
  Eigen::Index null_dim = n;
  for (Eigen::Index k = 0; k < unknowns - n; ++k) {
    if (s(k) <= cutoff) {
      null_dim = unknowns - k;
      break;
    }
  }
  const Mat basis = svd.matrixV().rightCols(null_dim);

  const double m_norm = std::max(M.norm(), std::numeric_limits<double>::min());
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  TwoSymmetricFactors best;
  best.residual = std::numeric_limits<double>::infinity();
  for (int draw = 0; draw < max_draws; ++draw) {
    Vec coeffs(null_dim);
    for (Eigen::Index k = 0; k < null_dim; ++k) coeffs(k) = normal(rng);
    const Mat T = symmetric_from(basis * coeffs);
    Eigen::SelfAdjointEigenSolver<Mat> eig(T, Eigen::EigenvaluesOnly);
    const Vec magnitudes = eig.eigenvalues().cwiseAbs();
    if (magnitudes.minCoeff() < 1e-10 * magnitudes.maxCoeff()) continue;

    TwoSymmetricFactors f;
    const Mat inv = T.partialPivLu().inverse();
    f.A = 0.5 * (inv + inv.transpose());
    const Mat TM = T * M;
    f.B = 0.5 * (TM + TM.transpose());
    f.residual = (f.A * f.B - M).norm() / m_norm;
    if (f.residual < best.residual) best = std::move(f);
    if (best.residual <= tol.residual_tol) return best;
  }
  if (best.residual <= tol.residual_tol) return best;
  if (reciprocal_condition(M) < 1e-12) {
    throw Error(ErrorKind::SingularInput, "M is singular; no accurate symmetric factorization found");
  }
  throw Error(ErrorKind::NoNonsingularFactor,
              "no well-conditioned symmetric intertwiner after " + std::to_string(max_draws) + " draws");
}

RealJordan real_jordan(const Mat& K, const Tolerances& tol) {
  if (K.rows() != K.cols() || K.rows() == 0) {
    throw Error(ErrorKind::DimensionError, "real_jordan expects a nonempty square matrix");
  }
  const Eigen::Index n = K.rows();
  Eigen::EigenSolver<Mat> solver(K, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::EigenFailure, "eigensolver failed on K");
  const CVec values = solver.eigenvalues();
  const CMat vectors = solver.eigenvectors();
  const double radius = values.cwiseAbs().maxCoeff();
  const double threshold = tol.degeneracy_gap * std::max(1.0, radius);

  struct Item {
    Invariant value;
    Mat columns;
  };
  std::vector<Item> items;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex lambda = values(i);
    if (lambda.imag() == 0.0) {
      Vec v = vectors.col(i).real();
      fix_sign(v);
      items.push_back({{lambda.real(), 0.0, InvariantKind::Real}, v});
    } else if (lambda.imag() > 0.0) {
      const CVec z = orthogonal_phase(vectors.col(i));
      if (lambda.imag() <= threshold) {
        // Spurious conjugate pair around a real double eigenvalue.
        Vec p = z.real();
        Vec q = z.imag();
        fix_sign(p);
        fix_sign(q);
        items.push_back({{lambda.real(), 0.0, InvariantKind::Real}, p});
        items.push_back({{lambda.real(), 0.0, InvariantKind::Real}, q});
      } else {
        Mat pq(n, 2);
        pq << z.real(), z.imag();
        items.push_back({{lambda.real(), lambda.imag(), InvariantKind::ComplexPair}, pq});
      }
    }
  }
  std::stable_sort(items.begin(), items.end(),
                   [](const Item& a, const Item& b) { return canonical_less(a.value, b.value); });

  RealJordan out;
  out.G_inv.resize(n, n);
  Eigen::Index slot = 0;
  for (auto& item : items) {
    out.G_inv.middleCols(slot, item.columns.cols()) = item.columns;
    slot += item.columns.cols();
    out.blocks.push_back(item.value);
  }
  if (slot != n || reciprocal_condition(out.G_inv) < 1e-12) {
    throw Error(ErrorKind::DegenerateSpectrum, "K is defective; no real Jordan eigenbasis");
  }
  out.G = out.G_inv.partialPivLu().inverse();
  return out;
}

Decomposition decompose(const Mat& X, const Tolerances& tol, std::uint64_t seed) {
  tol.validate();
  const int n = require_even_square(X, "X");
  if (reciprocal_condition(X) < 1e-12) {
    throw Error(ErrorKind::SingularInput, "X is singular (reciprocal condition < 1e-12)");
  }
  const Mat sigma = symplectic_form(n).matrix;

  const Mat Sigma = sigma_matrix(X);
  const SkewHamiltonianBlocks reduced = block_diagonalize_skew_hamiltonian(Sigma, tol);
  const TwoSymmetricFactors factors = factor_two_symmetric(reduced.M, seed, tol);

  Mat W = Mat::Zero(2 * n, 2 * n);
  W.topRightCorner(n, n) = factors.A;
  W.bottomLeftCorner(n, n) = factors.B;
  // S' = (S X)^{-1} W; symplectic because (SX) sigma (SX)^T sigma = W^2.
  const Mat s_prime = X.partialPivLu().solve(symplectic_inverse(reduced.S) * W);

  const Mat K = -factors.A.transpose() * factors.B;
  const RealJordan jordan = real_jordan(K, tol);

  const Mat A_inv = factors.A.partialPivLu().inverse();
  const Mat embed_G = direct_sum(jordan.G_inv.transpose(), jordan.G);      // gl_embed(G^T)
  const Mat embed_G_inv = direct_sum(jordan.G.transpose(), jordan.G_inv);  // its inverse

  Decomposition d;
  d.S1 = embed_G * direct_sum(A_inv, factors.A.transpose()) * reduced.S;
  d.S2 = s_prime * sigma * embed_G_inv;
  d.blocks = assemble_blocks(n, jordan.blocks);
  balance_gauge(d.S1, d.S2, d.blocks.blocks, n);
  d.recon_residual = (d.S1 * X * d.S2 - d.blocks.assembled).norm() / (d.S1.norm() * X.norm() * d.S2.norm());
  d.s1_residual = symplectic_residual(d.S1);
  d.s2_residual = symplectic_residual(d.S2);
  d.s_prime_residual = symplectic_residual(s_prime);

  if (d.recon_residual > tol.residual_tol || d.s1_residual > tol.residual_tol ||
      d.s2_residual > tol.residual_tol) {
    throw Error(ErrorKind::DegenerateSpectrum,
                "spectrum too close to degenerate for an accurate decomposition (recon " +
                    std::to_string(d.recon_residual) + ", s1 " + std::to_string(d.s1_residual) + ", s2 " +
                    std::to_string(d.s2_residual) + ")");
  }
  return d;
}

Verification verify_decomposition(const Mat& X, const Decomposition& d, const Tolerances& tol) {
  const int n = require_even_square(X, "X");
  const auto dim = static_cast<Eigen::Index>(2 * n);
  if (d.S1.rows() != dim || d.S1.cols() != dim || d.S2.rows() != dim || d.S2.cols() != dim) {
    throw Error(ErrorKind::DimensionError, "decomposition factors do not match X");
  }
  const CanonicalBlocks N = assemble_blocks(n, d.blocks.blocks);
  Verification v;
  v.recon = (d.S1 * X * d.S2 - N.assembled).norm() / (d.S1.norm() * X.norm() * d.S2.norm());
  v.s1 = symplectic_residual(d.S1);
  v.s2 = symplectic_residual(d.S2);
  v.spectrum_match = multiset_distance(N.eigenvalues(), invariants(X, tol).expanded());
  v.verdict = v.recon <= tol.residual_tol && v.s1 <= tol.residual_tol && v.s2 <= tol.residual_tol &&
              v.spectrum_match <= tol.degeneracy_gap;
  return v;
}

}  // namespace sympform
