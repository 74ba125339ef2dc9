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

#include "sympform/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace sympform {

bool canonical_less(const Invariant& a, const Invariant& b) {
  if (a.re != b.re) return a.re > b.re;
  return a.im < b.im;
}

std::vector<std::complex<double>> InvariantSpectrum::expanded() const {
  std::vector<std::complex<double>> out;
  out.reserve(static_cast<std::size_t>(n));
  for (const auto& v : values) {
    out.emplace_back(v.re, v.im);
    if (v.kind == InvariantKind::ComplexPair) out.emplace_back(v.re, -v.im);
  }
  return out;
}

Mat sigma_matrix(const Mat& X) {
  const int n = require_even_square(X, "X");
  const Mat sigma = symplectic_form(n).matrix;
  return X * sigma * X.transpose() * sigma.transpose();
}

double skew_hamiltonian_residual(const Mat& Sigma) {
  const int n = require_even_square(Sigma, "Sigma");
  const Mat product = Sigma * symplectic_form(n).matrix;
  return (product.transpose() + product).norm();
}

namespace detail {

PairedSpectrum pair_eigenvalues(const CVec& eigenvalues, const Tolerances& tol) {
  const auto count = static_cast<int>(eigenvalues.size());
  if (count % 2 != 0) throw Error(ErrorKind::DimensionError, "odd number of eigenvalues");

  double radius = 0.0;
  for (int i = 0; i < count; ++i) radius = std::max(radius, std::abs(eigenvalues(i)));
  const double threshold = tol.degeneracy_gap * std::max(1.0, radius);

  std::vector<std::complex<double>> snapped(eigenvalues.data(), eigenvalues.data() + count);
  for (auto& z : snapped) {
    if (std::abs(z.imag()) <= threshold) z = {z.real(), 0.0};
  }

  std::vector<int> order(static_cast<std::size_t>(count));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (snapped[a].real() != snapped[b].real()) return snapped[a].real() < snapped[b].real();
    return snapped[a].imag() < snapped[b].imag();
  });

  struct Double {
    std::array<int, 2> idx;
    std::complex<double> mean;
  };
  std::vector<Double> doubles;
  std::vector<bool> used(static_cast<std::size_t>(count), false);
  double worst_gap = 0.0;
  for (int i : order) {
    if (used[i]) continue;
    used[i] = true;
    int best = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    for (int j : order) {
      if (used[j]) continue;
      const double d = std::abs(snapped[i] - snapped[j]);
      if (d < best_dist) {
        best_dist = d;
        best = j;
      }
    }
    if (best < 0 || best_dist > threshold) {
      throw Error(ErrorKind::ClusteringAmbiguous,
                  "eigenvalue " + std::to_string(snapped[i].real()) + "+" +
                      std::to_string(snapped[i].imag()) + "i of Sigma has no partner within " +
                      std::to_string(threshold));
    }
    used[best] = true;
    worst_gap = std::max(worst_gap, best_dist);
    doubles.push_back({{i, best}, 0.5 * (snapped[i] + snapped[best])});
  }

  PairedSpectrum out;
  out.spectrum.n = count / 2;
  out.spectrum.spectral_radius = radius;
  out.spectrum.pairing_residual = worst_gap / std::max(1.0, radius);

  std::vector<bool> mirror_used(doubles.size(), false);
  for (std::size_t k = 0; k < doubles.size(); ++k) {
    const auto& d = doubles[k];
    if (d.mean.imag() == 0.0) {
      out.spectrum.values.push_back({d.mean.real(), 0.0, InvariantKind::Real});
      out.members.push_back(d.idx);
    } else if (d.mean.imag() > 0.0) {
      std::size_t best = doubles.size();
      double best_dist = std::numeric_limits<double>::infinity();
      for (std::size_t m = 0; m < doubles.size(); ++m) {
        if (mirror_used[m] || doubles[m].mean.imag() >= 0.0) continue;
        const double dist = std::abs(std::conj(doubles[m].mean) - d.mean);
        if (dist < best_dist) {
          best_dist = dist;
          best = m;
        }
      }
      if (best == doubles.size() || best_dist > threshold) {
        throw Error(ErrorKind::ClusteringAmbiguous, "complex double without a conjugate partner");
      }
      mirror_used[best] = true;
      const std::complex<double> value = 0.5 * (d.mean + std::conj(doubles[best].mean));
      out.spectrum.values.push_back({value.real(), value.imag(), InvariantKind::ComplexPair});
      out.members.push_back(d.idx);
    }
  }
  const auto mirrors = static_cast<std::size_t>(std::count(mirror_used.begin(), mirror_used.end(), true));
  std::size_t negatives = 0;
  for (const auto& d : doubles) negatives += d.mean.imag() < 0.0 ? 1 : 0;
  if (mirrors != negatives) {
    throw Error(ErrorKind::ClusteringAmbiguous, "complex double without a conjugate partner");
  }

  // Canonical order, carrying the member indices along.
  std::vector<std::size_t> perm(out.spectrum.values.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    return canonical_less(out.spectrum.values[a], out.spectrum.values[b]);
  });
  PairedSpectrum sorted;
  sorted.spectrum = out.spectrum;
  sorted.spectrum.values.clear();
  for (std::size_t p : perm) {
    sorted.spectrum.values.push_back(out.spectrum.values[p]);
    sorted.members.push_back(out.members[p]);
  }

  auto& values = sorted.spectrum.values;
  for (std::size_t a = 0; a < values.size(); ++a) {
    if (std::abs(values[a].value()) <= threshold) sorted.spectrum.has_zero = true;
    for (std::size_t b = a + 1; b < values.size(); ++b) {
      if (std::abs(values[a].value() - values[b].value()) <= threshold) sorted.spectrum.has_repeated = true;
    }
  }
  return sorted;
}

}  // namespace detail

InvariantSpectrum invariants(const Mat& X, const Tolerances& tol) {
  const Mat Sigma = sigma_matrix(X);
  Eigen::EigenSolver<Mat> solver(Sigma, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::EigenFailure, "eigensolver did not converge on Sigma(X)");
  }
  return detail::pair_eigenvalues(solver.eigenvalues(), tol).spectrum;
}

double multiset_distance(const std::vector<std::complex<double>>& a,
                         const std::vector<std::complex<double>>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double scale = 1.0;
  for (const auto& z : a) scale = std::max(scale, std::abs(z));
  for (const auto& z : b) scale = std::max(scale, std::abs(z));

  std::vector<bool> used(b.size(), false);
  double worst = 0.0;
  for (const auto& z : a) {
    std::size_t best = b.size();
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(z - b[j]);
      if (d < best_dist) {
        best_dist = d;
        best = j;
      }
    }
    used[best] = true;
    worst = std::max(worst, best_dist);
  }
  return worst / scale;
}

}  // namespace sympform
