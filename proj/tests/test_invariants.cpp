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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sympform/canonical_form.hpp"
#include "sympform/invariants.hpp"

using namespace sympform;

namespace {

Mat complex_block_example() {
  // 1_2 (+) [[1, 2], [-2, 1]]
  Mat X = Mat::Identity(4, 4);
  X(2, 3) = 2.0;
  X(3, 2) = -2.0;
  return X;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::ParseError;
}

}  // namespace

TEST_CASE("sigma_matrix examples") {
  CHECK(sigma_matrix(Mat::Identity(4, 4)).isApprox(Mat::Identity(4, 4)));
  CHECK(sigma_matrix(3.0 * Mat::Identity(2, 2)).isApprox(9.0 * Mat::Identity(2, 2)));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Mat S = random_symplectic(3, seed);
    CHECK((sigma_matrix(S) - Mat::Identity(6, 6)).norm() <= 1e-8 * S.squaredNorm());
  }
  CHECK(kind_of([] { sigma_matrix(Mat::Identity(3, 3)); }) == ErrorKind::DimensionError);
}

TEST_CASE("Sigma is skew-Hamiltonian") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 6;
    const Mat Sigma = sigma_matrix(oracle::gaussian_matrix(2 * n, 2 * n, rng));
    CHECK(skew_hamiltonian_residual(Sigma) <= 1e-12 * Sigma.norm());
  }
}

TEST_CASE("invariants examples") {
  auto spec = invariants(Mat::Identity(2, 2));
  REQUIRE(spec.values.size() == 1);
  CHECK(spec.values[0].kind == InvariantKind::Real);
  CHECK(spec.values[0].re == doctest::Approx(1.0));

  spec = invariants(std::sqrt(0.36) * Mat::Identity(2, 2));
  CHECK(spec.values[0].re == doctest::Approx(0.36));

  spec = invariants(complex_block_example());
  REQUIRE(spec.values.size() == 1);
  CHECK(spec.n == 2);
  CHECK(spec.values[0].kind == InvariantKind::ComplexPair);
  CHECK(spec.values[0].re == doctest::Approx(1.0));
  CHECK(spec.values[0].im == doctest::Approx(2.0));
  // Oracle: a complex eigensolve of Sigma directly.
  CHECK(oracle::multiset_gap(spec.expanded(), oracle::halved(oracle::sigma_spectrum(complex_block_example()))) <
        1e-12);

  Mat d(2, 2);
  d << 2, 0, 0, 2;
  spec = invariants(d);
  CHECK(spec.values[0].re == doctest::Approx(4.0));
  const auto w = williamson(d);
  CHECK(w.nu[0] == doctest::Approx(2.0));
  CHECK(w.nu[0] * w.nu[0] == doctest::Approx(spec.values[0].re));
}

TEST_CASE("canonical ordering") {
  Mat X = Mat::Identity(6, 6);
  // J = diag(-3) (+) [[2, 1], [-1, 2]]
  X(3, 3) = -3.0;
  X(4, 4) = 2.0;
  X(4, 5) = 1.0;
  X(5, 4) = -1.0;
  X(5, 5) = 2.0;
  const auto spec = invariants(X);
  REQUIRE(spec.values.size() == 2);
  CHECK(spec.values[0].kind == InvariantKind::ComplexPair);
  CHECK(spec.values[0].re == doctest::Approx(2.0));
  CHECK(spec.values[1].re == doctest::Approx(-3.0));
  int slots = 0;
  for (const auto& v : spec.values) slots += v.slots();
  CHECK(slots == 3);
  CHECK(canonical_less({1.0, 0.5, InvariantKind::ComplexPair}, {1.0, 0.7, InvariantKind::ComplexPair}));
  CHECK(canonical_less({2.0, 0.0, InvariantKind::Real}, {1.0, 0.0, InvariantKind::Real}));
}

TEST_CASE("equivalence invariance") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 6;
    const Mat X = oracle::gaussian_matrix(2 * n, 2 * n, rng);
    const Mat S1 = random_symplectic(n, 100 + trial);
    const Mat S2 = random_symplectic(n, 900 + trial);
    const auto a = invariants(X);
    const auto b = invariants(S1 * X * S2);
    CHECK(multiset_distance(a.expanded(), b.expanded()) <= 1e-6);
  }
}

TEST_CASE("similarity transport") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 5;
    const Mat X = oracle::gaussian_matrix(2 * n, 2 * n, rng);
    const Mat S1 = random_symplectic(n, trial);
    const Mat S2 = random_symplectic(n, 50 + trial);
    const Mat lhs = sigma_matrix(S1 * X * S2);
    const Mat rhs = S1 * sigma_matrix(X) * S1.inverse();
    const double cond = 1.0 / reciprocal_condition(S1);
    CHECK((lhs - rhs).norm() <= 1e-8 * cond * std::max(1.0, rhs.norm()));
  }
}

TEST_CASE("doubling and conjugate closure") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 6;
    const Mat X = oracle::gaussian_matrix(2 * n, 2 * n, rng);
    const auto spec = invariants(X);
    CHECK(spec.pairing_residual <= 1e-6);
    int slots = 0;
    for (const auto& v : spec.values) {
      slots += v.slots();
      if (v.kind == InvariantKind::ComplexPair) CHECK(v.im > 0.0);
      if (v.kind == InvariantKind::Real) CHECK(v.im == 0.0);
    }
    CHECK(slots == n);

    const auto raw = oracle::sigma_spectrum(X);
    std::vector<std::complex<double>> conj;
    for (auto z : raw) conj.push_back(std::conj(z));
    CHECK(oracle::multiset_gap(raw, conj) <= 1e-10);
    CHECK(oracle::multiset_gap(spec.expanded(), oracle::halved(raw)) <= 1e-6);
  }
}

TEST_CASE("clustering failures and flags") {
  CVec undoubled(2);
  undoubled << 1.0, 2.0;
  CHECK(kind_of([&] { detail::pair_eigenvalues(undoubled, {}); }) == ErrorKind::ClusteringAmbiguous);

  CVec unmatched(4);
  unmatched << std::complex<double>(1.0, 1.0), std::complex<double>(1.0, 1.0), std::complex<double>(1.0, -1.5),
      std::complex<double>(1.0, -1.5);
  CHECK(kind_of([&] { detail::pair_eigenvalues(unmatched, {}); }) == ErrorKind::ClusteringAmbiguous);

  Mat singular = Mat::Identity(4, 4);
  singular(3, 3) = 0.0;
  const auto spec = invariants(singular);
  CHECK(spec.has_zero);

  const auto repeated = invariants(Mat::Identity(4, 4));
  CHECK(repeated.has_repeated);
  CHECK_FALSE(repeated.has_zero);
}

TEST_CASE("realness snapping") {
  CVec dusty(4);
  dusty << std::complex<double>(2.0, 1e-12), std::complex<double>(2.0, -1e-12), std::complex<double>(-1.0, 0.0),
      std::complex<double>(-1.0 + 1e-13, 0.0);
  const auto paired = detail::pair_eigenvalues(dusty, {});
  REQUIRE(paired.spectrum.values.size() == 2);
  CHECK(paired.spectrum.values[0].kind == InvariantKind::Real);
  CHECK(paired.spectrum.values[0].im == 0.0);
  CHECK(paired.spectrum.values[0].re == doctest::Approx(2.0));
  CHECK(paired.spectrum.values[1].re == doctest::Approx(-1.0));
}
