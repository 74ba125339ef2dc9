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

#include <random>

#include "oracles.hpp"
#include "sympform/symplectic_core.hpp"

using namespace sympform;

TEST_CASE("symplectic form layout") {
  const Mat s1 = symplectic_form(1).matrix;
  Mat expected(2, 2);
  expected << 0, -1, 1, 0;
  CHECK(s1 == expected);

  const Mat s2 = symplectic_form(2).matrix;
  CHECK(s2.topRightCorner(2, 2) == -Mat::Identity(2, 2));
  CHECK(s2.bottomLeftCorner(2, 2) == Mat::Identity(2, 2));
  CHECK(s2.topLeftCorner(2, 2).isZero(0.0));
  CHECK(s2.bottomRightCorner(2, 2).isZero(0.0));

  for (int n = 1; n <= 6; ++n) {
    const Mat s = symplectic_form(n).matrix;
    CHECK(s * s == -Mat::Identity(2 * n, 2 * n));
    CHECK(s.transpose() * s == Mat::Identity(2 * n, 2 * n));
    CHECK(s.transpose() == -s);
  }
  CHECK_THROWS_AS(symplectic_form(0), Error);
}

TEST_CASE("is_symplectic") {
  auto check = is_symplectic(Mat::Identity(2, 2));
  CHECK(check.residual == 0.0);
  CHECK(check.verdict);

  CHECK(is_symplectic(symplectic_form(3).matrix).verdict);

  Mat squeeze(2, 2);
  squeeze << 2, 0, 0, 0.5;
  CHECK(is_symplectic(squeeze).verdict);
  CHECK(is_symplectic(squeeze).residual == 0.0);

  Mat scale(2, 2);
  scale << 2, 0, 0, 2;
  check = is_symplectic(scale);
  CHECK_FALSE(check.verdict);
  CHECK(check.residual == doctest::Approx(3.0 * std::sqrt(2.0)));

  try {
    is_symplectic(Mat::Identity(3, 3));
    FAIL("expected DimensionError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DimensionError);
  }
}

TEST_CASE("gl_embed") {
  CHECK(gl_embed(Mat::Identity(3, 3)).isApprox(Mat::Identity(6, 6)));

  Mat two(1, 1);
  two << 2.0;
  Mat expected(2, 2);
  expected << 0.5, 0, 0, 2;
  CHECK(gl_embed(two).isApprox(expected));

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Mat G = oracle::gaussian_matrix(4, 4, rng) + 3.0 * Mat::Identity(4, 4);
    CHECK(is_symplectic(gl_embed(G)).verdict);
  }

  Mat singular(2, 2);
  singular << 1, 2, 2, 4;
  try {
    gl_embed(singular);
    FAIL("expected SingularInput");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SingularInput);
  }
}

TEST_CASE("gl_embed reverses products") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Mat G = oracle::gaussian_matrix(3, 3, rng) + 2.0 * Mat::Identity(3, 3);
    const Mat H = oracle::gaussian_matrix(3, 3, rng) + 2.0 * Mat::Identity(3, 3);
    const Mat lhs = gl_embed(G) * gl_embed(H);
    const Mat rhs = gl_embed(H * G);
    CHECK((lhs - rhs).norm() <= 1e-10 * G.norm() * H.norm() * std::max(1.0, rhs.norm()));
  }
}

TEST_CASE("direct_sum") {
  Mat nine(1, 1);
  nine << 9.0;
  Mat expected(2, 2);
  expected << 1, 0, 0, 9;
  CHECK(direct_sum(Mat::Identity(1, 1), nine) == expected);

  Mat a(2, 2);
  a << 1, 2, 3, 4;
  Mat b(1, 1);
  b << -7;
  const Mat sum = direct_sum(a, b);
  CHECK(sum.rows() == 3);
  Eigen::EigenSolver<Mat> whole(sum), left(a);
  std::vector<std::complex<double>> got, want;
  for (int k = 0; k < 3; ++k) got.push_back(whole.eigenvalues()(k));
  for (int k = 0; k < 2; ++k) want.push_back(left.eigenvalues()(k));
  want.emplace_back(-7.0, 0.0);
  CHECK(oracle::multiset_gap(got, want) < 1e-12);
}

TEST_CASE("random_symplectic") {
  CHECK(random_symplectic(3, 42) == random_symplectic(3, 42));
  CHECK_FALSE(random_symplectic(3, 42) == random_symplectic(3, 43));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (int n : {1, 3, 6}) {
      const Mat S = random_symplectic(n, seed);
      const auto check = is_symplectic(S);
      CHECK(check.verdict);
      CHECK(check.residual <= 1e-10 * std::max(1.0, S.squaredNorm()));
      CHECK(S.determinant() == doctest::Approx(1.0).epsilon(1e-8));
    }
  }
}

TEST_CASE("group closure") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int n = 1 + static_cast<int>(seed % 5);
    const Mat A = random_symplectic(n, seed);
    const Mat B = random_symplectic(n, seed + 1000);
    const Mat sigma = symplectic_form(n).matrix;
    const Mat AB = A * B;
    CHECK((AB * sigma * AB.transpose() - sigma).norm() <= 1e-8 * A.norm() * A.norm() * B.norm() * B.norm());
    CHECK(is_symplectic(A.transpose()).verdict);
    CHECK(is_symplectic(Mat(A.inverse())).verdict);
    CHECK(symplectic_inverse(A).isApprox(A.inverse(), 1e-9));
  }
}

TEST_CASE("input guards") {
  Mat bad = Mat::Identity(2, 2);
  bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
  try {
    is_symplectic(bad);
    FAIL("expected NonFinite");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonFinite);
  }
  Tolerances tol;
  tol.psd_tol = 0.0;
  CHECK_THROWS_AS(tol.validate(), Error);
}
