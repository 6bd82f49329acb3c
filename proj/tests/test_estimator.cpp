// Copyright 2026 The heston-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "heston/error.hpp"
#include "heston/estimator.hpp"
#include "heston/functionals.hpp"
#include "heston/simulation.hpp"

namespace heston {
namespace {

const ModelParams kSub{2.0, 1.0, 0.5, 1.0, 1.0, 1.0, -0.5, 1.0, 0.0};

Eigen::Matrix4d to_eigen(const Mat4& m) {
  Eigen::Matrix4d e;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) e(i, j) = m[i][j];
  return e;
}

Eigen::Vector4d to_eigen(const Vec4& v) { return {v[0], v[1], v[2], v[3]}; }

PathGrid simulated(const ModelParams& p, std::size_t n, double dt, std::uint64_t seed,
                   std::uint64_t index = 0) {
  auto rng = derive_stream(seed, index);
  return simulate_heston_path(p, n, dt, rng);
}

// Left-point discretization of the drift-dependent part of the
// log-likelihood, assembled step by step with a dense 2x2 precision
// (S^{-1}, without the 1 - rho^2 normalization used by the library).
double direct_log_likelihood(const PathGrid& path, const Vec4& theta, const DiffusionMatrix& d) {
  Eigen::Matrix2d s;
  s << d.s11, d.s12, d.s12, d.s22;
  const Eigen::Matrix2d prec = s.inverse();
  double ll = 0.0;
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    const double y = path.y()[k];
    const Eigen::Vector2d mu(theta[0] - theta[1] * y, theta[2] - theta[3] * y);
    const Eigen::Vector2d dz(path.y()[k + 1] - y, path.x()[k + 1] - path.x()[k]);
    ll += mu.dot(prec * dz) / y - 0.5 * mu.dot(prec * mu) * path.dt() / y;
  }
  return ll;
}

// Random sufficient statistics with int_y int_inv_y > T^2.
SufficientStats random_stats(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(0.1, 5.0);
  std::normal_distribution<double> z(0.0, 3.0);
  SufficientStats s;
  s.T = u(gen);
  s.int_y = u(gen) * s.T;
  s.int_inv_y = (s.T * s.T / s.int_y) * (1.0 + u(gen));
  s.dy = z(gen);
  s.dx = z(gen);
  s.int_dy_over_y = z(gen);
  s.int_dx_over_y = z(gen);
  s.y0 = 1.0;
  s.yT = 1.0;
  return s;
}

TEST(InformationMatrix, ExampleEntries) {
  SufficientStats s;
  s.T = 10.0;
  s.int_y = 20.0;
  s.int_inv_y = 6.0;
  const auto d = DiffusionMatrix::from_params(1.0, 1.0, 0.0);
  const auto info = information_matrix(s, d);
  const Mat4 expected{{{6, -10, 0, 0}, {-10, 20, 0, 0}, {0, 0, 6, -10}, {0, 0, -10, 20}}};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) EXPECT_DOUBLE_EQ(info.a[i][j], expected[i][j]);
  EXPECT_TRUE(info.positive_definite());
}

TEST(InformationMatrix, KroneckerEntryAndEigenvalues) {
  std::mt19937_64 gen(41);
  for (int trial = 0; trial < 50; ++trial) {
    const auto s = random_stats(gen);
    const auto d = DiffusionMatrix::from_params(0.5 + trial * 0.03, 1.7, -0.9 + trial * 0.035);
    const auto info = information_matrix(s, d);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < 2; ++l)
            EXPECT_DOUBLE_EQ(info.a[2 * i + k][2 * j + l], info.kron_left[i][j] * info.kron_right[k][l]);

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> full(to_eigen(info.a));
    Eigen::Matrix2d pl, pr;
    pl << info.kron_left[0][0], info.kron_left[0][1], info.kron_left[1][0], info.kron_left[1][1];
    pr << info.kron_right[0][0], info.kron_right[0][1], info.kron_right[1][0],
        info.kron_right[1][1];
    const Eigen::Vector2d el = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(pl).eigenvalues();
    const Eigen::Vector2d er = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(pr).eigenvalues();
    std::vector<double> prods{el[0] * er[0], el[0] * er[1], el[1] * er[0], el[1] * er[1]};
    std::sort(prods.begin(), prods.end());
    const double scale = std::max(std::abs(prods.front()), std::abs(prods.back()));
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(full.eigenvalues()[i], prods[i], 1e-10 * scale);
    EXPECT_GT(full.eigenvalues()[0], 0.0);
  }
}

TEST(ScoreVector, ZeroPathGivesZeroScore) {
  SufficientStats s;
  s.T = 1.0;
  s.int_y = 2.0;
  s.int_inv_y = 1.0;
  const auto sc = score_vector(s, DiffusionMatrix::from_params(1.0, 2.0, 0.3));
  for (double v : sc.d) EXPECT_EQ(v, 0.0);
}

TEST(ScoreVector, UncorrelatedReducesToScaledIncrements) {
  SufficientStats s;
  s.int_dy_over_y = 1.5;
  s.dy = 0.7;
  s.int_dx_over_y = -2.0;
  s.dx = 0.4;
  const auto sc = score_vector(s, DiffusionMatrix::from_params(2.0, 0.5, 0.0));
  EXPECT_DOUBLE_EQ(sc.d[0], 1.5 / 4.0);
  EXPECT_DOUBLE_EQ(sc.d[1], -0.7 / 4.0);
  EXPECT_DOUBLE_EQ(sc.d[2], -2.0 / 0.25);
  EXPECT_DOUBLE_EQ(sc.d[3], -0.4 / 0.25);
}

TEST(LogLikelihood, MatchesDirectSumOverSteps) {
  const auto path = simulated(kSub, 2000, 0.01, 42);
  const auto stats = sufficient_stats(path);
  const auto d = DiffusionMatrix::from_params(1.0, 1.0, -0.5);
  for (const Vec4 theta : {Vec4{2, 1, 0.5, 1}, Vec4{0, 0, 0, 0}, Vec4{-1, 3, 2, -0.5}}) {
    const double direct = (1.0 - 0.25) * direct_log_likelihood(path, theta, d);
    EXPECT_NEAR(log_likelihood(theta, stats, d), direct, 1e-9 * (1.0 + std::abs(direct)));
  }
}

TEST(LogLikelihood, SimpleValues) {
  ScoreVector sc{{1.0, 0.0, 0.0, 0.0}};
  InformationMatrix info;
  info.a = identity<4>();
  EXPECT_EQ(log_likelihood(Vec4{0, 0, 0, 0}, sc, info), 0.0);
  EXPECT_DOUBLE_EQ(log_likelihood(Vec4{1, 0, 0, 0}, sc, info), 0.5);
}

TEST(Mle, ExampleValues) {
  SufficientStats s;
  s.T = 10.0;
  s.int_y = 20.0;
  s.int_inv_y = 6.0;
  s.dy = 1.0;
  s.dx = -2.0;
  s.int_dy_over_y = 3.0;
  s.int_dx_over_y = 0.5;
  s.y0 = 1.0;
  s.yT = 2.0;
  const auto e = mle(s);
  EXPECT_DOUBLE_EQ(e.det_condition, 20.0);
  EXPECT_DOUBLE_EQ(e.a_hat, (20.0 * 3.0 - 10.0 * 1.0) / 20.0);
  EXPECT_DOUBLE_EQ(e.b_hat, (10.0 * 3.0 - 1.0 * 6.0) / 20.0);
  EXPECT_DOUBLE_EQ(e.alpha_hat, (20.0 * 0.5 - 10.0 * -2.0) / 20.0);
  EXPECT_DOUBLE_EQ(e.beta_hat, (10.0 * 0.5 - -2.0 * 6.0) / 20.0);
}

TEST(Mle, ConstantPathIsRejected) {
  const PathGrid p(0.1, std::vector<double>(50, 1.3), std::vector<double>(50, 0.0));
  try {
    (void)mle(sufficient_stats(p));
    FAIL() << "expected DeterminantNonpositive";
  } catch (const DeterminantNonpositive& e) {
    EXPECT_NEAR(e.det_condition(), 0.0, 1e-12);
  }
}

TEST(Mle, TwoPointPath) {
  const PathGrid p(0.5, {1.0, 2.0}, {0.0, 1.0});
  EXPECT_NO_THROW(sufficient_stats(p).validate());
  EXPECT_THROW((void)estimate_from_path(p), DeterminantNonpositive);
  EstimateOptions opts;
  opts.quadrature = Quadrature::Trapezoid;
  const auto e = estimate_from_path(p, opts);
  for (double v : e.theta()) EXPECT_TRUE(std::isfinite(v));
}

TEST(Mle, AgreesWithDenseSolve) {
  std::mt19937_64 gen(43);
  std::uniform_real_distribution<double> sig(0.3, 3.0), rr(-0.95, 0.95);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto s = random_stats(gen);
    const auto d = DiffusionMatrix::from_params(sig(gen), sig(gen), rr(gen));
    const auto info = information_matrix(s, d);
    const auto sc = score_vector(s, d);
    const Eigen::Vector4d oracle = to_eigen(info.a).fullPivLu().solve(to_eigen(sc.d));
    const auto e = mle(s, d).theta();
    const auto k = kronecker_solve(info, sc);
    for (int i = 0; i < 4; ++i) {
      const double tol = 1e-10 * std::max(1.0, oracle.cwiseAbs().maxCoeff());
      EXPECT_NEAR(e[i], oracle[i], tol);
      EXPECT_NEAR(k[i], oracle[i], tol);
    }
  }
}

TEST(Mle, IndependentOfDiffusionMatrix) {
  std::mt19937_64 gen(44);
  const auto s = random_stats(gen);
  const auto e0 = mle(s);
  const auto e1 = mle(s, DiffusionMatrix::from_params(0.2, 7.0, 0.9));
  const auto e2 = mle(s, DiffusionMatrix::from_params(3.0, 0.1, -0.4));
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(e0.theta()[i], e1.theta()[i]);
    EXPECT_EQ(e0.theta()[i], e2.theta()[i]);
  }
}

TEST(Mle, GradientVanishesAndMaximizes) {
  std::mt19937_64 gen(45);
  std::normal_distribution<double> z(0.0, 1.0);
  for (std::uint64_t r = 0; r < 100; ++r) {
    const auto path = simulated(kSub, 500, 0.01, 46, r);
    const auto s = sufficient_stats(path);
    const auto d = DiffusionMatrix::from_params(1.0, 1.0, -0.5);
    const auto sc = score_vector(s, d);
    const auto info = information_matrix(s, d);
    const Vec4 th = mle(s).theta();
    const double best = log_likelihood(th, sc, info);

    // Central differences of the quadratic are exact up to rounding.
    const double h = 1e-5;
    double gnorm = 0.0, dnorm = 0.0;
    for (int i = 0; i < 4; ++i) {
      Vec4 up = th, dn = th;
      up[i] += h;
      dn[i] -= h;
      const double g = (log_likelihood(up, sc, info) - log_likelihood(dn, sc, info)) / (2 * h);
      gnorm += g * g;
      dnorm += sc.d[i] * sc.d[i];
    }
    EXPECT_LT(std::sqrt(gnorm), 1e-6 * (1.0 + std::sqrt(dnorm)));

    // Lattice of 3^4 points around the maximizer plus random perturbations.
    for (int code = 0; code < 81; ++code) {
      Vec4 t = th;
      int c = code;
      for (int i = 0; i < 4; ++i, c /= 3) t[i] += 0.05 * (c % 3 - 1);
      EXPECT_LE(log_likelihood(t, sc, info), best + 1e-9 * std::abs(best));
    }
    for (int i = 0; i < 10; ++i) {
      const Vec4 t{th[0] + z(gen), th[1] + z(gen), th[2] + z(gen), th[3] + z(gen)};
      EXPECT_LE(log_likelihood(t, sc, info), best + 1e-9 * std::abs(best));
    }
  }
}

TEST(Mle, ShiftOfXLeavesEstimatesUnchanged) {
  // Dyadic values keep every sum exact, so the equality is bitwise.
  const std::vector<double> y{1.0, 1.5, 1.25, 2.0, 1.75, 1.5};
  std::vector<double> x{0.0, 0.25, -0.5, 0.75, 0.5, 1.0};
  const auto base = estimate_from_path(PathGrid(0.125, y, x));
  for (auto& v : x) v += 8.0;
  const auto shifted = estimate_from_path(PathGrid(0.125, y, x));
  for (int i = 0; i < 4; ++i) EXPECT_EQ(base.theta()[i], shifted.theta()[i]);

  ModelParams q = kSub;
  q.x0 = 123.0;
  const auto p0 = estimate_from_path(simulated(kSub, 3000, 0.01, 47));
  const auto p1 = estimate_from_path(simulated(q, 3000, 0.01, 47));
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(p0.theta()[i], p1.theta()[i], 1e-9);
}

TEST(Mle, SubcriticalConsistency) {
  const int reps = 200;
  const Vec4 truth{kSub.a, kSub.b, kSub.alpha, kSub.beta};
  int good = 0;
  for (int r = 0; r < reps; ++r) {
    auto rng = derive_stream(48, static_cast<std::uint64_t>(r));
    const auto sim = simulate_sufficient_stats(kSub, 80000, 0.005, rng);
    const auto th = mle(sim.stats).theta();
    bool ok = true;
    for (int i = 0; i < 4; ++i) ok = ok && std::abs(th[i] - truth[i]) < 0.5;
    good += ok ? 1 : 0;
  }
  EXPECT_GE(good, static_cast<int>(0.95 * reps));
}

TEST(Mle, SupercriticalBIsSharp) {
  const ModelParams p{1.0, -1.0, 0.5, 1.0, 1.0, 1.0, 0.3, 1.0, 0.0};
  const int reps = 100;
  int good = 0;
  for (int r = 0; r < reps; ++r) {
    auto rng = derive_stream(49, static_cast<std::uint64_t>(r));
    const auto sim = simulate_sufficient_stats(p, 25000, 0.001, rng);
    good += std::abs(mle(sim.stats).b_hat - p.b) < 1e-2 ? 1 : 0;
  }
  EXPECT_GE(good, 95);
}

TEST(EstimateOptions, LogIdentityMode) {
  const auto path = simulated(kSub, 4000, 0.005, 50);
  EstimateOptions opts;
  opts.use_log_identity = true;
  opts.sigma1 = kSub.sigma1;
  const auto e = estimate_from_path(path, opts);
  EXPECT_TRUE(e.used_log_identity);
  const auto plain = estimate_from_path(path);
  EXPECT_FALSE(plain.used_log_identity);
  EXPECT_NEAR(e.a_hat, plain.a_hat, 0.2);
  EXPECT_EQ(e.alpha_hat, plain.alpha_hat);
  opts.sigma1 = std::nan("");
  EXPECT_THROW((void)estimate_from_path(path, opts), DomainError);
}

}  // namespace
}  // namespace heston
