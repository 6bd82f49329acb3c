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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Tolerances are fixed here and are not tuned per run.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "heston/asymptotics.hpp"
#include "heston/config.hpp"
#include "heston/estimator.hpp"
#include "heston/experiment.hpp"
#include "heston/functionals.hpp"
#include "heston/simulation.hpp"
#include "heston/stats.hpp"

namespace {

using namespace heston;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int g_failures = 0;

void run(int id, const char* name, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("[%s] %2d %-28s %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(),
              secs);
  std::fflush(stdout);
  if (!o.pass) ++g_failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

constexpr std::uint64_t kSeed = 20261016;

// 1. Exact CIR transition mean.
Outcome moment_fidelity() {
  const ModelParams p{2.0, 1.0, 0.0, 0.0, 1.0, 1.0, 0.0, 1.0, 0.0};
  const int n = 100000;
  auto rng = derive_stream(kSeed, 1);
  std::vector<double> v(n);
  for (auto& x : v) x = cir_transition_sample(p, 1.0, 1.0, rng);
  const auto s = summarize(v);
  const double se = s.sd / std::sqrt(static_cast<double>(n));
  const double target = 2.0 - std::exp(-1.0);
  const double z = (s.mean - target) / se;
  return {std::abs(z) <= 3.0, fmt("mean %.5f vs %.5f, |z| = %.2f <= 3", s.mean, target, std::abs(z))};
}

// 2. Ergodic averages along one long path.
Outcome ergodic_averages() {
  const ModelParams p{2.0, 1.0, 0.0, 0.0, 1.0, 1.0, 0.0, 1.0, 0.0};
  auto rng = derive_stream(kSeed, 2);
  const auto sim = simulate_sufficient_stats(p, 200000, 0.01, rng);
  const double my = sim.stats.int_y / sim.stats.T;
  const double mi = sim.stats.int_inv_y / sim.stats.T;
  const double ey = std::abs(my / 2.0 - 1.0);
  const double ei = std::abs(mi / (2.0 / 3.0) - 1.0);
  return {ey < 0.02 && ei < 0.03,
          fmt("mean Y %.4f (rel err %.4f < 0.02), mean 1/Y %.4f (rel err %.4f < 0.03)", my, ey, mi, ei)};
}

// 3. Closed form against dense solves, Kronecker structure, stationarity.
Outcome algebraic_identities() {
  std::mt19937_64 gen(kSeed);
  std::uniform_real_distribution<double> u(0.1, 5.0), sig(0.3, 3.0), rr(-0.95, 0.95);
  std::normal_distribution<double> z(0.0, 3.0);
  double worst_solve = 0.0, worst_grad = 0.0;
  bool kron_exact = true;
  for (int trial = 0; trial < 1000; ++trial) {
    SufficientStats s;
    s.T = u(gen);
    s.int_y = u(gen) * s.T;
    s.int_inv_y = (s.T * s.T / s.int_y) * (1.0 + u(gen));
    s.dy = z(gen);
    s.dx = z(gen);
    s.int_dy_over_y = z(gen);
    s.int_dx_over_y = z(gen);
    const auto d = DiffusionMatrix::from_params(sig(gen), sig(gen), rr(gen));
    const auto info = information_matrix(s, d);
    const auto sc = score_vector(s, d);

    Eigen::Matrix4d a;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) a(i, j) = info.a[i][j];
    const Eigen::Vector4d rhs(sc.d[0], sc.d[1], sc.d[2], sc.d[3]);
    const Eigen::Vector4d oracle = a.fullPivLu().solve(rhs);
    const Vec4 th = mle(s).theta();
    for (int i = 0; i < 4; ++i)
      worst_solve = std::max(worst_solve, std::abs(th[i] - oracle[i]) /
                                              std::max(1.0, oracle.cwiseAbs().maxCoeff()));

    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < 2; ++l)
            kron_exact = kron_exact &&
                         info.a[2 * i + k][2 * j + l] == info.kron_left[i][j] * info.kron_right[k][l];

    const double h = 1e-5;
    double g2 = 0.0, d2 = 0.0;
    for (int i = 0; i < 4; ++i) {
      Vec4 up = th, dn = th;
      up[i] += h;
      dn[i] -= h;
      const double g = (log_likelihood(up, sc, info) - log_likelihood(dn, sc, info)) / (2 * h);
      g2 += g * g;
      d2 += sc.d[i] * sc.d[i];
    }
    worst_grad = std::max(worst_grad, std::sqrt(g2) / (1.0 + std::sqrt(d2)));
  }
  return {worst_solve < 1e-10 && kron_exact && worst_grad < 1e-6,
          fmt("solve rel err %.2e < 1e-10, kronecker exact %s, gradient %.2e < 1e-6", worst_solve,
              kron_exact ? "yes" : "no", worst_grad)};
}

// 4. Determinant condition in every regime.
Outcome existence_condition() {
  const ModelParams regimes[] = {
      {2.0, 1.0, 0.3, 0.8, 1.0, 1.0, -0.5, 1.0, 0.0},
      {1.0, 0.0, 0.5, 1.0, 1.0, 1.0, 0.3, 1.0, 0.0},
      {1.0, -1.0, 0.5, 1.0, 1.0, 1.0, 0.3, 1.0, 0.0},
  };
  std::size_t bad = 0;
  double smallest = INFINITY;
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::uint64_t i = 0; i < 1000; ++i) {
      auto rng = derive_stream(kSeed + r, i);
      const auto sim = simulate_sufficient_stats(regimes[r], 1000, 0.01, rng);
      const double rel = sim.stats.det_condition() / (sim.stats.int_y * sim.stats.int_inv_y);
      smallest = std::min(smallest, rel);
      if (!(sim.stats.det_condition() > 0.0)) ++bad;
    }
  }
  return {bad == 0, fmt("%zu of 3000 paths violate; smallest relative determinant %.3e", bad, smallest)};
}

TestReport g_clt;

std::string means(const TestReport& r, const std::string& prefix) {
  std::string out = "means ";
  for (const auto& c : r.coordinates)
    if (c.name.rfind(prefix, 0) == 0)
      out += c.name.substr(prefix.size()) + fmt("=%+.3f ", c.summary.mean);
  return out;
}

std::string ks_line(const TestReport& r, const std::string& prefix, double threshold, bool& ok) {
  std::ostringstream out;
  for (const auto& k : r.ks) {
    if (k.coordinate.rfind(prefix, 0) != 0) continue;
    const bool pass = !k.skipped && k.result.p_value > threshold;
    ok = ok && pass;
    out << k.coordinate.substr(prefix.size()) << " p=" << fmt("%.3f", k.result.p_value) << " ";
  }
  return out.str();
}

// 5. Subcritical CLT against the closed-form covariance.
Outcome subcritical_clt() {
  ExperimentConfig c;
  c.kind = ExperimentKind::Clt;
  c.params = {2.0, 1.0, 0.3, 0.8, 1.0, 1.0, -0.5, 1.0, 0.0};
  c.horizon = 200.0;
  c.dt = 0.005;
  c.replicates = 1000;
  c.seed = kSeed;
  c.threads = 0;
  g_clt = run_experiment(c);
  bool ok = true;
  double worst = 0.0;
  for (const auto& e : g_clt.covariance) {
    ok = ok && e.pass;
    worst = std::max(worst, std::abs(e.empirical - e.theoretical) / e.tolerance);
  }
  const std::string ks = ks_line(g_clt, "sqrtT_error_", 0.01, ok);
  return {ok, fmt("covariance worst |dev|/tol %.2f <= 1; KS ", worst) + ks + "| " +
                  means(g_clt, "sqrtT_error_")};
}

// 6. Random scaling on the same replicates.
Outcome random_scaling() {
  if (g_clt.replicates.empty()) return {false, "criterion 5 run unavailable"};
  bool ok = true;
  const std::string ks = ks_line(g_clt, "random_scaled_", 0.01, ok);
  return {ok, "KS vs N(0, sigma^2): " + ks + "| " + means(g_clt, "random_scaled_")};
}

std::string limit_ks(const TestReport& r, const std::vector<std::string>& names, bool& ok) {
  std::ostringstream out;
  for (const auto& k : r.ks) {
    if (std::find(names.begin(), names.end(), k.coordinate) == names.end()) continue;
    ok = ok && !k.skipped && k.result.p_value > 0.01;
    out << k.coordinate << " p=" << fmt("%.3f", k.result.p_value) << " ";
  }
  return out.str();
}

// 7. Critical regime against the limit-law sampler.
Outcome critical_limit() {
  ExperimentConfig c;
  c.kind = ExperimentKind::CriticalLimit;
  c.params = {1.0, 0.0, 0.5, 1.0, 1.0, 1.0, 0.3, 1.0, 0.0};
  c.horizon = 200.0;
  c.dt = 0.005;
  c.replicates = 1000;
  c.limit_draws = 10000;
  c.seed = kSeed;
  c.threads = 0;
  const auto r = run_experiment(c);
  bool ok = true;
  std::string detail = limit_ks(r, {"b", "beta"}, ok);

  // Companion discretization check: doubling the companion step count
  // must not move the sampled law of the (b, beta) block.
  std::vector<double> coarse(c.limit_draws), fine(c.limit_draws);
  for (std::size_t j = 0; j < c.limit_draws; ++j) {
    auto r1 = derive_stream(kSeed, j, stream_domain::kAuxiliary);
    auto r2 = derive_stream(kSeed + 1, j, stream_domain::kAuxiliary);
    coarse[j] = critical_limit_sample(c.params, Scaling::Deterministic, r1, 1000).v[2];
    fine[j] = critical_limit_sample(c.params, Scaling::Deterministic, r2, 2000).v[2];
  }
  const double p_doubling = ks_two_sample(coarse, fine).p_value;
  ok = ok && p_doubling > 0.01;
  return {ok, detail + fmt("| companion step doubling p=%.3f | ", p_doubling) +
                  means(r, "scaled_error_") + "vs " + means(r, "limit_")};
}

// 8. Supercritical regime: consistency of b, non-consistency of a.
Outcome supercritical() {
  ExperimentConfig c;
  c.kind = ExperimentKind::SupercriticalLimit;
  c.params = {1.0, -1.0, 0.5, 1.0, 1.0, 1.0, 0.3, 1.0, 0.0};
  c.horizon = 25.0;
  c.dt = 0.001;
  c.replicates = 500;
  c.limit_draws = 10000;
  c.seed = kSeed;
  c.threads = 0;
  const auto r = run_experiment(c);
  bool ok = true;
  std::string detail = limit_ks(r, {"a"}, ok);
  for (const auto& crit : r.criteria) {
    if (crit.name != "median_abs_b_error") continue;
    ok = ok && crit.value < 1e-2;
    detail += fmt("| median |b_hat - b| %.2e < 1e-2", crit.value);
  }
  return {ok, detail};
}

// 9. Diffusion coefficients from quadratic variation.
Outcome diffusion_recovery() {
  const ModelParams p{2.0, 1.0, 0.3, 0.8, 1.0, 2.0, 0.5, 1.0, 0.0};
  auto rng = derive_stream(kSeed, 9);
  const auto path = simulate_heston_path(p, 10000, 1e-3, rng);
  const auto d = diffusion_matrix_estimate(path);
  const double e1 = std::abs(d.sigma1_hat / p.sigma1 - 1.0);
  const double e2 = std::abs(d.sigma2_hat / p.sigma2 - 1.0);
  const double er = std::abs(d.rho_hat - p.rho);
  return {e1 <= 0.02 && e2 <= 0.02 && er <= 0.03,
          fmt("sigma1 %.4f (%.4f), sigma2 %.4f (%.4f), rho %.4f (%.4f)", d.sigma1_hat, e1,
              d.sigma2_hat, e2, d.rho_hat, er)};
}

// 10. Discretization residual of the log identity under grid refinement.
// A single path's residual is a signed Gaussian-like quantity, so the ratio
// of two absolute residuals is heavy-tailed; the root mean square over 64
// fixed-seed skeletons is used instead and the single-path values are shown.
Outcome log_identity_convergence() {
  const ModelParams p{2.0, 1.0, 0.3, 0.8, 1.0, 1.0, -0.5, 1.0, 0.0};
  const std::size_t strides[] = {16, 4, 1};
  double sq[3] = {0, 0, 0};
  double first[3] = {0, 0, 0};
  const int skeletons = 64;
  for (int s = 0; s < skeletons; ++s) {
    auto rng = derive_stream(kSeed, static_cast<std::uint64_t>(s), stream_domain::kAuxiliary);
    const auto fine = simulate_heston_path(p, 16000, 0.000625, rng);
    for (int i = 0; i < 3; ++i) {
      const auto g = strides[i] == 1 ? fine : fine.subsample(strides[i]);
      const double r = sufficient_stats(g).int_dy_over_y - log_identity_value(g, p.sigma1);
      sq[i] += r * r;
      if (s == 0) first[i] = std::abs(r);
    }
  }
  double rms[3];
  for (int i = 0; i < 3; ++i) rms[i] = std::sqrt(sq[i] / skeletons);
  const double r1 = rms[0] / rms[1], r2 = rms[1] / rms[2];
  return {r1 >= 1.3 && r2 >= 1.3,
          fmt("rms residual %.4f, %.4f, %.4f; ratios %.2f, %.2f >= 1.3 | first skeleton %.4f, %.4f, %.4f",
              rms[0], rms[1], rms[2], r1, r2, first[0], first[1], first[2])};
}

// 11. Boundary hitting time law.
Outcome hitting_time() {
  ModelParams p;
  p.a = 0.5;
  p.b = 1.0;
  p.sigma1 = 1.0;
  auto rng = derive_stream(kSeed, 11);
  const int n = 1000000;
  int c05 = 0, c1 = 0, c2 = 0;
  for (int i = 0; i < n; ++i) {
    const double t = boundary_hitting_time_sample(p, rng);
    c05 += t <= 0.5;
    c1 += t <= 1.0;
    c2 += t <= 2.0;
  }
  const auto cdf = [](double t) { return 2.0 * (1.0 - normal_cdf(1.0 / std::sqrt(t))); };
  const double d05 = std::abs(c05 / double(n) - cdf(0.5));
  const double d1 = std::abs(c1 / double(n) - cdf(1.0));
  const double d2 = std::abs(c2 / double(n) - cdf(2.0));
  return {std::max({d05, d1, d2}) <= 0.005,
          fmt("|ecdf - cdf| at t=0.5,1,2: %.5f, %.5f, %.5f <= 0.005", d05, d1, d2)};
}

}  // namespace

int main() {
  run(1, "moment-fidelity", moment_fidelity);
  run(2, "ergodic-averages", ergodic_averages);
  run(3, "algebraic-identities", algebraic_identities);
  run(4, "existence-condition", existence_condition);
  run(5, "subcritical-clt", subcritical_clt);
  run(6, "random-scaling", random_scaling);
  run(7, "critical-limit", critical_limit);
  run(8, "supercritical", supercritical);
  run(9, "diffusion-recovery", diffusion_recovery);
  run(10, "log-identity-convergence", log_identity_convergence);
  run(11, "boundary-hitting-time", hitting_time);
  std::printf("%d of 11 criteria failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
