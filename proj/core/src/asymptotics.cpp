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
#include "heston/asymptotics.hpp"

#include <cmath>

#include "heston/error.hpp"

namespace heston {

namespace {

Vec2 normal_pair(RandomStream& rng) {
  const double z1 = standard_normal(rng);
  const double z2 = standard_normal(rng);
  return {z1, z2};
}

Vec2 times(const Mat2& m, const Vec2& v) { return m * v; }

}  // namespace

CovarianceMatrix4 subcritical_covariance(const ModelParams& p) {
  if (!(p.b > 0.0)) throw RegimeError("subcritical covariance requires b > 0");
  const double s2 = p.sigma1 * p.sigma1;
  if (!(p.a > 0.5 * s2)) throw DomainError("subcritical covariance requires a > sigma1^2 / 2");
  const double m11 = 2.0 * p.b / (2.0 * p.a - s2);
  const double m22 = p.a / p.b;
  const double d = m11 * m22 - 1.0;  // = sigma1^2 / (2a - sigma1^2)
  const Mat2 inner_inv{{{m22 / d, 1.0 / d}, {1.0 / d, m11 / d}}};
  return kron(DiffusionMatrix::from_params(p).matrix(), inner_inv);
}

Vec4 random_scaling_transform(const SufficientStats& s, const Vec4& err) {
  const double det = s.det_condition();
  if (!(det > 0.0) || !(s.int_inv_y > 0.0))
    throw DeterminantNonpositive("random scaling needs int_y * int_inv_y > T^2", det);
  const double norm = 1.0 / std::sqrt(s.int_inv_y);
  const double root_det = std::sqrt(det);
  return {norm * (s.int_inv_y * err[0] - s.T * err[1]), norm * root_det * err[1],
          norm * (s.int_inv_y * err[2] - s.T * err[3]), norm * root_det * err[3]};
}

Vec4 scaled_error(const ModelParams& truth, const MleEstimate& est, const SufficientStats& s,
                  Scaling scaling) {
  const Vec4 err{est.a_hat - truth.a, est.b_hat - truth.b, est.alpha_hat - truth.alpha,
                 est.beta_hat - truth.beta};
  switch (classify(truth)) {
    case Criticality::Subcritical: {
      if (scaling == Scaling::Random) return to_limit_order(random_scaling_transform(s, err));
      const double r = std::sqrt(s.T);
      return to_limit_order(Vec4{r * err[0], r * err[1], r * err[2], r * err[3]});
    }
    case Criticality::Critical: {
      if (scaling == Scaling::Random) {
        const double ri = std::sqrt(s.int_inv_y);
        const double ry = std::sqrt(s.int_y);
        return {ri * err[0], ri * err[2], ry * err[1], ry * err[3]};
      }
      if (!(s.T > 1.0)) throw DomainError("critical scaling needs T > 1");
      const double rl = std::sqrt(std::log(s.T));
      return {rl * err[0], rl * err[2], s.T * err[1], s.T * err[3]};
    }
    case Criticality::Supercritical: {
      const double r =
          scaling == Scaling::Random ? std::sqrt(s.int_y) : std::exp(-0.5 * truth.b * s.T);
      return {err[0], err[2], r * err[1], r * err[3]};
    }
  }
  return err;
}

LimitSample critical_limit_sample(const ModelParams& p, Scaling scaling, RandomStream& rng,
                                  std::size_t companion_steps) {
  p.validate();
  if (classify(p) != Criticality::Critical)
    throw RegimeError("critical limit law requires b = 0");
  const double s2 = p.sigma1 * p.sigma1;
  if (!(p.a > 0.5 * s2)) throw DomainError("critical limit law requires a > sigma1^2 / 2");

  const CriticalCompanion c = simulate_critical_companion(p, companion_steps, rng);
  const Vec2 gauss = times(spd_sqrt(DiffusionMatrix::from_params(p).matrix()), normal_pair(rng));

  LimitSample out;
  out.regime = Criticality::Critical;
  out.scaling = scaling;
  if (scaling == Scaling::Deterministic) {
    const double f = std::sqrt(p.a - 0.5 * s2);
    out.v = {f * gauss[0], f * gauss[1], (p.a - c.y1) / c.int_y, (p.alpha - c.x1) / c.int_y};
  } else {
    const double r = std::sqrt(c.int_y);
    out.v = {gauss[0], gauss[1], (p.a - c.y1) / r, (p.alpha - c.x1) / r};
  }
  return out;
}

LimitSample supercritical_limit_sample(const ModelParams& p, Scaling scaling, RandomStream& rng,
                                       std::size_t companion_steps) {
  p.validate();
  if (classify(p) != Criticality::Supercritical)
    throw RegimeError("supercritical limit law requires b < 0");
  const double s2 = p.sigma1 * p.sigma1;
  if (!(p.a >= 0.5 * s2)) throw DomainError("supercritical limit law requires a >= sigma1^2 / 2");

  const SupercriticalCompanion c = simulate_supercritical_companion(p, companion_steps, rng);
  const double z1 = standard_normal(rng);
  const Vec2 gauss = times(spd_sqrt(DiffusionMatrix::from_params(p).matrix()), normal_pair(rng));

  const double v = (std::log(c.y_end) - std::log(p.y0)) / c.int_inv_y + 0.5 * s2 - p.a;
  const double second = p.rho * (p.sigma2 / p.sigma1) * v +
                        p.sigma2 * std::sqrt(1.0 - p.rho * p.rho) / std::sqrt(c.int_inv_y) * z1;
  const double mix = scaling == Scaling::Deterministic ? 1.0 / std::sqrt(-c.y_end / p.b) : 1.0;

  LimitSample out;
  out.regime = Criticality::Supercritical;
  out.scaling = scaling;
  out.v = {v, second, mix * gauss[0], mix * gauss[1]};
  return out;
}

double boundary_hitting_time_sample(const ModelParams& p, RandomStream& rng) {
  if (!(p.b > 0.0)) throw RegimeError("boundary hitting time requires b > 0");
  if (!(p.sigma1 > 0.0)) throw DomainError("sigma1 must be positive");
  const double m = p.b / p.sigma1;
  double z = 0.0;
  // Z == 0 has probability zero but would give an infinite time.
  do {
    z = standard_normal(rng);
  } while (z == 0.0);
  return (m * m) / (z * z);
}

}  // namespace heston
