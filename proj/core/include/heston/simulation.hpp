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
#pragma once

#include <cstddef>

#include "heston/model.hpp"
#include "heston/path.hpp"
#include "heston/random.hpp"

namespace heston {

// Exact transition law of the CIR factor over a fixed step:
//   Y_{t+dt} | Y_t = y  ~  c * chi'^2(4a/sigma1^2, e^{-b dt} y / c),
//   c = sigma1^2 (1 - e^{-b dt}) / (4b)   (sigma1^2 dt / 4 at b = 0).
// Precomputes everything that depends only on (a, b, sigma1, dt).
class CirTransition {
 public:
  CirTransition(double a, double b, double sigma1, double dt);

  double sample(RandomStream& rng, double y_from) const;

  double degrees_of_freedom() const noexcept { return df_; }
  double scale() const noexcept { return scale_; }
  double noncentrality(double y_from) const noexcept { return decay_ * y_from / scale_; }

 private:
  double df_;
  double scale_;
  double decay_;
};

// One exact draw of Y_{t+dt} given Y_t = y_from. DomainError unless
// y_from > 0 and dt > 0.
double cir_transition_sample(const ModelParams& params, double y_from, double dt,
                             RandomStream& rng);

// Advances (Y, X) by one grid step. Y moves by its exact transition; X by
//   X' = X + (alpha - beta Y) dt + (sigma2 rho / sigma1) (Y' - Y - (a - b Y) dt)
//          + sigma2 sqrt((1 - rho^2) Y dt) xi,
// so the Y innovation stands in for the W increment.
class HestonStepper {
 public:
  HestonStepper(const ModelParams& params, double dt);

  struct State {
    double y;
    double x;
  };

  State step(RandomStream& rng, State s) const;
  double dt() const noexcept { return dt_; }

 private:
  ModelParams p_;
  double dt_;
  CirTransition cir_;
  double coupling_;
  double orth_scale_;
};

PathGrid simulate_heston_path(const ModelParams& params, std::size_t n_steps, double dt,
                              RandomStream& rng);

// Functionals of the critical companion on [0, 1] started from (0, 0):
//   dY = a dt + sigma1 sqrt(Y) dW,
//   dX = alpha dt + sigma2 sqrt(Y) (rho dW + sqrt(1 - rho^2) dB).
struct CriticalCompanion {
  double y1;
  double int_y;
  double x1;
};

// Requires a > sigma1^2 / 2 (DomainError).
CriticalCompanion simulate_critical_companion(const ModelParams& params, std::size_t n_steps,
                                              RandomStream& rng);

// dY = a dt + sigma1 sqrt(Y) dW from y0, observed at horizon -1/b.
struct SupercriticalCompanion {
  double y_end;
  double int_y;
  double int_inv_y;
};

// Requires b < 0 (RegimeError).
SupercriticalCompanion simulate_supercritical_companion(const ModelParams& params,
                                                        std::size_t n_steps, RandomStream& rng);

inline constexpr std::size_t kDefaultCompanionSteps = 1000;

}  // namespace heston
