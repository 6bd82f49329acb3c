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
#include "heston/linalg.hpp"

#include <cmath>

namespace heston {

Mat2 spd_sqrt(const Mat2& m) {
  const double s = std::sqrt(det(m));
  const double t = std::sqrt(m[0][0] + m[1][1] + 2.0 * s);
  return {{{(m[0][0] + s) / t, m[0][1] / t}, {m[1][0] / t, (m[1][1] + s) / t}}};
}

template <std::size_t N>
std::optional<Mat<N>> cholesky(const Mat<N>& m) {
  Mat<N> l{};
  for (std::size_t j = 0; j < N; ++j) {
    double diag = m[j][j];
    for (std::size_t k = 0; k < j; ++k) diag -= l[j][k] * l[j][k];
    if (!(diag > 0.0)) return std::nullopt;
    l[j][j] = std::sqrt(diag);
    for (std::size_t i = j + 1; i < N; ++i) {
      double s = m[i][j];
      for (std::size_t k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
      l[i][j] = s / l[j][j];
    }
  }
  return l;
}

template std::optional<Mat2> cholesky<2>(const Mat2&);
template std::optional<Mat4> cholesky<4>(const Mat4&);

}  // namespace heston
