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

// Fixed-size dense algebra for the 2x2 and 4x4 objects that appear in the
// likelihood. Row-major std::array storage.

#include <array>
#include <cstddef>
#include <optional>

namespace heston {

template <std::size_t N>
using Vec = std::array<double, N>;

template <std::size_t N>
using Mat = std::array<std::array<double, N>, N>;

using Vec2 = Vec<2>;
using Vec4 = Vec<4>;
using Mat2 = Mat<2>;
using Mat4 = Mat<4>;

template <std::size_t N>
constexpr Mat<N> identity() {
  Mat<N> m{};
  for (std::size_t i = 0; i < N; ++i) m[i][i] = 1.0;
  return m;
}

template <std::size_t N>
constexpr Vec<N> operator*(const Mat<N>& m, const Vec<N>& v) {
  Vec<N> out{};
  for (std::size_t i = 0; i < N; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < N; ++j) s += m[i][j] * v[j];
    out[i] = s;
  }
  return out;
}

template <std::size_t N>
constexpr Mat<N> operator*(const Mat<N>& a, const Mat<N>& b) {
  Mat<N> out{};
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t k = 0; k < N; ++k)
      for (std::size_t j = 0; j < N; ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

template <std::size_t N>
constexpr double dot(const Vec<N>& a, const Vec<N>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < N; ++i) s += a[i] * b[i];
  return s;
}

template <std::size_t N>
constexpr Mat<N> transpose(const Mat<N>& m) {
  Mat<N> out{};
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) out[i][j] = m[j][i];
  return out;
}

// (A ⊗ B)[2i + k][2j + l] = A[i][j] * B[k][l].
constexpr Mat4 kron(const Mat2& a, const Mat2& b) {
  Mat4 out{};
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l)
          out[2 * i + k][2 * j + l] = a[i][j] * b[k][l];
  return out;
}

constexpr Vec4 kron(const Vec2& a, const Vec2& b) {
  return {a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]};
}

constexpr double det(const Mat2& m) { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

// Caller guarantees det(m) != 0.
constexpr Mat2 inverse(const Mat2& m) {
  const double d = det(m);
  return {{{m[1][1] / d, -m[0][1] / d}, {-m[1][0] / d, m[0][0] / d}}};
}

// Symmetric positive definite square root of a 2x2 SPD matrix:
// sqrt(M) = (M + sqrt(det M) I) / sqrt(tr M + 2 sqrt(det M)).
Mat2 spd_sqrt(const Mat2& m);

// Lower-triangular Cholesky factor; nullopt if m is not positive definite.
template <std::size_t N>
std::optional<Mat<N>> cholesky(const Mat<N>& m);

extern template std::optional<Mat2> cholesky<2>(const Mat2&);
extern template std::optional<Mat4> cholesky<4>(const Mat4&);

}  // namespace heston
