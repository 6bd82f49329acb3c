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
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace heston {

// A (Y, X) trajectory sampled on a uniform grid t_k = t0 + k * dt.
// Invariants: at least two points, equal lengths, dt > 0, every Y > 0.
class PathGrid {
 public:
  PathGrid(double dt, std::vector<double> y, std::vector<double> x, double t0 = 0.0);

  double dt() const noexcept { return dt_; }
  double t0() const noexcept { return t0_; }
  std::size_t size() const noexcept { return y_.size(); }
  std::size_t steps() const noexcept { return y_.size() - 1; }
  double t_end() const noexcept { return static_cast<double>(steps()) * dt_; }

  std::span<const double> y() const noexcept { return y_; }
  std::span<const double> x() const noexcept { return x_; }

  double min_y() const noexcept;

  // Every stride-th point; the grid must divide evenly.
  PathGrid subsample(std::size_t stride) const;

  // Points [first, last] inclusive, re-based so that t0 shifts accordingly.
  PathGrid slice(std::size_t first, std::size_t last) const;

 private:
  double dt_;
  double t0_;
  std::vector<double> y_;
  std::vector<double> x_;
};

// CSV with header "t,y,x". The time column must be uniform: every spacing
// agrees with the mean spacing to relative tolerance 1e-9.
PathGrid read_path_csv(std::istream& in);
PathGrid read_path_csv(const std::string& file);

void write_path_csv(std::ostream& out, const PathGrid& path);
void write_path_csv(const std::string& file, const PathGrid& path);

}  // namespace heston
