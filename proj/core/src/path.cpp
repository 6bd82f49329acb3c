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
#include "heston/path.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "heston/error.hpp"

namespace heston {

namespace {

constexpr double kGridTolerance = 1e-9;

double parse_double(std::string_view field, std::size_t line_no) {
  while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
  while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r'))
    field.remove_suffix(1);
  double v = 0.0;
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, v);
  if (ec != std::errc() || ptr != end || field.empty())
    throw ConfigError("path csv line " + std::to_string(line_no) + ": bad number '" +
                      std::string(field) + "'");
  return v;
}

}  // namespace

PathGrid::PathGrid(double dt, std::vector<double> y, std::vector<double> x, double t0)
    : dt_(dt), t0_(t0), y_(std::move(y)), x_(std::move(x)) {
  if (!(dt_ > 0.0) || !std::isfinite(dt_)) throw DomainError("path dt must be positive");
  if (y_.size() != x_.size()) throw DegeneratePathError("path y and x differ in length");
  if (y_.size() < 2) throw DegeneratePathError("path needs at least two points");
  for (std::size_t k = 0; k < y_.size(); ++k) {
    if (!(y_[k] > 0.0) || !std::isfinite(y_[k]))
      throw DomainError("path y must be strictly positive (index " + std::to_string(k) + ")");
    if (!std::isfinite(x_[k]))
      throw DomainError("path x must be finite (index " + std::to_string(k) + ")");
  }
}

double PathGrid::min_y() const noexcept { return *std::min_element(y_.begin(), y_.end()); }

PathGrid PathGrid::subsample(std::size_t stride) const {
  if (stride == 0 || steps() % stride != 0)
    throw DomainError("subsample stride must divide the number of steps");
  std::vector<double> y;
  std::vector<double> x;
  y.reserve(steps() / stride + 1);
  x.reserve(steps() / stride + 1);
  for (std::size_t k = 0; k < y_.size(); k += stride) {
    y.push_back(y_[k]);
    x.push_back(x_[k]);
  }
  return PathGrid(dt_ * static_cast<double>(stride), std::move(y), std::move(x), t0_);
}

PathGrid PathGrid::slice(std::size_t first, std::size_t last) const {
  if (first >= last || last >= y_.size()) throw DomainError("invalid path slice");
  return PathGrid(dt_, {y_.begin() + first, y_.begin() + last + 1},
                  {x_.begin() + first, x_.begin() + last + 1},
                  t0_ + static_cast<double>(first) * dt_);
}

PathGrid read_path_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ConfigError("path csv is empty");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "t,y,x") throw ConfigError("path csv header must be 't,y,x', got '" + line + "'");

  std::vector<double> t, y, x;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    std::string_view view(line);
    const auto c1 = view.find(',');
    const auto c2 = c1 == std::string_view::npos ? c1 : view.find(',', c1 + 1);
    if (c2 == std::string_view::npos || view.find(',', c2 + 1) != std::string_view::npos)
      throw ConfigError("path csv line " + std::to_string(line_no) + ": expected 3 columns");
    t.push_back(parse_double(view.substr(0, c1), line_no));
    y.push_back(parse_double(view.substr(c1 + 1, c2 - c1 - 1), line_no));
    x.push_back(parse_double(view.substr(c2 + 1), line_no));
  }
  if (t.size() < 2) throw DegeneratePathError("path csv needs at least two rows");

  const double dt = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
  if (!(dt > 0.0)) throw ConfigError("path csv time column must be increasing");
  for (std::size_t k = 1; k < t.size(); ++k) {
    // Spacing is checked to 1e-9 relative, or to the rounding of the time
    // stamps themselves when those are coarser (long, finely sampled paths).
    const double representable = 8.0 * std::numeric_limits<double>::epsilon() * std::abs(t[k]);
    if (std::abs((t[k] - t[k - 1]) - dt) > std::max(kGridTolerance * dt, representable))
      throw ConfigError("path csv grid is not uniform at row " + std::to_string(k + 1));
  }
  return PathGrid(dt, std::move(y), std::move(x), t.front());
}

PathGrid read_path_csv(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open path csv '" + file + "'");
  return read_path_csv(in);
}

void write_path_csv(std::ostream& out, const PathGrid& path) {
  std::ostringstream buf;
  buf << std::setprecision(17) << "t,y,x\n";
  const auto y = path.y();
  const auto x = path.x();
  for (std::size_t k = 0; k < path.size(); ++k)
    buf << path.t0() + static_cast<double>(k) * path.dt() << ',' << y[k] << ',' << x[k] << '\n';
  out << buf.str();
}

void write_path_csv(const std::string& file, const PathGrid& path) {
  std::ofstream out(file);
  if (!out) throw ConfigError("cannot write path csv '" + file + "'");
  write_path_csv(out, path);
}

}  // namespace heston
