// Copyright 2026 The lpplab Authors.
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

#include "lpplab/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lpplab/errors.hpp"

namespace lpp {

Box hull(const Box& a, const Box& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  return {std::min(a.x0, b.x0), std::min(a.y0, b.y0), std::max(a.x1, b.x1),
          std::max(a.y1, b.y1)};
}

Box hull(const std::vector<LatticePoint>& pts) {
  Box b;
  for (const auto& p : pts) b = hull(b, Box::spanning(p, p));
  return b;
}

std::vector<LatticePoint> LatticeSegment::points() const {
  std::vector<LatticePoint> out;
  out.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int i = 0; i < count; ++i) out.push_back(at(i));
  return out;
}

Box LatticeSegment::bounds() const {
  if (count <= 0) return {};
  const LatticePoint a = start;
  const LatticePoint b = at(count - 1);
  return {std::min(a.x, b.x), std::min(a.y, b.y), std::max(a.x, b.x),
          std::max(a.y, b.y)};
}

bool AntidiagSegment::contains(LatticePoint p) const {
  return rank_of(p).has_value();
}

std::optional<int> AntidiagSegment::rank_of(LatticePoint p) const {
  if (antidiag(p) != sum()) return std::nullopt;
  const int i = center.x - p.x;
  if (i < -half_span || i > half_span) return std::nullopt;
  return i + half_span;
}

std::vector<LatticePoint> AntidiagSegment::points() const {
  return as_segment().points();
}

LatticeSegment AntidiagSegment::as_segment() const {
  return {point(-half_span), kUpLeft, size()};
}

Box AntidiagSegment::bounds() const { return as_segment().bounds(); }

int two_thirds_floor(int n, double factor) {
  require(n >= 1, "scale n must be >= 1");
  require(factor > 0.0, "width factor must be positive");
  // k = floor(factor * n^{2/3}) <=> k^3 <= factor^3 n^2 < (k+1)^3.
  const long double target = static_cast<long double>(factor) * factor *
                             factor * static_cast<long double>(n) * n;
  auto k = static_cast<long long>(std::floor(factor * std::cbrt(double(n) * n)));
  auto cube = [](long long v) { return static_cast<long double>(v) * v * v; };
  while (k > 0 && cube(k) > target) --k;
  while (cube(k + 1) <= target) ++k;
  return static_cast<int>(k);
}

AntidiagSegment antidiag_segment(int n, LatticePoint center,
                                 double width_factor) {
  return {center, two_thirds_floor(n, width_factor)};
}

ParallelogramRegion::ParallelogramRegion(LatticeSegment base,
                                         LatticePoint displacement)
    : base_(base), displacement_(displacement) {
  require(base.count >= 1, "parallelogram base must be non-empty");
}

LatticeSegment ParallelogramRegion::far_side() const {
  return {base_.start + displacement_, base_.step, base_.count};
}

std::pair<int, int> ParallelogramRegion::slope() const {
  int num = displacement_.y;
  int den = displacement_.x;
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const int g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return {num, den};
}

bool ParallelogramRegion::contains(LatticePoint p) const {
  // p - start = a * side + b * displacement with a, b in [0, 1].
  const std::int64_t sx = std::int64_t(base_.step.x) * (base_.count - 1);
  const std::int64_t sy = std::int64_t(base_.step.y) * (base_.count - 1);
  const std::int64_t qx = p.x - base_.start.x;
  const std::int64_t qy = p.y - base_.start.y;
  const std::int64_t dx = displacement_.x;
  const std::int64_t dy = displacement_.y;
  const std::int64_t det = sx * dy - sy * dx;
  if (det == 0) {
    // Degenerate base (single point): region is the segment start..start+D.
    if (qx * dy - qy * dx != 0) return false;
    const std::int64_t dot = qx * dx + qy * dy;
    return dot >= 0 && dot <= dx * dx + dy * dy;
  }
  std::int64_t a_num = qx * dy - qy * dx;
  std::int64_t b_num = sx * qy - sy * qx;
  std::int64_t den = det;
  if (den < 0) {
    a_num = -a_num;
    b_num = -b_num;
    den = -den;
  }
  return a_num >= 0 && a_num <= den && b_num >= 0 && b_num <= den;
}

Box ParallelogramRegion::bounds() const {
  return hull(base_.bounds(), far_side().bounds());
}

}  // namespace lpp
