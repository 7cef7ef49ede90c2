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

#ifndef LPPLAB_LATTICE_HPP_
#define LPPLAB_LATTICE_HPP_

#include <cstdint>
#include <optional>
#include <vector>

namespace lpp {

struct LatticePoint {
  int x = 0;
  int y = 0;

  friend constexpr bool operator==(LatticePoint, LatticePoint) = default;
  friend constexpr LatticePoint operator+(LatticePoint a, LatticePoint b) {
    return {a.x + b.x, a.y + b.y};
  }
  friend constexpr LatticePoint operator-(LatticePoint a, LatticePoint b) {
    return {a.x - b.x, a.y - b.y};
  }
  friend constexpr LatticePoint operator*(int k, LatticePoint a) {
    return {k * a.x, k * a.y};
  }
};

// Coordinatewise order u <= v. Not a total order; see AntidiagSegment for the
// order used along anti-diagonals.
constexpr bool precedes(LatticePoint u, LatticePoint v) {
  return u.x <= v.x && u.y <= v.y;
}

// Anti-diagonal index x + y. The line x + y = 2r is the r-th diagonal line.
constexpr int antidiag(LatticePoint p) { return p.x + p.y; }

// Position along an anti-diagonal, increasing in the (-1, 1) direction.
constexpr int antidiag_offset(LatticePoint p) { return p.y - p.x; }

// Inverse of (antidiag, antidiag_offset); both must share parity.
constexpr LatticePoint from_antidiag(int s, int d) {
  return {(s - d) / 2, (s + d) / 2};
}

inline constexpr LatticePoint kRight{1, 0};
inline constexpr LatticePoint kUp{0, 1};
inline constexpr LatticePoint kUpLeft{-1, 1};

// Inclusive axis-aligned bounding box.
struct Box {
  int x0 = 0;
  int y0 = 0;
  int x1 = -1;
  int y1 = -1;

  static constexpr Box spanning(LatticePoint lo, LatticePoint hi) {
    return {lo.x, lo.y, hi.x, hi.y};
  }

  constexpr bool empty() const { return x1 < x0 || y1 < y0; }
  constexpr int width() const { return empty() ? 0 : x1 - x0 + 1; }
  constexpr int height() const { return empty() ? 0 : y1 - y0 + 1; }
  constexpr std::int64_t area() const {
    return static_cast<std::int64_t>(width()) * height();
  }
  constexpr bool contains(LatticePoint p) const {
    return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1;
  }
  constexpr bool contains(const Box& b) const {
    return b.empty() || (b.x0 >= x0 && b.x1 <= x1 && b.y0 >= y0 && b.y1 <= y1);
  }
  // Row-major index; caller guarantees contains(p).
  constexpr std::int64_t index(LatticePoint p) const {
    return static_cast<std::int64_t>(p.y - y0) * width() + (p.x - x0);
  }
  constexpr LatticePoint lower() const { return {x0, y0}; }
  constexpr LatticePoint upper() const { return {x1, y1}; }

  friend constexpr bool operator==(const Box&, const Box&) = default;
};

Box hull(const Box& a, const Box& b);
Box hull(const std::vector<LatticePoint>& pts);

// Evenly stepped run of lattice points: start, start + step, ...
struct LatticeSegment {
  LatticePoint start;
  LatticePoint step = kUpLeft;
  int count = 1;

  LatticePoint at(int i) const { return start + i * step; }
  std::vector<LatticePoint> points() const;
  Box bounds() const;
};

// Points center + i * (-1, 1) for i in [-half_span, half_span]. Index order is
// the segment order u < v iff v = u + i(-1, 1) with i > 0.
struct AntidiagSegment {
  LatticePoint center;
  int half_span = 0;

  int size() const { return 2 * half_span + 1; }
  int sum() const { return antidiag(center); }
  LatticePoint point(int i) const { return center + i * kUpLeft; }
  // Point by zero-based rank in segment order (rank 0 is the lowest point).
  LatticePoint at_rank(int rank) const { return point(rank - half_span); }
  bool contains(LatticePoint p) const;
  std::optional<int> rank_of(LatticePoint p) const;
  std::vector<LatticePoint> points() const;
  LatticeSegment as_segment() const;
  Box bounds() const;
};

// floor(factor * n^{2/3}), exact when factor^3 n^2 is an integer cube boundary.
int two_thirds_floor(int n, double factor = 1.0);

// Segment of half-span floor(width_factor * n^{2/3}) centred at `center`.
AntidiagSegment antidiag_segment(int n, LatticePoint center,
                                 double width_factor = 1.0);

// Parallelogram spanned by a base segment and an integer displacement.
// Membership is decided with exact integer cross products.
class ParallelogramRegion {
 public:
  ParallelogramRegion(LatticeSegment base, LatticePoint displacement);

  const LatticeSegment& near_side() const { return base_; }
  LatticeSegment far_side() const;
  LatticePoint displacement() const { return displacement_; }
  // dy/dx of the displacement as an exact fraction (num, den), den >= 0.
  std::pair<int, int> slope() const;
  bool contains(LatticePoint p) const;
  Box bounds() const;

 private:
  LatticeSegment base_;
  LatticePoint displacement_;
};

}  // namespace lpp

#endif  // LPPLAB_LATTICE_HPP_
