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

#include "lpplab/stage_grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lpplab/errors.hpp"

namespace lpp {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

StageGrid StageGrid::on_scale(int n, int h, int m, int wfac, LatticePoint start,
                              LatticePoint end) {
  require(n >= 1 && h >= 1 && m >= 1 && wfac >= 1,
          "StageGrid: need n, h, m, wfac >= 1");
  StageGrid g;
  g.start_center = start;
  g.end_center = end;
  g.stages = h;
  g.per_unit = m;
  g.width = std::max(1, two_thirds_floor(n) / m);
  g.cells = 2 * wfac * m;
  g.first_cell = -wfac * m;
  g.origin = g.first_cell * g.width;
  return g;
}

StageGrid StageGrid::single_cell(LatticePoint start, LatticePoint end, int stages,
                                 int half_span) {
  require(stages >= 1 && half_span >= 0, "StageGrid: bad single-cell grid");
  StageGrid g;
  g.start_center = start;
  g.end_center = end;
  g.stages = stages;
  g.width = 2 * half_span + 1;
  g.cells = 1;
  g.first_cell = 0;
  g.origin = -half_span;
  return g;
}

int StageGrid::line(int i) const {
  const int s0 = antidiag(start_center);
  const int ds = antidiag(end_center) - s0;
  if (ds % 2 == 0) {
    return s0 + 2 * static_cast<int>(std::lround(0.5 * ds * i / stages));
  }
  return s0 + static_cast<int>(std::lround(static_cast<double>(ds) * i / stages));
}

int StageGrid::center_offset(int s) const {
  const long s0 = antidiag(start_center);
  const long s1 = antidiag(end_center);
  const long d0 = antidiag_offset(start_center);
  const long d1 = antidiag_offset(end_center);
  long c = s1 == s0 ? d0 : floor_div(d0 * (s1 - s0) + (d1 - d0) * (s - s0), s1 - s0);
  if (((c - s) % 2 + 2) % 2 != 0) --c;
  return static_cast<int>(c);
}

int StageGrid::rank(LatticePoint p) const {
  return (antidiag_offset(p) - center_offset(antidiag(p))) / 2;
}

std::optional<int> StageGrid::cell_of(LatticePoint p) const {
  const int k = rank(p) - origin;
  if (k < 0 || k >= cells * width) return std::nullopt;
  return first_cell + k / width;
}

std::vector<LatticePoint> StageGrid::cell_points(int i, int j) const {
  require(i >= 0 && i <= stages, "StageGrid: stage line out of range");
  require(j >= first_cell && j < first_cell + cells, "StageGrid: cell out of range");
  const int s = line(i);
  const int dc = center_offset(s);
  std::vector<LatticePoint> out;
  const int k0 = origin + (j - first_cell) * width;
  for (int k = k0; k < k0 + width; ++k) out.push_back(from_antidiag(s, dc + 2 * k));
  return out;
}

std::optional<GridEncoding> path_encoding(const Path& path, const StageGrid& grid) {
  require(is_monotone(path), "path_encoding: path is not monotone");
  const int s_first = grid.line(0);
  const int s_last = grid.line(grid.stages);
  require(!path.empty() && antidiag(path.front()) <= s_first &&
              antidiag(path.back()) >= s_last,
          "path_encoding: path does not cross every stage line");
  const int base = antidiag(path.front());
  for (int s = s_first; s <= s_last; ++s) {
    if (!grid.cell_of(path[s - base])) return std::nullopt;
  }
  GridEncoding enc;
  enc.h = grid.stages;
  enc.m = grid.per_unit;
  for (int i = 0; i <= grid.stages; ++i) {
    enc.j.push_back(*grid.cell_of(path[grid.line(i) - base]));
  }
  return enc;
}

std::optional<double> constrained_best(const WeightField& field,
                                       const AntidiagSegment& start,
                                       const AntidiagSegment& end,
                                       const StageGrid& grid,
                                       const GridEncoding& encoding) {
  require(encoding.h == grid.stages &&
              static_cast<int>(encoding.j.size()) == grid.stages + 1,
          "constrained_best: encoding does not match the grid");
  require(start.sum() == grid.line(0) && end.sum() == grid.line(grid.stages),
          "constrained_best: segments must lie on the first and last lines");

  // Points of the current stage with their best value so far.
  std::vector<LatticePoint> pts;
  std::vector<double> vals;
  for (const auto& p : grid.cell_points(0, encoding.j[0])) {
    if (start.contains(p)) {
      pts.push_back(p);
      vals.push_back(0.0);
    }
  }

  for (int i = 1; i <= grid.stages; ++i) {
    std::vector<LatticePoint> next;
    for (const auto& p : grid.cell_points(i, encoding.j[i])) {
      if (i < grid.stages || end.contains(p)) next.push_back(p);
    }
    if (pts.empty() || next.empty()) return std::nullopt;

    const Box box = hull(hull(pts), hull(next));
    require(field.region().contains(box), "constrained_best: field too small");
    check_memory(box.area() * std::int64_t{sizeof(double)}, "constrained stage DP");

    // G(v) = best value of a path started at some point of the stage,
    // weights counted up to but excluding v.
    const int w = box.width();
    std::vector<double> g(static_cast<std::size_t>(box.area()), kNegInf);
    std::vector<double> init(g.size(), kNegInf);
    for (std::size_t t = 0; t < pts.size(); ++t) init[box.index(pts[t])] = vals[t];
    for (int y = box.y0; y <= box.y1; ++y) {
      const double* xi = field.row(y) + (box.x0 - field.region().x0);
      const double* xib = y > box.y0 ? field.row(y - 1) + (box.x0 - field.region().x0)
                                     : nullptr;
      double* cur = g.data() + static_cast<std::int64_t>(y - box.y0) * w;
      const double* below = y > box.y0 ? cur - w : nullptr;
      const double* in = init.data() + static_cast<std::int64_t>(y - box.y0) * w;
      for (int x = 0; x < w; ++x) {
        double v = in[x];
        if (x > 0) v = std::max(v, cur[x - 1] + xi[x - 1]);
        if (below) v = std::max(v, below[x] + xib[x]);
        cur[x] = v;
      }
    }
    pts.clear();
    vals.clear();
    for (const auto& p : next) {
      const double v = g[box.index(p)];
      if (v != kNegInf) {
        pts.push_back(p);
        vals.push_back(v);
      }
    }
  }
  if (pts.empty()) return std::nullopt;
  return *std::max_element(vals.begin(), vals.end());
}

}  // namespace lpp
