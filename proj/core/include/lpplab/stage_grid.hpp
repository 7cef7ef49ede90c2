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

#ifndef LPPLAB_STAGE_GRID_HPP_
#define LPPLAB_STAGE_GRID_HPP_

#include <optional>
#include <vector>

#include "lpplab/lattice.hpp"
#include "lpplab/passage.hpp"
#include "lpplab/weight_field.hpp"

namespace lpp {

// Stage lines are anti-diagonals s_0 < ... < s_h between two centre points.
// Along each line, points are ranked by k = (d - d_c(s)) / 2 where d = y - x
// and d_c(s) is the centre line's offset rounded down to the parity of s.
// Ranks [origin, origin + cells * width) are split into `cells` cells of
// `width` points, indexed first_cell, first_cell + 1, ...
struct StageGrid {
  LatticePoint start_center;
  LatticePoint end_center;
  int stages = 1;  // h
  int per_unit = 1;  // m, cells per n^{2/3}
  int width = 1;
  int cells = 1;
  int first_cell = 0;
  int origin = 0;

  // The grid of the thin-cylinder argument: h stages between two points,
  // cells of floor(n^{2/3}) / m points, wfac * m cells on either side.
  static StageGrid on_scale(int n, int h, int m, int wfac,
                            LatticePoint start, LatticePoint end);
  // One cell per line, covering ranks [-half_span, half_span].
  static StageGrid single_cell(LatticePoint start, LatticePoint end, int stages,
                               int half_span);

  int line(int i) const;
  int center_offset(int s) const;
  int rank(LatticePoint p) const;
  // Cell index of p on its anti-diagonal, if p lies in the covered band.
  std::optional<int> cell_of(LatticePoint p) const;
  std::vector<LatticePoint> cell_points(int i, int j) const;
};

struct GridEncoding {
  int h = 0;
  int m = 0;
  std::vector<int> j;  // cell index per stage line, length h + 1
};

// Cell of the vertex where the path meets each stage line. Empty when the
// path leaves the covered band anywhere between the first and last line.
std::optional<GridEncoding> path_encoding(const Path& path,
                                          const StageGrid& grid);

// Best weight of a path from `start` to `end` meeting every stage line i
// inside cell j_i; empty when no such path exists. Computed stage by stage,
// each stage a DP started from all points of the previous cell at once.
std::optional<double> constrained_best(const WeightField& field,
                                       const AntidiagSegment& start,
                                       const AntidiagSegment& end,
                                       const StageGrid& grid,
                                       const GridEncoding& encoding);

}  // namespace lpp

#endif  // LPPLAB_STAGE_GRID_HPP_
