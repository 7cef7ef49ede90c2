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

#include "lpplab/batch_passage.hpp"

#include <algorithm>
#include <string>

#include "lpplab/errors.hpp"

#if defined(__AVX512F__)
#include <immintrin.h>
#endif

namespace lpp {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// The sweep carries U(v) = T(v) + xi(v) per lane, so a cell costs one max
// and one add: T(v) = max(U(v - e1), U(v - e2)) and U(v) = T(v) + xi(v).
// These are the very operations of the single-source kernel, in the same
// order, so every T agrees bit for bit. Unreachable lanes hold -inf.

struct Injection {
  int x;
  int lane;
};

struct TargetSlot {
  int x;
  int index;
};

// Rows advanced together along a skewed wavefront: cell i - r of row y + r
// depends only on cells finished in the previous step, so several max-add
// chains are in flight at once.
constexpr int kSkew = 2;

// One row being swept.
struct RowRef {
  double* cur;          // U of this row
  const double* prev;   // U of the row below
  const double* xi;     // weights of this row
  std::uint16_t* bits;  // argmax bit per lane: 1 = from the left
  std::uint16_t reach_row;  // lanes whose source row is at or below
};

// Lanes whose source column is at or left of each column.
struct Reach {
  const std::uint16_t* col;
};

#if defined(__AVX512F__)
// Cell i of `row`; l0/l1 carry U of cell i - 1. Returns the number of
// exact ties among lanes that can reach the cell.
inline std::uint64_t step(const RowRef& row, const Reach& reach, int i,
                          __m512d& l0, __m512d& l1) {
  const double* below = row.prev + static_cast<std::ptrdiff_t>(i) * kLanes;
  double* c = row.cur + static_cast<std::ptrdiff_t>(i) * kLanes;
  const __m512d b0 = _mm512_loadu_pd(below);
  const __m512d b1 = _mm512_loadu_pd(below + 8);
  const __mmask8 g0 = _mm512_cmp_pd_mask(l0, b0, _CMP_GT_OQ);
  const __mmask8 g1 = _mm512_cmp_pd_mask(l1, b1, _CMP_GT_OQ);
  const __mmask8 e0 = _mm512_cmp_pd_mask(l0, b0, _CMP_EQ_OQ);
  const __mmask8 e1 = _mm512_cmp_pd_mask(l1, b1, _CMP_EQ_OQ);
  const __m512d w = _mm512_set1_pd(row.xi[i]);
  l0 = _mm512_add_pd(_mm512_max_pd(l0, b0), w);
  l1 = _mm512_add_pd(_mm512_max_pd(l1, b1), w);
  _mm512_storeu_pd(c, l0);
  _mm512_storeu_pd(c + 8, l1);
  row.bits[i] = static_cast<std::uint16_t>(_mm512_kunpackb(g1, g0));
  const unsigned eq = _cvtmask16_u32(_mm512_kunpackb(e1, e0)) &
                      row.reach_row & reach.col[i];
  return static_cast<std::uint64_t>(__builtin_popcount(eq));
}

std::uint64_t sweep_segment(const RowRef& row, const Reach& reach, int i0,
                            int i1) {
  std::uint64_t ties = 0;
  const double* left = row.cur + static_cast<std::ptrdiff_t>(i0 - 1) * kLanes;
  __m512d l0 = _mm512_loadu_pd(left);
  __m512d l1 = _mm512_loadu_pd(left + 8);
  for (int i = i0; i < i1; ++i) ties += step(row, reach, i, l0, l1);
  return ties;
}

// Sweeps kSkew full rows in which no source starts; rows[r].prev is
// rows[r - 1].cur for r > 0. Needs w >= kSkew.
std::uint64_t sweep_rows(const RowRef* rows, const Reach& reach, int w) {
  std::uint64_t ties = 0;
  const __m512d ninf = _mm512_set1_pd(kNegInf);
  __m512d l[kSkew][2];
  for (int r = 0; r < kSkew; ++r) l[r][0] = l[r][1] = ninf;
  for (int i = 0; i < kSkew - 1; ++i) {
    for (int r = 0; r <= i; ++r) {
      ties += step(rows[r], reach, i - r, l[r][0], l[r][1]);
    }
  }
  for (int i = kSkew - 1; i < w; ++i) {
#pragma GCC unroll 4
    for (int r = 0; r < kSkew; ++r) {
      ties += step(rows[r], reach, i - r, l[r][0], l[r][1]);
    }
  }
  for (int i = w; i < w + kSkew - 1; ++i) {
    for (int r = i - w + 1; r < kSkew; ++r) {
      ties += step(rows[r], reach, i - r, l[r][0], l[r][1]);
    }
  }
  return ties;
}
#else
std::uint64_t sweep_segment(const RowRef& row, const Reach& reach, int i0,
                            int i1) {
  std::uint64_t ties = 0;
  for (int i = i0; i < i1; ++i) {
    const double* below = row.prev + static_cast<std::ptrdiff_t>(i) * kLanes;
    double* c = row.cur + static_cast<std::ptrdiff_t>(i) * kLanes;
    const double* left = c - kLanes;
    const double w = row.xi[i];
    std::uint32_t gt = 0;
    std::uint32_t eq = 0;
    for (int l = 0; l < kLanes; ++l) {
      gt |= static_cast<std::uint32_t>(left[l] > below[l]) << l;
      eq |= static_cast<std::uint32_t>(left[l] == below[l]) << l;
      c[l] = std::max(left[l], below[l]) + w;
    }
    row.bits[i] = static_cast<std::uint16_t>(gt);
    ties += static_cast<std::uint64_t>(
        __builtin_popcount(eq & row.reach_row & reach.col[i]));
  }
  return ties;
}

std::uint64_t sweep_rows(const RowRef* rows, const Reach& reach, int w) {
  std::uint64_t ties = 0;
  for (int r = 0; r < kSkew; ++r) ties += sweep_segment(rows[r], reach, 0, w);
  return ties;
}
#endif

}  // namespace

void SourceBatch::check_traceable(int lane, LatticePoint v) const {
  require(lane >= 0 && lane < lanes(), "SourceBatch: lane out of range");
  require(!backsteps_.empty(), "SourceBatch: backsteps were not kept");
  require(box_.contains(v) && precedes(sources_[lane], v),
          "SourceBatch: site not reachable from the lane's source");
}

Path SourceBatch::geodesic(int lane, LatticePoint v) const {
  check_traceable(lane, v);
  const LatticePoint s = sources_[lane];
  Path path(static_cast<std::size_t>((v.x - s.x) + (v.y - s.y) + 1));
  auto out = path.rbegin();
  trace(lane, v, [&](LatticePoint p) {
    *out++ = p;
    return true;
  });
  return path;
}

SourceBatch run_batch(const WeightField& field,
                      std::span<const LatticePoint> sources, const Box& region,
                      std::span<const LatticePoint> targets,
                      const BatchOptions& options) {
  require(!sources.empty() && sources.size() <= kLanes,
          "run_batch: need between 1 and 16 sources");
  for (const auto& s : sources) {
    require(region.contains(s), "run_batch: source outside region");
  }
  require(field.region().contains(region),
          "run_batch: region not covered by the weight field");

  SourceBatch out;
  out.sources_.assign(sources.begin(), sources.end());
  out.targets_.assign(targets.begin(), targets.end());
  const Box lo = hull(out.sources_);
  out.box_ = Box{lo.x0, lo.y0, region.x1, region.y1};
  const Box& box = out.box_;
  for (const auto& t : targets) {
    require(region.contains(t), "run_batch: target outside region");
  }

  const int w = box.width();
  const int lanes = static_cast<int>(sources.size());
  std::int64_t bytes =
      std::int64_t{kSkew + 1} * (w + 1) * kLanes * std::int64_t{sizeof(double)};
  if (options.keep_backsteps) bytes += box.area() * std::int64_t{sizeof(std::uint16_t)};
  check_memory(bytes, "batched passage sweep");

  if (options.keep_backsteps) {
    out.backsteps_.assign(static_cast<std::size_t>(box.area()), 0);
  }
  out.values_.assign(targets.size() * kLanes, kNegInf);
  out.through_bits_.assign(targets.size(), 0);

  // Per row: where sources start, and which targets to record.
  std::vector<std::vector<Injection>> inject(box.height());
  std::vector<std::uint16_t> reach_col(static_cast<std::size_t>(w), 0);
  for (int l = 0; l < lanes; ++l) {
    inject[sources[l].y - box.y0].push_back({sources[l].x, l});
    for (int i = sources[l].x - box.x0; i < w; ++i) {
      reach_col[i] |= static_cast<std::uint16_t>(1u << l);
    }
  }
  for (auto& row : inject) {
    std::sort(row.begin(), row.end(),
              [](const Injection& a, const Injection& b) { return a.x < b.x; });
  }
  std::vector<std::vector<TargetSlot>> record(box.height());
  // Targets below or left of every source stay unreachable.
  for (int t = 0; t < static_cast<int>(targets.size()); ++t) {
    if (box.contains(targets[t])) {
      record[targets[t].y - box.y0].push_back({targets[t].x, t});
    }
  }
  const Reach reach{reach_col.data()};

  const bool track = options.through.has_value();
  const LatticePoint via = track ? *options.through : LatticePoint{};
  const bool via_in_box = track && box.contains(via);
  std::uint16_t via_lanes = 0;  // lanes whose source lies below `via`
  for (int l = 0; l < lanes; ++l) {
    if (precedes(sources[l], via)) via_lanes |= static_cast<std::uint16_t>(1u << l);
  }

  // Ring of row buffers, w cells of kLanes doubles each plus a -inf
  // sentinel at column -1. Slot 0 starts as the all -inf row below the box.
  constexpr int kSlots = kSkew + 1;
  const std::size_t stride = static_cast<std::size_t>(w + 1) * kLanes;
  std::vector<double> ring(stride * kSlots, kNegInf);
  auto row_values = [&](int y) {
    return ring.data() + stride * ((y - box.y0 + 1) % kSlots) + kLanes;
  };
  std::vector<std::uint16_t> flag_a(static_cast<std::size_t>(w + 1), 0);
  std::vector<std::uint16_t> flag_b(static_cast<std::size_t>(w + 1), 0);
  std::uint16_t* fcur = flag_a.data() + 1;
  std::uint16_t* fprev = flag_b.data() + 1;
  std::vector<std::uint16_t> scratch_bits(static_cast<std::size_t>(w) * kSkew);

  std::uint64_t ties = 0;
  std::uint16_t reach_row = 0;
  const int fx0 = field.region().x0;
  auto row_ref = [&](int y, int slot) {
    RowRef r;
    r.cur = row_values(y);
    r.prev = row_values(y - 1);
    r.xi = field.row(y) + (box.x0 - fx0);
    r.bits = options.keep_backsteps
                 ? out.backsteps_.data() + static_cast<std::int64_t>(y - box.y0) * w
                 : scratch_bits.data() + static_cast<std::ptrdiff_t>(slot) * w;
    for (const auto& j : inject[y - box.y0]) {
      reach_row |= static_cast<std::uint16_t>(1u << j.lane);
    }
    r.reach_row = reach_row;
    return r;
  };

  int y = box.y0;
  while (y <= box.y1) {
    // Take kSkew rows at once when none of them starts a source.
    int group = 1;
    if (w >= kSkew && y + kSkew - 1 <= box.y1) {
      group = kSkew;
      for (int r = 0; r < kSkew; ++r) {
        if (!inject[y + r - box.y0].empty()) group = 1;
      }
    }
    RowRef rows[kSkew];
    for (int r = 0; r < group; ++r) rows[r] = row_ref(y + r, r);
    if (group == kSkew) {
      ties += sweep_rows(rows, reach, w);
    } else {
      // Sweep up to each source in the row, then start it: T = 0 there,
      // so U is the site's own weight. Its -inf = -inf comparison was
      // counted as a tie and is taken back.
      const RowRef& row = rows[0];
      int i0 = 0;
      for (const auto& j : inject[y - box.y0]) {
        const int i = j.x - box.x0;
        if (i >= i0) {
          ties += sweep_segment(row, reach, i0, i + 1);
          i0 = i + 1;
        }
        row.cur[static_cast<std::ptrdiff_t>(i) * kLanes + j.lane] = 0.0 + row.xi[i];
        --ties;
      }
      ties += sweep_segment(row, reach, i0, w);
    }

    for (int r = 0; r < group; ++r, ++y) {
      const std::uint16_t* bits = rows[r].bits;
      if (track) {
        const int iv = via_in_box && via.y == y ? via.x - box.x0 : -1;
        for (int i = 0; i < w; ++i) {
          fcur[i] = i == iv ? via_lanes
                            : static_cast<std::uint16_t>((bits[i] & fcur[i - 1]) |
                                                         (~bits[i] & fprev[i]));
        }
      }
      for (const auto& slot : record[y - box.y0]) {
        const std::ptrdiff_t i = slot.x - box.x0;
        const double* left = rows[r].cur + (i - 1) * kLanes;
        const double* below = rows[r].prev + i * kLanes;
        for (int l = 0; l < lanes; ++l) {
          out.values_[slot.index * kLanes + l] =
              sources[l] == LatticePoint{slot.x, y} ? 0.0
                                                    : std::max(left[l], below[l]);
        }
        if (track) out.through_bits_[slot.index] = fcur[i];
      }
      std::swap(fcur, fprev);
    }
  }
  out.ties_ = ties;
  return out;
}

std::vector<SourceBatch> run_batches(const WeightField& field,
                                     std::span<const LatticePoint> sources,
                                     const Box& region,
                                     std::span<const LatticePoint> targets,
                                     const BatchOptions& options) {
  std::vector<SourceBatch> batches;
  for (std::size_t i = 0; i < sources.size(); i += kLanes) {
    const std::size_t k = std::min<std::size_t>(kLanes, sources.size() - i);
    batches.push_back(
        run_batch(field, sources.subspan(i, k), region, targets, options));
  }
  return batches;
}

}  // namespace lpp
