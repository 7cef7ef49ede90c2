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

#include "lpplab/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "lpplab/errors.hpp"

namespace lpp {

double global_tf(const Path& g) {
  require(g.size() >= 2, "global_tf: path needs at least two vertices");
  const LatticePoint a = g.front();
  const LatticePoint b = g.back();
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len = std::hypot(dx, dy);
  double best = 0.0;
  for (const auto& p : g) {
    const double cross = dx * (p.y - a.y) - dy * (p.x - a.x);
    best = std::max(best, std::abs(cross) / len);
  }
  return best;
}

int rightmost_at_height(const Path& g, int height) {
  require(!g.empty(), "rightmost_at_height: empty path");
  const LatticePoint o = g.front();
  require(height >= 0 && height <= g.back().y - o.y,
          "rightmost_at_height: height outside the path's range");
  int best = std::numeric_limits<int>::min();
  for (const auto& p : g) {
    if (p.y - o.y == height) best = std::max(best, p.x - o.x);
    if (p.y - o.y > height) break;
  }
  return best;
}

double local_tf(const Path& g, int height, double eps) {
  const int x = rightmost_at_height(g, height);
  return std::max(0.0, x - eps * height);
}

namespace {

std::vector<LatticePoint> sorted_vertices(const Path& g,
                                          const std::optional<Stretch>& band) {
  std::vector<LatticePoint> v;
  v.reserve(g.size());
  for (const auto& p : g) {
    if (!band || band->contains(p)) v.push_back(p);
  }
  std::sort(v.begin(), v.end(), [](LatticePoint a, LatticePoint b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  });
  return v;
}

}  // namespace

bool are_disjoint(const Path& a, const Path& b, std::optional<Stretch> stretch) {
  const auto va = sorted_vertices(a, stretch);
  const auto vb = sorted_vertices(b, stretch);
  std::size_t i = 0, j = 0;
  while (i < va.size() && j < vb.size()) {
    if (va[i] == vb[j]) return false;
    const bool less = va[i].x != vb[j].x ? va[i].x < vb[j].x : va[i].y < vb[j].y;
    if (less) ++i; else ++j;
  }
  return true;
}

std::vector<int> crossing_offsets(const Path& g, int s0, int s1) {
  require(is_monotone(g), "crossing_offsets: path is not monotone");
  require(!g.empty() && antidiag(g.front()) <= s0 && antidiag(g.back()) >= s1,
          "crossing_offsets: path does not span the anti-diagonals");
  std::vector<int> out(static_cast<std::size_t>(s1 - s0 + 1));
  const int first = antidiag(g.front());
  for (int s = s0; s <= s1; ++s) out[s - s0] = antidiag_offset(g[s - first]);
  return out;
}

// --- SegmentGeodesics ------------------------------------------------------

SegmentGeodesics::SegmentGeodesics(const WeightField& field,
                                   const AntidiagSegment& a,
                                   const AntidiagSegment& b)
    : a_(a), b_(b) {
  require(a.sum() < b.sum(), "SegmentGeodesics: A must lie below B");
  const Box region = hull(a.bounds(), b.bounds());
  const std::int64_t batches = (a.size() + kLanes - 1) / kLanes;
  check_memory(batches * region.area() * std::int64_t{sizeof(std::uint16_t)},
               "argmax bits for all geodesics between two segments");
  const auto sources = a.points();
  const auto targets = b.points();
  batches_ = run_batches(field, sources, region, targets);
}

Path SegmentGeodesics::path(int i, int j) const {
  require(defined(i, j), "SegmentGeodesics: source not below target");
  return batches_[i / kLanes].geodesic(i % kLanes, target(j));
}

std::vector<int> SegmentGeodesics::offsets(int i, int j) const {
  require(defined(i, j), "SegmentGeodesics: source not below target");
  const int s0 = a_.sum();
  std::vector<int> out(static_cast<std::size_t>(b_.sum() - s0 + 1));
  trace(i, j, [&](LatticePoint p) {
    out[antidiag(p) - s0] = antidiag_offset(p);
    return true;
  });
  return out;
}

std::uint64_t SegmentGeodesics::ties() const {
  std::uint64_t t = 0;
  for (const auto& b : batches_) t += b.ties();
  return t;
}

// --- Encodings -------------------------------------------------------------

boost::multiprecision::cpp_int count_monotone_encodings(int ell, int s) {
  require(ell >= 1 && s >= 0, "count_monotone_encodings: need ell >= 1, S >= 0");
  boost::multiprecision::cpp_int r = 1;
  for (int t = 1; t <= ell; ++t) {
    r *= s + t;
    r /= t;
  }
  return r;
}

// --- Ordered subsets -------------------------------------------------------

namespace {

// Longest subsequence of idx (in order) whose keys are nondecreasing, or
// strictly decreasing when `decreasing` is set.
std::vector<int> longest_monotone(const std::vector<int>& idx,
                                  const std::vector<int>& key, bool decreasing) {
  const int k = static_cast<int>(idx.size());
  std::vector<int> len(k, 1), prev(k, -1);
  for (int b = 0; b < k; ++b) {
    for (int a = 0; a < b; ++a) {
      const bool ok = decreasing ? key[idx[a]] > key[idx[b]]
                                 : key[idx[a]] <= key[idx[b]];
      if (ok && len[a] + 1 > len[b]) {
        len[b] = len[a] + 1;
        prev[b] = a;
      }
    }
  }
  int end = static_cast<int>(std::max_element(len.begin(), len.end()) - len.begin());
  std::vector<int> out;
  for (int t = end; t >= 0; t = prev[t]) out.push_back(idx[t]);
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<int> greedy_disjoint(std::span<const Path> g,
                                 const std::vector<int>& order,
                                 const Stretch& stretch) {
  std::vector<int> taken;
  for (int i : order) {
    bool ok = true;
    for (int t : taken) ok = ok && are_disjoint(g[i], g[t], stretch);
    if (ok) taken.push_back(i);
  }
  return taken;
}

int crossing_at(const Path& g, int s) {
  const int first = antidiag(g.front());
  require(s >= first && s <= antidiag(g.back()),
          "ordered_disjoint_subset: path does not reach the stretch line");
  return antidiag_offset(g[s - first]);
}

}  // namespace

OrderedSubset ordered_disjoint_subset(std::span<const Path> geodesics,
                                      const std::array<Stretch, 4>& stretches) {
  const int k = static_cast<int>(geodesics.size());
  require(k >= 1, "ordered_disjoint_subset: no geodesics");
  for (const auto& s : stretches) {
    require(s.axis == Stretch::Axis::kAntidiag,
            "ordered_disjoint_subset: stretches must be anti-diagonal bands");
  }
  for (int i = 0; i < k; ++i) {
    require(is_monotone(geodesics[i]), "ordered_disjoint_subset: path not monotone");
    if (i > 0) {
      const LatticePoint a = geodesics[i - 1].front();
      const LatticePoint b = geodesics[i].front();
      require(antidiag(a) == antidiag(b) && antidiag_offset(a) < antidiag_offset(b),
              "ordered_disjoint_subset: start points not strictly ordered");
    }
  }

  std::vector<int> all(k);
  for (int i = 0; i < k; ++i) all[i] = i;
  std::vector<int> end_key(k);
  for (int i = 0; i < k; ++i) end_key[i] = antidiag_offset(geodesics[i].back());

  OrderedSubset best;
  auto consider = [&](const std::vector<int>& order, int t) {
    auto taken = greedy_disjoint(geodesics, order, stretches[t]);
    if (taken.size() > best.indices.size()) {
      std::sort(taken.begin(), taken.end());
      best.indices = std::move(taken);
      best.stretch = t;
    }
  };

  const auto inc = longest_monotone(all, end_key, false);
  const auto dec = longest_monotone(all, end_key, true);
  if (inc.size() >= dec.size()) {
    // Both ends ordered the same way: the family is ordered everywhere.
    for (int t = 0; t < 4; ++t) consider(inc, t);
  } else {
    const int line = stretches[0].hi;
    std::vector<int> w_key(k);
    for (int i : dec) w_key[i] = crossing_at(geodesics[i], line);
    std::vector<int> w_sorted;
    for (int i : dec) w_sorted.push_back(w_key[i]);
    std::sort(w_sorted.begin(), w_sorted.end());
    for (std::size_t a = 0; a < w_sorted.size(); ++a) {
      const bool dup = (a > 0 && w_sorted[a - 1] == w_sorted[a]) ||
                       (a + 1 < w_sorted.size() && w_sorted[a + 1] == w_sorted[a]);
      best.repeated_crossings += dup;
    }
    const auto w_inc = longest_monotone(dec, w_key, false);
    const auto w_dec = longest_monotone(dec, w_key, true);
    if (w_inc.size() >= w_dec.size()) {
      consider(w_inc, 0);
    } else {
      for (int t = 1; t < 4; ++t) consider(w_dec, t);
    }
  }
  if (best.indices.empty()) best.indices = {0};
  for (std::size_t a = 0; a < best.indices.size(); ++a) {
    for (std::size_t b = a + 1; b < best.indices.size(); ++b) {
      require(are_disjoint(geodesics[best.indices[a]], geodesics[best.indices[b]],
                           stretches[best.stretch]),
              "ordered_disjoint_subset: extracted paths intersect");
    }
  }
  return best;
}

}  // namespace lpp
