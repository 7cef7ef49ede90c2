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

// Largest family of disjoint geodesics with ordered endpoints.
//
// Write G(i, j) for the geodesic from rank i of A to rank j of B. Geodesics
// with ordered endpoints never cross, so G(i, j) lies weakly below
// G(i', j') whenever i <= i' and j <= j'. Consequently a family with
// increasing ranks is pairwise disjoint as soon as consecutive members are,
// and "disjoint and above" reduces to "strictly above on every
// anti-diagonal".
//
// Let S_c be the pairs ending a valid family of size c. Each S_c is an
// up-set of the rank grid, described by a staircase h(i) = smallest j with
// (i, j) in S_c, and S_{c+1} is the set of pairs lying strictly above the
// geodesic of some corner (minimal element) of S_c that they dominate. A
// staircase is found with O(|A| + |B|) path tests by a two-pointer walk.
//
// Exact levels need one walk per corner. Two cheaper bounds usually
// settle the count first:
//   lower  a single chain, extended each time from its lowest corner;
//   upper  levels whose membership test uses the pointwise lowest of the
//          corner geodesics, a superset of the true level.

#include <algorithm>
#include <climits>
#include <functional>
#include <numeric>

#include "lpplab/errors.hpp"
#include "lpplab/geometry.hpp"

namespace lpp {
namespace {

constexpr int kNone = INT_MAX;

using Corner = std::pair<int, int>;

class LevelSweep {
 public:
  explicit LevelSweep(const SegmentGeodesics& g)
      : g_(g), na_(g.sources()), nb_(g.targets()), s0_(g.source_segment().sum()),
        jlo_(na_, kNone), jhi_(na_, -1) {
    for (int i = 0; i < na_; ++i) {
      for (int j = 0; j < nb_; ++j) {
        if (g.defined(i, j)) {
          jlo_[i] = std::min(jlo_[i], j);
          jhi_[i] = std::max(jhi_[i], j);
        }
      }
    }
  }

  // Corners of the set of all defined pairs.
  std::vector<Corner> first_corners() const { return corners(jlo_); }

  // True when G(i, j) is strictly above `ref` on every anti-diagonal.
  bool above(int i, int j, const std::vector<int>& ref) const {
    bool ok = true;
    g_.trace(i, j, [&](LatticePoint p) {
      if (antidiag_offset(p) <= ref[antidiag(p) - s0_]) {
        ok = false;
        return false;
      }
      return true;
    });
    return ok;
  }

  std::vector<int> offsets(const Corner& c) const {
    return g_.offsets(c.first, c.second);
  }

  // Smallest j per row of the pairs (i, j) with j in [lo(i), hi(i)] that
  // satisfy pred, assuming those pairs form an up-set. kNone where the row
  // has no such pair, or where it is not below a row cap in hi.
  template <class Pred>
  std::vector<int> staircase(const std::vector<int>& lo,
                             const std::vector<int>& hi, Pred&& pred) const {
    std::vector<int> h(na_, kNone);
    int prev = kNone;
    for (int i = 0; i < na_; ++i) {
      if (lo[i] > hi[i]) continue;
      int p;
      if (prev != kNone && std::max(prev, lo[i]) <= hi[i]) {
        p = std::max(prev, lo[i]);
      } else {
        if (!pred(i, hi[i])) continue;
        p = hi[i];
      }
      while (p > lo[i] && pred(i, p - 1)) --p;
      h[i] = p;
      prev = p;
    }
    return h;
  }

  // Pairs strictly dominating `c` whose geodesic lies strictly above `ref`,
  // restricted to j < cap(i).
  std::vector<int> dominated_above(const Corner& c, const std::vector<int>& ref,
                                   const std::vector<int>* cap) const {
    std::vector<int> lo(na_, kNone), hi(na_, -1);
    for (int i = c.first + 1; i < na_; ++i) {
      if (jlo_[i] == kNone) continue;
      lo[i] = std::max(c.second + 1, jlo_[i]);
      hi[i] = jhi_[i];
      if (cap && (*cap)[i] != kNone) hi[i] = std::min(hi[i], (*cap)[i] - 1);
    }
    return staircase(lo, hi, [&](int i, int j) { return above(i, j, ref); });
  }

  static std::vector<Corner> corners(const std::vector<int>& h) {
    std::vector<Corner> out;
    int low = kNone;
    for (int i = 0; i < static_cast<int>(h.size()); ++i) {
      if (h[i] < low) {
        out.push_back({i, h[i]});
        low = h[i];
      }
    }
    return out;
  }

  int sources() const { return na_; }
  const std::vector<int>& jlo() const { return jlo_; }
  const std::vector<int>& jhi() const { return jhi_; }

 private:
  const SegmentGeodesics& g_;
  int na_;
  int nb_;
  int s0_;
  std::vector<int> jlo_;
  std::vector<int> jhi_;
};

long offset_sum(const std::vector<int>& v) {
  return std::accumulate(v.begin(), v.end(), 0L);
}

// `exact` is left true when every level had a single corner, in which case
// the chain walked the exact levels.
std::vector<Corner> greedy_chain(const LevelSweep& sweep, bool& exact) {
  std::vector<Corner> chain;
  std::vector<Corner> corners = sweep.first_corners();
  exact = true;
  while (!corners.empty()) {
    exact = exact && corners.size() == 1;
    // Continue from the lowest corner geodesic.
    Corner pick = corners.front();
    std::vector<int> ref = sweep.offsets(pick);
    long low = offset_sum(ref);
    for (std::size_t k = 1; k < corners.size(); ++k) {
      auto r = sweep.offsets(corners[k]);
      const long sum = offset_sum(r);
      if (sum < low) {
        low = sum;
        pick = corners[k];
        ref = std::move(r);
      }
    }
    chain.push_back(pick);
    corners = LevelSweep::corners(sweep.dominated_above(pick, ref, nullptr));
  }
  return chain;
}

int envelope_levels(const LevelSweep& sweep) {
  std::vector<Corner> corners = sweep.first_corners();
  int levels = 0;
  const int na = sweep.sources();
  while (!corners.empty()) {
    ++levels;
    std::vector<int> env = sweep.offsets(corners.front());
    for (std::size_t k = 1; k < corners.size(); ++k) {
      const auto r = sweep.offsets(corners[k]);
      for (std::size_t s = 0; s < env.size(); ++s) env[s] = std::min(env[s], r[s]);
    }
    // Rows i may use corners with a < i; lo(i) = 1 + the smallest such b.
    std::vector<int> lo(na, kNone), hi(na, -1);
    int min_b = kNone;
    std::size_t next = 0;
    for (int i = 0; i < na; ++i) {
      if (min_b != kNone && sweep.jlo()[i] != kNone) {
        lo[i] = std::max(min_b + 1, sweep.jlo()[i]);
        hi[i] = sweep.jhi()[i];
      }
      while (next < corners.size() && corners[next].first == i) {
        min_b = std::min(min_b, corners[next].second);
        ++next;
      }
    }
    corners = LevelSweep::corners(sweep.staircase(
        lo, hi, [&](int i, int j) { return sweep.above(i, j, env); }));
  }
  return levels;
}

// Exact levels; returns a witness family of maximal size.
std::vector<Corner> exact_levels(const LevelSweep& sweep) {
  std::vector<std::vector<Corner>> levels{sweep.first_corners()};
  if (levels[0].empty()) return {};
  const int na = sweep.sources();
  while (true) {
    std::vector<int> h(na, kNone);
    for (const auto& c : levels.back()) {
      const auto ref = sweep.offsets(c);
      const auto hk = sweep.dominated_above(c, ref, &h);
      for (int i = 0; i < na; ++i) h[i] = std::min(h[i], hk[i]);
    }
    auto next = LevelSweep::corners(h);
    if (next.empty()) break;
    levels.push_back(std::move(next));
  }
  std::vector<Corner> chain{levels.back().front()};
  for (int l = static_cast<int>(levels.size()) - 2; l >= 0; --l) {
    const Corner top = chain.back();
    bool found = false;
    for (const auto& c : levels[l]) {
      if (c.first < top.first && c.second < top.second &&
          sweep.above(top.first, top.second, sweep.offsets(c))) {
        chain.push_back(c);
        found = true;
        break;
      }
    }
    require(found, "max_disjoint_family: level sweep lost its witness");
  }
  std::reverse(chain.begin(), chain.end());
  return chain;
}

}  // namespace

DisjointFamily max_disjoint_family(const SegmentGeodesics& geodesics) {
  LevelSweep sweep(geodesics);
  DisjointFamily out;
  bool exact = false;
  out.pairs = greedy_chain(sweep, exact);
  out.lower = static_cast<int>(out.pairs.size());
  out.upper = exact ? out.lower : envelope_levels(sweep);
  if (out.upper > out.lower) {
    out.refined = true;
    out.pairs = exact_levels(sweep);
  }
  out.count = static_cast<int>(out.pairs.size());
  return out;
}

int max_disjoint_count(const WeightField& field, const AntidiagSegment& a,
                       const AntidiagSegment& b) {
  return max_disjoint_family(SegmentGeodesics(field, a, b)).count;
}

int max_disjoint_exhaustive(const WeightField& field, const AntidiagSegment& a,
                            const AntidiagSegment& b) {
  const int na = a.size();
  const int nb = b.size();
  std::vector<std::vector<Path>> paths(na, std::vector<Path>(nb));
  std::vector<std::vector<bool>> defined(na, std::vector<bool>(nb, false));
  for (int i = 0; i < na; ++i) {
    for (int j = 0; j < nb; ++j) {
      if (precedes(a.at_rank(i), b.at_rank(j))) {
        paths[i][j] = geodesic(field, a.at_rank(i), b.at_rank(j));
        defined[i][j] = true;
      }
    }
  }
  int best = 0;
  std::vector<const Path*> chosen;
  std::function<void(int, int)> extend = [&](int i0, int j0) {
    best = std::max(best, static_cast<int>(chosen.size()));
    for (int i = i0; i < na; ++i) {
      for (int j = j0; j < nb; ++j) {
        if (!defined[i][j]) continue;
        bool ok = true;
        for (const Path* p : chosen) ok = ok && are_disjoint(*p, paths[i][j]);
        if (!ok) continue;
        chosen.push_back(&paths[i][j]);
        extend(i + 1, j + 1);
        chosen.pop_back();
      }
    }
  };
  extend(0, 0);
  return best;
}

}  // namespace lpp
