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

#include <array>
#include <unordered_map>

#include "lpplab/errors.hpp"
#include "lpplab/geometry.hpp"

namespace lpp {
namespace {

// Band restrictions are interned exactly in a trie: a root per vertex on
// the band's upper line, then one child per step down (0 = left, 1 = down).
class BandTrie {
 public:
  int root(int offset) {
    auto [it, fresh] = roots_.try_emplace(offset, static_cast<int>(nodes_.size()));
    if (fresh) nodes_.push_back({-1, -1});
    return it->second;
  }
  int child(int node, int step) {
    if (nodes_[node][step] < 0) {
      nodes_[node][step] = static_cast<int>(nodes_.size());
      nodes_.push_back({-1, -1});
    }
    return nodes_[node][step];
  }

 private:
  std::unordered_map<int, int> roots_;
  std::vector<std::array<int, 2>> nodes_;
};

}  // namespace

CoalescenceResult coalescence_classes(const SegmentGeodesics& geodesics,
                                      const Stretch& band) {
  require(band.axis == Stretch::Axis::kAntidiag,
          "coalescence_classes: band must be anti-diagonal");
  require(band.lo <= band.hi && band.lo > geodesics.source_segment().sum() &&
              band.hi < geodesics.target_segment().sum(),
          "coalescence_classes: band must lie strictly between the segments");

  const int na = geodesics.sources();
  const int nb = geodesics.targets();
  const Box all = hull(geodesics.source_segment().bounds(),
                       geodesics.target_segment().bounds());
  const int dmin = all.y0 - all.x1;
  const int dspan = all.y1 - all.x0 - dmin + 1;
  std::vector<bool> seen(static_cast<std::size_t>(band.hi - band.lo + 1) * dspan);
  std::int64_t marked = 0;

  BandTrie trie;
  std::vector<int> key(static_cast<std::size_t>(na) * nb, -1);

  struct Walk {
    LatticePoint p;
    std::uint16_t lanes;
    int node;  // trie node of p, or -1 above the band
  };
  std::vector<Walk> stack;

  for (std::size_t bi = 0; bi < geodesics.batches().size(); ++bi) {
    const SourceBatch& batch = geodesics.batches()[bi];
    for (int j = 0; j < nb; ++j) {
      const LatticePoint v = geodesics.target(j);
      std::uint16_t lanes = 0;
      for (int l = 0; l < batch.lanes(); ++l) {
        if (precedes(batch.source(l), v)) lanes |= static_cast<std::uint16_t>(1u << l);
      }
      if (!lanes) continue;
      // Lanes sharing a vertex share the rest of the walk down, so they
      // move as one group and split where their argmax bits differ.
      stack.push_back({v, lanes, -1});
      while (!stack.empty()) {
        Walk w = stack.back();
        stack.pop_back();
        while (true) {
          const int s = antidiag(w.p);
          if (s <= band.hi) {
            const std::size_t cell = static_cast<std::size_t>(s - band.lo) * dspan +
                                     (antidiag_offset(w.p) - dmin);
            if (!seen[cell]) {
              seen[cell] = true;
              ++marked;
            }
          }
          if (s == band.lo) {
            for (int l = 0; l < batch.lanes(); ++l) {
              if ((w.lanes >> l) & 1u) {
                key[(bi * kLanes + l) * nb + j] = w.node;
              }
            }
            break;
          }
          const std::uint16_t bits = batch.backstep_mask(w.p);
          const auto left = static_cast<std::uint16_t>(w.lanes & bits);
          const auto down = static_cast<std::uint16_t>(w.lanes & ~bits);
          auto descend = [&](LatticePoint q, int step) {
            if (s - 1 > band.hi) return -1;
            if (s - 1 == band.hi) return trie.root(antidiag_offset(q));
            return trie.child(w.node, step);
          };
          if (left && down) {
            const LatticePoint q = w.p - kUp;
            stack.push_back({q, down, descend(q, 1)});
          }
          if (left) {
            const LatticePoint q = w.p - kRight;
            w = {q, left, descend(q, 0)};
          } else {
            const LatticePoint q = w.p - kUp;
            w = {q, down, descend(q, 1)};
          }
        }
      }
    }
  }

  CoalescenceResult out;
  out.labels.assign(key.size(), -1);
  std::unordered_map<int, int> dense;
  for (std::size_t t = 0; t < key.size(); ++t) {
    if (key[t] < 0) continue;
    auto [it, fresh] = dense.try_emplace(key[t], static_cast<int>(dense.size()));
    out.labels[t] = it->second;
  }
  out.classes = static_cast<int>(dense.size());
  out.band_vertices = marked;
  return out;
}

CoalescenceResult coalescence_classes(const WeightField& field,
                                      const AntidiagSegment& a,
                                      const AntidiagSegment& b,
                                      const Stretch& band) {
  return coalescence_classes(SegmentGeodesics(field, a, b), band);
}

std::int64_t middle_vertex_count(const WeightField& field,
                                 const AntidiagSegment& a,
                                 const AntidiagSegment& b, const Stretch& band) {
  return coalescence_classes(field, a, b, band).band_vertices;
}

}  // namespace lpp
