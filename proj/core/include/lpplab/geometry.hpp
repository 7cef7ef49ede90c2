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

#ifndef LPPLAB_GEOMETRY_HPP_
#define LPPLAB_GEOMETRY_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "lpplab/batch_passage.hpp"
#include "lpplab/lattice.hpp"
#include "lpplab/passage.hpp"
#include "lpplab/weight_field.hpp"

namespace lpp {

// A band of rows (heights lo..hi) or of anti-diagonals (x + y in lo..hi),
// both ends inclusive.
struct Stretch {
  enum class Axis { kHeight, kAntidiag };
  Axis axis = Axis::kAntidiag;
  int lo = 0;
  int hi = 0;

  static Stretch heights(int lo, int hi) { return {Axis::kHeight, lo, hi}; }
  static Stretch antidiags(int lo, int hi) { return {Axis::kAntidiag, lo, hi}; }
  bool contains(LatticePoint p) const {
    const int c = axis == Axis::kHeight ? p.y : antidiag(p);
    return c >= lo && c <= hi;
  }
};

// Largest Euclidean distance from a vertex to the line through the endpoints.
double global_tf(const Path& g);

// Heights and abscissae below are measured from the path's first vertex.
// X_L: the largest x among the vertices at height L.
int rightmost_at_height(const Path& g, int height);
// TF_L = (X_L - eps * L)_+.
double local_tf(const Path& g, int height, double eps);

// Vertex-disjointness, optionally only for vertices inside `stretch`.
bool are_disjoint(const Path& a, const Path& b,
                  std::optional<Stretch> stretch = std::nullopt);

// Offset y - x of the vertex where g meets each anti-diagonal s0..s1. A
// monotone path meets every anti-diagonal it spans exactly once.
std::vector<int> crossing_offsets(const Path& g, int s0, int s1);

// All geodesics from the points of A to the points of B, from batched
// sweeps with argmax bits kept. Sources and targets are indexed by their
// rank in segment order.
class SegmentGeodesics {
 public:
  SegmentGeodesics(const WeightField& field, const AntidiagSegment& a,
                   const AntidiagSegment& b);

  const AntidiagSegment& source_segment() const { return a_; }
  const AntidiagSegment& target_segment() const { return b_; }
  int sources() const { return a_.size(); }
  int targets() const { return b_.size(); }
  LatticePoint source(int i) const { return a_.at_rank(i); }
  LatticePoint target(int j) const { return b_.at_rank(j); }
  bool defined(int i, int j) const { return precedes(source(i), target(j)); }

  double value(int i, int j) const {
    return batches_[i / kLanes].value(i % kLanes, j);
  }
  // Visits the vertices of the geodesic from target j down to source i.
  template <class Visit>
  void trace(int i, int j, Visit&& visit) const {
    batches_[i / kLanes].trace(i % kLanes, target(j),
                               std::forward<Visit>(visit));
  }
  Path path(int i, int j) const;
  // crossing_offsets of path(i, j) over the whole span from A to B.
  std::vector<int> offsets(int i, int j) const;

  const std::vector<SourceBatch>& batches() const { return batches_; }
  std::uint64_t ties() const;

 private:
  AntidiagSegment a_;
  AntidiagSegment b_;
  std::vector<SourceBatch> batches_;
};

// A largest family of pairwise vertex-disjoint geodesics with ordered
// endpoints, u_1 < ... < u_k on A and v_1 < ... < v_k on B.
struct DisjointFamily {
  int count = 0;
  // Witness family as (rank in A, rank in B), listed bottom to top.
  std::vector<std::pair<int, int>> pairs;
  // Bounds from the greedy chain and from the envelope relaxation. When they
  // differ the count was settled by the exact level sweep.
  int lower = 0;
  int upper = 0;
  bool refined = false;
};

DisjointFamily max_disjoint_family(const SegmentGeodesics& geodesics);
int max_disjoint_count(const WeightField& field, const AntidiagSegment& a,
                       const AntidiagSegment& b);

// Reference answer by search over all ordered families, with geodesics from
// the single-source kernel. Small instances only.
int max_disjoint_exhaustive(const WeightField& field, const AntidiagSegment& a,
                            const AntidiagSegment& b);

struct CoalescenceResult {
  // Number of distinct restrictions of the geodesics to the band.
  int classes = 0;
  // Class of pair (i, j) at i * |B| + j, numbered by first appearance;
  // -1 where u_i is not below v_j.
  std::vector<int> labels;
  // Vertices of the band lying on at least one of the geodesics.
  std::int64_t band_vertices = 0;
};

// Keys each geodesic by its exact vertex sequence inside an anti-diagonal
// band lying strictly between the two segments.
CoalescenceResult coalescence_classes(const SegmentGeodesics& geodesics,
                                      const Stretch& band);
CoalescenceResult coalescence_classes(const WeightField& field,
                                      const AntidiagSegment& a,
                                      const AntidiagSegment& b,
                                      const Stretch& band);
std::int64_t middle_vertex_count(const WeightField& field,
                                 const AntidiagSegment& a,
                                 const AntidiagSegment& b,
                                 const Stretch& band);

// Sequences of ell nonnegative integers with sum at most S: binom(S+ell, ell).
boost::multiprecision::cpp_int count_monotone_encodings(int ell, int s);

struct OrderedSubset {
  std::vector<int> indices;  // into the input, increasing
  int stretch = 0;           // which of the four stretches
  // Crossings of the first stretch's upper line shared by several paths.
  int repeated_crossings = 0;
};

// Extracts geodesics that are pairwise disjoint on one of four consecutive
// anti-diagonal stretches, by monotone subsequences of the end points and
// then of the crossings of the first stretch's upper line. Start points
// must be strictly ordered on one anti-diagonal.
OrderedSubset ordered_disjoint_subset(std::span<const Path> geodesics,
                                      const std::array<Stretch, 4>& stretches);

}  // namespace lpp

#endif  // LPPLAB_GEOMETRY_HPP_
