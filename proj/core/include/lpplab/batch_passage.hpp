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

#ifndef LPPLAB_BATCH_PASSAGE_HPP_
#define LPPLAB_BATCH_PASSAGE_HPP_

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "lpplab/huge_allocator.hpp"
#include "lpplab/lattice.hpp"
#include "lpplab/passage.hpp"
#include "lpplab/weight_field.hpp"

namespace lpp {

// Number of sources advanced together by one sweep of the batched kernel.
inline constexpr int kLanes = 16;

struct BatchOptions {
  // Keep one argmax bit per lane and site, so geodesics can be traced.
  bool keep_backsteps = true;
  // Track, per lane, whether the geodesic to each site visits this point.
  std::optional<LatticePoint> through;
};

// Last passage times from up to kLanes sources computed in one sweep. Every
// lane performs exactly the floating-point operations of passage_field, so
// values and geodesics agree bit for bit with the single-source kernel.
class SourceBatch {
 public:
  int lanes() const { return static_cast<int>(sources_.size()); }
  LatticePoint source(int lane) const { return sources_[lane]; }
  const Box& region() const { return box_; }
  std::span<const LatticePoint> targets() const { return targets_; }

  // T(source(lane), targets()[t]); -infinity when not reachable.
  double value(int lane, int t) const { return values_[t * kLanes + lane]; }
  bool reachable(int lane, int t) const {
    return precedes(sources_[lane], targets_[t]);
  }
  // Whether the geodesic from source(lane) to targets()[t] visits `through`.
  bool passes_through(int lane, int t) const {
    return (through_bits_[t] >> lane) & 1u;
  }

  // Geodesic from source(lane) to v, read from the stored argmax bits.
  Path geodesic(int lane, LatticePoint v) const;
  // Calls visit(p) for every vertex of that geodesic from v down to the
  // source, stopping early when visit returns false.
  template <class Visit>
  void trace(int lane, LatticePoint v, Visit&& visit) const {
    const LatticePoint s = sources_[lane];
    const std::uint16_t bit = static_cast<std::uint16_t>(1u << lane);
    LatticePoint p = v;
    while (true) {
      if (!visit(p)) return;
      if (p == s) return;
      p = (backsteps_[box_.index(p)] & bit) ? p - kRight : p - kUp;
    }
  }
  void check_traceable(int lane, LatticePoint v) const;
  // Argmax bits of every lane at p (bit l set: lane l came from the left).
  std::uint16_t backstep_mask(LatticePoint p) const {
    return backsteps_[box_.index(p)];
  }
  bool has_backsteps() const { return !backsteps_.empty(); }

  std::uint64_t ties() const { return ties_; }

 private:
  friend SourceBatch run_batch(const WeightField&, std::span<const LatticePoint>,
                               const Box&, std::span<const LatticePoint>,
                               const BatchOptions&);
  std::vector<LatticePoint> sources_;
  std::vector<LatticePoint> targets_;
  Box box_;
  std::vector<double> values_;
  std::vector<std::uint16_t> through_bits_;
  std::vector<std::uint16_t, HugeAllocator<std::uint16_t>> backsteps_;
  std::uint64_t ties_ = 0;
};

// One sweep for at most kLanes sources over the sites of `region` that lie
// above the lowest corner of the sources. Targets must lie in `region`.
SourceBatch run_batch(const WeightField& field,
                      std::span<const LatticePoint> sources, const Box& region,
                      std::span<const LatticePoint> targets,
                      const BatchOptions& options = {});

// Splits any number of sources into consecutive batches of kLanes.
std::vector<SourceBatch> run_batches(const WeightField& field,
                                     std::span<const LatticePoint> sources,
                                     const Box& region,
                                     std::span<const LatticePoint> targets,
                                     const BatchOptions& options = {});

}  // namespace lpp

#endif  // LPPLAB_BATCH_PASSAGE_HPP_
