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

#ifndef LPPLAB_WEIGHT_FIELD_HPP_
#define LPPLAB_WEIGHT_FIELD_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "lpplab/huge_allocator.hpp"
#include "lpplab/lattice.hpp"

namespace lpp {

// Bytes available to a single field/passage allocation. Read once from
// LPPLAB_MEMORY_BUDGET_MB (default 2048).
std::int64_t memory_budget_bytes();
void set_memory_budget_bytes(std::int64_t bytes);

// Throws CapacityError naming `what` when `bytes` exceeds the budget.
void check_memory(std::int64_t bytes, std::string_view what);

// Exp(1) weight of site (x, y) under `seed`, by inverse transform of a
// Philox draw keyed by the site. Always strictly positive.
double site_weight(std::uint64_t seed, int x, int y);

// Weights of sites (x0 .. x0 + count - 1, y) into out; equal to site_weight
// at every site.
void sample_row(std::uint64_t seed, int y, int x0, int count, double* out);

// Dense row-major i.i.d. Exp(1) vertex weights over a box. Immutable.
class WeightField {
 public:
  WeightField() = default;

  static WeightField sample(std::uint64_t seed, const Box& region);
  // Hand-built fields for tests and constructed configurations.
  static WeightField from_values(const Box& region, std::vector<double> values);

  // Copy with some sites replaced (funnel fields, dominant weights).
  WeightField with_overrides(
      std::span<const std::pair<LatticePoint, double>> sites) const;

  const Box& region() const { return region_; }
  std::optional<std::uint64_t> seed() const { return seed_; }

  double at(LatticePoint p) const { return values_[region_.index(p)]; }
  double at(int x, int y) const { return at(LatticePoint{x, y}); }
  // Pointer to the weight at (region.x0, y).
  const double* row(int y) const {
    return values_.data() + static_cast<std::int64_t>(y - region_.y0) *
                                region_.width();
  }
  std::span<const double> values() const { return values_; }

 private:
  Box region_;
  std::optional<std::uint64_t> seed_;
  std::vector<double, HugeAllocator<double>> values_;
};

WeightField sample_field(std::uint64_t seed, const Box& region);

}  // namespace lpp

#endif  // LPPLAB_WEIGHT_FIELD_HPP_
