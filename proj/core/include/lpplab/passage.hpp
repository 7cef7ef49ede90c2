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

#ifndef LPPLAB_PASSAGE_HPP_
#define LPPLAB_PASSAGE_HPP_

#include <cstdint>
#include <vector>

#include "lpplab/lattice.hpp"
#include "lpplab/weight_field.hpp"

namespace lpp {

// Up/right lattice path, listed from its lower endpoint.
using Path = std::vector<LatticePoint>;

bool is_monotone(const Path& path);

// Passage time of a path: sum of weights over every vertex except the last.
double path_weight(const WeightField& field, const Path& path);

// Last passage times T(source, v) for all v >= source inside a region, with
// the argmax predecessor of every site for geodesic reconstruction.
class PassageField {
 public:
  LatticePoint source() const { return source_; }
  // Sites actually covered: from the source to the region's upper corner.
  const Box& region() const { return box_; }
  bool reachable(LatticePoint v) const {
    return box_.contains(v);
  }
  double value(LatticePoint v) const;
  // Geodesic from the source to v, following argmax choices back from v.
  Path geodesic_to(LatticePoint v) const;
  // Whether w lies on the geodesic to v (walks the backtrace).
  bool on_geodesic(LatticePoint v, LatticePoint w) const;
  // Sites where both predecessors gave exactly equal candidates. The
  // down-step was taken at each of them.
  std::uint64_t ties() const { return ties_; }

 private:
  friend PassageField passage_field(const WeightField&, LatticePoint,
                                    const Box&);
  LatticePoint source_;
  Box box_;
  std::vector<double> values_;
  std::vector<std::uint8_t> from_left_;
  std::uint64_t ties_ = 0;
};

// Single-source DP, one pass over rows bottom-to-top, left-to-right.
PassageField passage_field(const WeightField& field, LatticePoint source,
                           const Box& region);

// Geodesic from u to v (u <= v). `ties` receives the tie count if non-null.
Path geodesic(const WeightField& field, LatticePoint u, LatticePoint v,
              std::uint64_t* ties = nullptr);

double passage_time(const WeightField& field, LatticePoint u, LatticePoint v);

struct BruteForceResult {
  double value = 0.0;
  Path argmax;
  std::uint64_t paths = 0;       // number of monotone paths enumerated
  std::uint64_t maximizers = 0;  // paths attaining `value` exactly
};

inline constexpr int kBruteForceMaxSteps = 26;

// Exhaustive enumeration of all binom(dx + dy, dx) monotone paths. Sums are
// accumulated in path order, like the DP.
BruteForceResult brute_force(const WeightField& field, LatticePoint u,
                             LatticePoint v);

}  // namespace lpp

#endif  // LPPLAB_PASSAGE_HPP_
