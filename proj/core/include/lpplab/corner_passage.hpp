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

#ifndef LPPLAB_CORNER_PASSAGE_HPP_
#define LPPLAB_CORNER_PASSAGE_HPP_

#include <cstdint>
#include <optional>

#include "lpplab/lattice.hpp"
#include "lpplab/passage.hpp"

namespace lpp {

struct CornerOptions {
  bool keep_path = false;
  // Report whether the geodesic visits this point.
  std::optional<LatticePoint> through;
};

struct CornerPassage {
  double value = 0.0;
  Path path;  // filled when keep_path is set
  bool through = false;
  std::uint64_t ties = 0;
};

// T(u, v) in the field sample_field(seed, box spanning u and v), computed
// while the weights are drawn row by row. The field is never stored; the
// geodesic, when requested, costs one bit per site. Values, geodesic and tie
// count agree exactly with passage_field on the sampled field.
CornerPassage corner_passage(std::uint64_t seed, LatticePoint u, LatticePoint v,
                             const CornerOptions& options = {});

}  // namespace lpp

#endif  // LPPLAB_CORNER_PASSAGE_HPP_
