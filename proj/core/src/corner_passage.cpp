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

#include "lpplab/corner_passage.hpp"

#include <utility>
#include <vector>

#include "lpplab/errors.hpp"
#include "lpplab/weight_field.hpp"

namespace lpp {
namespace {

// Rows hold U = T + xi, so a site costs one compare, one select and one add.
template <bool kBits>
CornerPassage sweep(std::uint64_t seed, LatticePoint u, LatticePoint v,
                    const std::optional<LatticePoint>& via, bool keep_path) {
  const int w = v.x - u.x + 1;
  const int h = v.y - u.y + 1;
  const std::int64_t words = (w + 63) / 64;
  std::vector<double> xi(static_cast<std::size_t>(w));
  std::vector<double> below(static_cast<std::size_t>(w));
  std::vector<double> cur(static_cast<std::size_t>(w));
  std::vector<std::uint64_t> bits;
  if constexpr (kBits) {
    check_memory(words * h * std::int64_t{8}, "corner passage backsteps");
    bits.assign(static_cast<std::size_t>(words * h), 0);
  }
  CornerPassage out;
  std::uint64_t ties = 0;
  double last_t = 0.0;

  for (int r = 0; r < h; ++r) {
    const int y = u.y + r;
    sample_row(seed, y, u.x, w, xi.data());
    std::uint64_t* row_bits = kBits ? bits.data() + r * words : nullptr;
    if (r == 0) {
      double t = 0.0;
      for (int i = 0; i < w; ++i) {
        if (i > 0) {
          t = cur[i - 1];
          if constexpr (kBits) row_bits[i >> 6] |= std::uint64_t{1} << (i & 63);
        }
        cur[i] = t + xi[i];
        last_t = t;
      }
    } else {
      double t = below[0];
      cur[0] = t + xi[0];
      last_t = t;
      for (int i = 1; i < w; ++i) {
        const double a = cur[i - 1];
        const double b = below[i];
        ties += (a == b);
        const bool left = a > b;
        t = left ? a : b;
        cur[i] = t + xi[i];
        if constexpr (kBits) {
          row_bits[i >> 6] |= static_cast<std::uint64_t>(left) << (i & 63);
        }
      }
      last_t = t;
    }
    std::swap(cur, below);
  }
  out.value = last_t;
  out.ties = ties;
  if constexpr (kBits) {
    auto step = [&](int& i, int& r) {
      if ((bits[r * words + (i >> 6)] >> (i & 63)) & 1u) --i; else --r;
    };
    if (via && precedes(u, *via) && precedes(*via, v)) {
      int i = w - 1, r = h - 1;
      while (i + r > (via->x - u.x) + (via->y - u.y)) step(i, r);
      out.through = (u.x + i == via->x);
    }
    if (!keep_path) return out;
    out.path.resize(static_cast<std::size_t>(w + h - 1));
    auto it = out.path.rbegin();
    int i = w - 1, r = h - 1;
    *it++ = v;
    while (i > 0 || r > 0) {
      step(i, r);
      *it++ = {u.x + i, u.y + r};
    }
  }
  return out;
}

}  // namespace

CornerPassage corner_passage(std::uint64_t seed, LatticePoint u, LatticePoint v,
                             const CornerOptions& options) {
  require(precedes(u, v), "corner_passage: endpoints are not ordered (u <= v)");
  if (options.keep_path || options.through) {
    return sweep<true>(seed, u, v, options.through, options.keep_path);
  }
  return sweep<false>(seed, u, v, std::nullopt, false);
}

}  // namespace lpp
