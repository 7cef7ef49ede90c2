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

#ifndef LPPLAB_PHILOX_HPP_
#define LPPLAB_PHILOX_HPP_

#include <array>
#include <cstdint>

namespace lpp {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Output is a
// pure function of (counter, key), which is what lets every lattice site own
// its random number independently of traversal order.
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr std::uint32_t kM0 = 0xD2511F53u;
  static constexpr std::uint32_t kM1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kW0 = 0x9E3779B9u;
  static constexpr std::uint32_t kW1 = 0xBB67AE85u;

  static constexpr Counter round(Counter c, Key k) {
    const std::uint64_t p0 = std::uint64_t{kM0} * c[0];
    const std::uint64_t p1 = std::uint64_t{kM1} * c[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
  }

  static constexpr Counter generate(Counter c, Key k) {
    c = round(c, k);
    for (int r = 1; r < 10; ++r) {
      k[0] += kW0;
      k[1] += kW1;
      c = round(c, k);
    }
    return c;
  }

  static constexpr Key key_from(std::uint64_t seed) {
    return {static_cast<std::uint32_t>(seed),
            static_cast<std::uint32_t>(seed >> 32)};
  }
};

// 64-bit value derived from (seed, a, b, c); used for per-trial seeds.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint32_t a,
                                    std::uint32_t b, std::uint32_t c) {
  const auto out = Philox4x32::generate({a, b, c, 0x5eed5eedu},
                                        Philox4x32::key_from(seed));
  return (std::uint64_t{out[1]} << 32) | out[0];
}

}  // namespace lpp

#endif  // LPPLAB_PHILOX_HPP_
