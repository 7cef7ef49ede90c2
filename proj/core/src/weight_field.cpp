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

#include "lpplab/weight_field.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "lpplab/errors.hpp"
#include "lpplab/philox.hpp"

#if defined(__AVX512F__)
#include <immintrin.h>
#endif

namespace lpp {
namespace {

constexpr std::uint32_t kWeightStream = 0x77e16b7u;

std::int64_t budget_from_env() {
  if (const char* env = std::getenv("LPPLAB_MEMORY_BUDGET_MB")) {
    char* end = nullptr;
    const long long mb = std::strtoll(env, &end, 10);
    if (end != env && mb > 0) return mb * 1024 * 1024;
  }
  return std::int64_t{2048} * 1024 * 1024;
}

std::atomic<std::int64_t>& budget() {
  static std::atomic<std::int64_t> value{budget_from_env()};
  return value;
}

// Natural logarithm for normal x > 0, branch-free so row loops vectorize.
// fdlibm's reduction and minimax polynomial (error below 1 ulp). Being plain
// IEEE arithmetic it gives the same bits on every platform, unlike libm.
inline double log_positive(double x) {
  constexpr double kLn2Hi = 6.93147180369123816490e-01;
  constexpr double kLn2Lo = 1.90821492927058770002e-10;
  constexpr double kLg1 = 6.666666666666735130e-01;
  constexpr double kLg2 = 3.999999999940941908e-01;
  constexpr double kLg3 = 2.857142874366239149e-01;
  constexpr double kLg4 = 2.222219843214978396e-01;
  constexpr double kLg5 = 1.818357216161805012e-01;
  constexpr double kLg6 = 1.531383769920937332e-01;
  constexpr double kLg7 = 1.479819860511658591e-01;
  // Rebias so the mantissa lands in [sqrt(2)/2, sqrt(2)).
  const std::uint64_t ix = std::bit_cast<std::uint64_t>(x) +
                           (0x3ff0000000000000ull - 0x3fe6a09e00000000ull);
  const double k = static_cast<double>(static_cast<std::int64_t>(ix >> 52) - 0x3ff);
  const double f = std::bit_cast<double>((ix & 0x000fffffffffffffull) +
                                         0x3fe6a09e00000000ull) - 1.0;
  const double hfsq = 0.5 * f * f;
  const double s = f / (2.0 + f);
  const double z = s * s;
  const double w = z * z;
  const double t1 = w * (kLg2 + w * (kLg4 + w * kLg6));
  const double t2 = z * (kLg1 + w * (kLg3 + w * (kLg5 + w * kLg7)));
  return s * (hfsq + t2 + t1) + k * kLn2Lo - hfsq + f + k * kLn2Hi;
}

// Top 52 bits as (k + 1/2) 2^-52, which is exact and lies in (0, 1).
inline double to_exp1(std::uint64_t bits) {
  const double u = (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
  return -log_positive(u);
}

// Two horizontally adjacent sites share one Philox block: lanes 0-1 feed
// the even site and lanes 2-3 the odd one.
std::array<std::uint32_t, 4> block(const Philox4x32::Key& key, int pair_x,
                                   int y) {
  return Philox4x32::generate({static_cast<std::uint32_t>(pair_x),
                               static_cast<std::uint32_t>(y), kWeightStream, 0},
                              key);
}

// Random bits of blocks pair_x0 .. pair_x0 + count - 1 on row y, two words
// per block in site order.
void block_row(const Philox4x32::Key& key, int pair_x0, int count, int y,
               std::uint64_t* out) {
  int j = 0;
#if defined(__AVX512F__)
  constexpr int kChains = 4;  // independent multiply chains in flight
  const __m512i m0 = _mm512_set1_epi64(Philox4x32::kM0);
  const __m512i m1 = _mm512_set1_epi64(Philox4x32::kM1);
  const __m512i lo = _mm512_set1_epi64(0xffffffffu);
  const __m512i iota = _mm512_set_epi64(7, 6, 5, 4, 3, 2, 1, 0);
  alignas(64) std::uint64_t words[2][8];
  for (; j + 8 * kChains <= count; j += 8 * kChains) {
    __m512i a[kChains], b[kChains], c[kChains], d[kChains];
    for (int u = 0; u < kChains; ++u) {
      const auto base = static_cast<std::uint32_t>(pair_x0 + j + 8 * u);
      a[u] = _mm512_and_si512(
          _mm512_add_epi64(_mm512_set1_epi64(base), iota), lo);
      b[u] = _mm512_set1_epi64(static_cast<std::uint32_t>(y));
      c[u] = _mm512_set1_epi64(kWeightStream);
      d[u] = _mm512_setzero_si512();
    }
    std::uint32_t k0 = key[0], k1 = key[1];
    for (int r = 0; r < 10; ++r) {
      const __m512i kk0 = _mm512_set1_epi64(k0);
      const __m512i kk1 = _mm512_set1_epi64(k1);
      for (int u = 0; u < kChains; ++u) {
        const __m512i p0 = _mm512_mul_epu32(a[u], m0);
        const __m512i p1 = _mm512_mul_epu32(c[u], m1);
        a[u] = _mm512_ternarylogic_epi64(_mm512_srli_epi64(p1, 32), b[u], kk0, 0x96);
        b[u] = _mm512_and_si512(p1, lo);
        c[u] = _mm512_ternarylogic_epi64(_mm512_srli_epi64(p0, 32), d[u], kk1, 0x96);
        d[u] = _mm512_and_si512(p0, lo);
      }
      k0 += Philox4x32::kW0;
      k1 += Philox4x32::kW1;
    }
    for (int u = 0; u < kChains; ++u) {
      _mm512_store_si512(words[0], _mm512_or_si512(_mm512_slli_epi64(b[u], 32), a[u]));
      _mm512_store_si512(words[1], _mm512_or_si512(_mm512_slli_epi64(d[u], 32), c[u]));
      std::uint64_t* o = out + 2 * (j + 8 * u);
      for (int i = 0; i < 8; ++i) {
        o[2 * i] = words[0][i];
        o[2 * i + 1] = words[1][i];
      }
    }
  }
#endif
  for (; j < count; ++j) {
    const auto q = block(key, pair_x0 + j, y);
    out[2 * j] = (std::uint64_t{q[1]} << 32) | q[0];
    out[2 * j + 1] = (std::uint64_t{q[3]} << 32) | q[2];
  }
}

int floor_half(int x) { return x >= 0 ? x / 2 : -((-x + 1) / 2); }

}  // namespace

std::int64_t memory_budget_bytes() { return budget().load(); }

void set_memory_budget_bytes(std::int64_t bytes) { budget().store(bytes); }

void check_memory(std::int64_t bytes, std::string_view what) {
  if (bytes > memory_budget_bytes()) {
    throw CapacityError(std::string(what) + " needs " +
                        std::to_string(bytes / (1024 * 1024)) +
                        " MiB, above the memory budget of " +
                        std::to_string(memory_budget_bytes() / (1024 * 1024)) +
                        " MiB (LPPLAB_MEMORY_BUDGET_MB)");
  }
}

double site_weight(std::uint64_t seed, int x, int y) {
  const auto q = block(Philox4x32::key_from(seed), floor_half(x), y);
  return (x & 1) ? to_exp1((std::uint64_t{q[3]} << 32) | q[2])
                 : to_exp1((std::uint64_t{q[1]} << 32) | q[0]);
}

void sample_row(std::uint64_t seed, int y, int x0, int count, double* out) {
  if (count <= 0) return;
  const int p0 = floor_half(x0);
  const int p1 = floor_half(x0 + count - 1);
  thread_local std::vector<std::uint64_t> bits;
  bits.resize(2 * static_cast<std::size_t>(p1 - p0 + 1));
  block_row(Philox4x32::key_from(seed), p0, p1 - p0 + 1, y, bits.data());
  const std::uint64_t* b = bits.data() + (x0 - 2 * p0);
  for (int i = 0; i < count; ++i) out[i] = to_exp1(b[i]);
}

WeightField WeightField::sample(std::uint64_t seed, const Box& region) {
  require(!region.empty(), "sample_field: region must be non-empty");
  check_memory(region.area() * std::int64_t{sizeof(double)}, "weight field region");
  WeightField f;
  f.region_ = region;
  f.seed_ = seed;
  f.values_.resize(static_cast<std::size_t>(region.area()));
  const int w = region.width();
  for (int y = region.y0; y <= region.y1; ++y) {
    sample_row(seed, y, region.x0, w,
               f.values_.data() + static_cast<std::int64_t>(y - region.y0) * w);
  }
  return f;
}

WeightField WeightField::from_values(const Box& region,
                                     std::vector<double> values) {
  require(!region.empty(), "from_values: region must be non-empty");
  require(static_cast<std::int64_t>(values.size()) == region.area(),
          "from_values: value count does not match region area");
  for (double v : values) require(v > 0.0, "weights must be strictly positive");
  WeightField f;
  f.region_ = region;
  f.values_.assign(values.begin(), values.end());
  return f;
}

WeightField WeightField::with_overrides(
    std::span<const std::pair<LatticePoint, double>> sites) const {
  WeightField f = *this;
  for (const auto& [p, w] : sites) {
    require(region_.contains(p), "override site outside field region");
    require(w > 0.0, "weights must be strictly positive");
    f.values_[region_.index(p)] = w;
  }
  return f;
}

WeightField sample_field(std::uint64_t seed, const Box& region) {
  return WeightField::sample(seed, region);
}

}  // namespace lpp
