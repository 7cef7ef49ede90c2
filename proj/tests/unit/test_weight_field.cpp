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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "doctest.h"
#include "lpplab/errors.hpp"
#include "lpplab/philox.hpp"
#include "lpplab/weight_field.hpp"

using lpp::Box;
using lpp::WeightField;

TEST_CASE("philox matches the Random123 known-answer vectors") {
  auto out = lpp::Philox4x32::generate({0, 0, 0, 0}, {0, 0});
  CHECK(out[0] == 0x6627e8d5u);
  CHECK(out[1] == 0xe169c58du);
  CHECK(out[2] == 0xbc57ac4cu);
  CHECK(out[3] == 0x9b00dbd8u);
  out = lpp::Philox4x32::generate(
      {0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
      {0xffffffffu, 0xffffffffu});
  CHECK(out[0] == 0x408f276du);
  CHECK(out[1] == 0x41c83b0eu);
  CHECK(out[2] == 0xa20bc7c6u);
  CHECK(out[3] == 0x6d5451fdu);
  out = lpp::Philox4x32::generate(
      {0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
      {0xa4093822u, 0x299f31d0u});
  CHECK(out[0] == 0xd16cfe09u);
  CHECK(out[1] == 0x94fdccebu);
  CHECK(out[2] == 0x5001e420u);
  CHECK(out[3] == 0x24126ea1u);
}

TEST_CASE("sampling is deterministic") {
  const Box box = Box::spanning({0, 0}, {9, 9});
  const auto a = lpp::sample_field(7, box);
  const auto b = lpp::sample_field(7, box);
  REQUIRE(a.values().size() == 100);
  CHECK(std::equal(a.values().begin(), a.values().end(), b.values().begin()));
  const auto c = lpp::sample_field(8, box);
  CHECK_FALSE(std::equal(a.values().begin(), a.values().end(),
                         c.values().begin()));
}

TEST_CASE("sub-regions resample identically") {
  const Box big = Box::spanning({-37, -20}, {41, 33});
  const auto field = lpp::sample_field(12345, big);
  std::mt19937 gen(99);
  for (int t = 0; t < 100; ++t) {
    std::uniform_int_distribution<int> xs(big.x0, big.x1), ys(big.y0, big.y1);
    int x0 = xs(gen), x1 = xs(gen), y0 = ys(gen), y1 = ys(gen);
    if (x0 > x1) std::swap(x0, x1);
    if (y0 > y1) std::swap(y0, y1);
    const Box sub{x0, y0, x1, y1};
    const auto part = lpp::sample_field(12345, sub);
    for (int y = y0; y <= y1; ++y)
      for (int x = x0; x <= x1; ++x) {
        REQUIRE(part.at(x, y) == field.at(x, y));
        REQUIRE(part.at(x, y) == lpp::site_weight(12345, x, y));
      }
  }
}

TEST_CASE("weights follow Exp(1)") {
  const auto field = lpp::sample_field(2024, Box::spanning({0, 0}, {999, 999}));
  const auto v = field.values();
  double sum = 0.0;
  std::int64_t above = 0;
  for (double w : v) {
    REQUIRE(w > 0.0);
    sum += w;
    above += (w > 1.0);
  }
  CHECK(sum / 1e6 == doctest::Approx(1.0).epsilon(0.01));
  CHECK(std::abs(static_cast<double>(above) / 1e6 - std::exp(-1.0)) < 0.002);

  std::vector<double> s(v.begin(), v.begin() + 100000);
  std::sort(s.begin(), s.end());
  double d = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double f = 1.0 - std::exp(-s[i]);
    d = std::max({d, std::abs(f - static_cast<double>(i) / s.size()),
                  std::abs(f - static_cast<double>(i + 1) / s.size())});
  }
  CHECK(d < 0.01);
  // Distinct in a sampled field (continuous law).
  std::vector<double> all(v.begin(), v.end());
  std::sort(all.begin(), all.end());
  CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
}

TEST_CASE("memory budget is enforced") {
  const auto saved = lpp::memory_budget_bytes();
  lpp::set_memory_budget_bytes(1000);
  CHECK_THROWS_AS(lpp::sample_field(1, Box::spanning({0, 0}, {99, 99})),
                  lpp::CapacityError);
  lpp::set_memory_budget_bytes(saved);
  CHECK_NOTHROW(lpp::sample_field(1, Box::spanning({0, 0}, {99, 99})));
}

TEST_CASE("from_values and overrides") {
  const Box box = Box::spanning({0, 0}, {1, 1});
  const auto f = WeightField::from_values(box, {1.0, 2.0, 0.5, 3.0});
  CHECK(f.at(1, 0) == 2.0);
  CHECK(f.at(0, 1) == 0.5);
  CHECK_FALSE(f.seed().has_value());
  const std::pair<lpp::LatticePoint, double> o[] = {{{1, 1}, 9.0}};
  const auto g = f.with_overrides(o);
  CHECK(g.at(1, 1) == 9.0);
  CHECK(f.at(1, 1) == 3.0);
  CHECK_THROWS_AS(WeightField::from_values(box, {1.0, 0.0, 1.0, 1.0}),
                  lpp::ContractError);
  CHECK_THROWS_AS(WeightField::from_values(box, {1.0}), lpp::ContractError);
}
