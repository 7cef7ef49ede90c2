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
#include <map>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "lpplab/errors.hpp"
#include "lpplab/geometry.hpp"

using lpp::AntidiagSegment;
using lpp::Box;
using lpp::LatticePoint;
using lpp::Path;
using lpp::Stretch;

namespace {

Path staircase_path(LatticePoint from, const std::string& steps) {
  Path p{from};
  for (char c : steps) p.push_back(p.back() + (c == 'R' ? lpp::kRight : lpp::kUp));
  return p;
}

lpp::WeightField field_for(std::uint64_t seed, const AntidiagSegment& a,
                           const AntidiagSegment& b) {
  return lpp::sample_field(seed, lpp::hull(a.bounds(), b.bounds()));
}

}  // namespace

TEST_CASE("global transversal fluctuation") {
  CHECK(lpp::global_tf(staircase_path({0, 0}, "RRRR")) == 0.0);
  // (1,0) against the line through (0,0) and (1,1): 1/sqrt(2).
  CHECK(lpp::global_tf(staircase_path({0, 0}, "RU")) ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  // (2,0) against the line through (0,0) and (2,2): 2/sqrt(2).
  CHECK(lpp::global_tf(staircase_path({0, 0}, "RRUU")) ==
        doctest::Approx(std::sqrt(2.0)));
  CHECK_THROWS_AS(lpp::global_tf(Path{{0, 0}}), lpp::ContractError);
}

TEST_CASE("rightmost point and local fluctuation at a height") {
  const Path vertical = staircase_path({0, 0}, "UUUUU");
  for (int L = 0; L <= 5; ++L) {
    CHECK(lpp::rightmost_at_height(vertical, L) == 0);
    CHECK(lpp::local_tf(vertical, L, 0.3) == 0.0);
  }
  // Heights 0..3; at height 2 the path occupies x = 2, 3, 4, 5.
  const Path g = staircase_path({0, 0}, "RURRRUUR");
  CHECK(lpp::rightmost_at_height(g, 0) == 1);
  CHECK(lpp::rightmost_at_height(g, 1) == 4);
  CHECK(lpp::rightmost_at_height(g, 3) == 5);
  // (5 - 1)_+ with eps * L = 1.
  const Path h = staircase_path({0, 0}, "UURRRRR");
  CHECK(lpp::local_tf(h, 2, 0.5) == doctest::Approx(4.0));
  CHECK(lpp::local_tf(h, 1, 0.5) == 0.0);
  CHECK_THROWS_AS(lpp::rightmost_at_height(h, 3), lpp::ContractError);

  // X_L is nondecreasing along random monotone paths.
  std::mt19937 gen(5);
  for (int t = 0; t < 50; ++t) {
    std::string steps;
    for (int i = 0; i < 40; ++i) steps += (gen() & 1) ? 'R' : 'U';
    const Path p = staircase_path({3, -2}, steps);
    const int top = p.back().y - p.front().y;
    for (int L = 1; L <= top; ++L) {
      CHECK(lpp::rightmost_at_height(p, L) >= lpp::rightmost_at_height(p, L - 1));
    }
  }
}

TEST_CASE("vertex disjointness") {
  const Path a = staircase_path({0, 0}, "RRRU");
  CHECK_FALSE(lpp::are_disjoint(a, a));
  const Path b = staircase_path({3, 1}, "UU");  // shares the endpoint (3,1)
  CHECK_FALSE(lpp::are_disjoint(a, b));
  const Path r0 = staircase_path({0, 0}, "RRRR");
  const Path r5 = staircase_path({0, 5}, "RRRR");
  CHECK(lpp::are_disjoint(r0, r5));
  // Sharing only (3,1), which lies on anti-diagonal 4.
  CHECK(lpp::are_disjoint(a, b, Stretch::antidiags(5, 9)));
  CHECK_FALSE(lpp::are_disjoint(a, b, Stretch::antidiags(4, 4)));
  CHECK(lpp::are_disjoint(a, b, Stretch::heights(2, 3)));
}

TEST_CASE("crossing offsets") {
  const Path p = staircase_path({0, 0}, "RUU");
  CHECK(lpp::crossing_offsets(p, 0, 3) == std::vector<int>{0, -1, 0, 1});
  CHECK(lpp::crossing_offsets(p, 1, 2) == std::vector<int>{-1, 0});
  CHECK_THROWS_AS(lpp::crossing_offsets(p, 0, 4), lpp::ContractError);
}

TEST_CASE("monotone encoding counts") {
  // (0,0),(0,1),(1,0),(1,1),(0,2),(2,0).
  CHECK(lpp::count_monotone_encodings(2, 2) == 6);
  CHECK(lpp::count_monotone_encodings(5, 0) == 1);
  CHECK(lpp::count_monotone_encodings(1, 3) == 4);
  for (int ell = 1; ell <= 6; ++ell) {
    for (int s = 0; s <= 8; ++s) {
      // Count z in {0..s}^ell with sum <= s by odometer.
      std::vector<int> z(ell, 0);
      long count = 0;
      while (true) {
        int sum = 0;
        for (int v : z) sum += v;
        count += sum <= s;
        int k = 0;
        while (k < ell && ++z[k] > s) z[k++] = 0;
        if (k == ell) break;
      }
      CHECK(lpp::count_monotone_encodings(ell, s) == count);
    }
  }
  // Well past 64 bits: binom(300, 150) has 89 decimal digits.
  CHECK(lpp::count_monotone_encodings(150, 150).str().size() == 89);
  CHECK_THROWS_AS(lpp::count_monotone_encodings(0, 3), lpp::ContractError);
}

TEST_CASE("segment geodesics agree with the single-source kernel") {
  const AntidiagSegment a{{0, 0}, 6};
  const AntidiagSegment b{{20, 20}, 6};
  const auto f = field_for(4, a, b);
  const lpp::SegmentGeodesics g(f, a, b);
  for (int i = 0; i < a.size(); i += 3) {
    for (int j = 0; j < b.size(); j += 2) {
      REQUIRE(g.defined(i, j));
      CHECK(g.path(i, j) == lpp::geodesic(f, a.at_rank(i), b.at_rank(j)));
      CHECK(g.value(i, j) == lpp::passage_time(f, a.at_rank(i), b.at_rank(j)));
    }
  }
}

TEST_CASE("polymer ordering and sandwiching") {
  const AntidiagSegment a{{0, 0}, 15};
  const AntidiagSegment b{{60, 60}, 15};
  const auto f = field_for(8, a, b);
  const lpp::SegmentGeodesics g(f, a, b);
  std::mt19937 gen(2);
  std::uniform_int_distribution<int> ra(0, a.size() - 1), rb(0, b.size() - 1);
  int violations = 0;
  for (int t = 0; t < 1000; ++t) {
    int i = ra(gen), i2 = ra(gen), j = rb(gen), j2 = rb(gen);
    if (i > i2) std::swap(i, i2);
    if (j > j2) std::swap(j, j2);
    const auto lo = g.offsets(i, j);
    const auto hi = g.offsets(i2, j2);
    for (std::size_t s = 0; s < lo.size(); ++s) violations += lo[s] > hi[s];
  }
  CHECK(violations == 0);

  const auto bottom = g.offsets(0, 0);
  const auto top = g.offsets(a.size() - 1, b.size() - 1);
  for (int i = 0; i < a.size(); ++i) {
    for (int j = 0; j < b.size(); ++j) {
      const auto mid = g.offsets(i, j);
      for (std::size_t s = 0; s < mid.size(); ++s) {
        REQUIRE(bottom[s] <= mid[s]);
        REQUIRE(mid[s] <= top[s]);
      }
    }
  }
}

TEST_CASE("disjoint families match exhaustive search on small instances") {
  std::mt19937 gen(17);
  int mismatches = 0, refined = 0, greedy_short = 0;
  for (int t = 0; t < 500; ++t) {
    const int n = 2 + static_cast<int>(gen() % 11);     // 2..12
    const int ka = static_cast<int>(gen() % 3);          // |A| in {1, 3, 5}
    const int kb = static_cast<int>(gen() % 3);
    const AntidiagSegment a{{0, 0}, ka};
    const AntidiagSegment b{{n, n}, kb};
    const auto f = field_for(1000 + t, a, b);
    const lpp::SegmentGeodesics g(f, a, b);
    const auto fam = lpp::max_disjoint_family(g);
    const int truth = lpp::max_disjoint_exhaustive(f, a, b);
    mismatches += fam.count != truth;
    refined += fam.refined;
    greedy_short += fam.lower < truth;
    REQUIRE(fam.lower <= fam.count);
    REQUIRE(fam.count <= fam.upper);
    // The witness is a valid ordered disjoint family.
    REQUIRE(static_cast<int>(fam.pairs.size()) == fam.count);
    for (std::size_t x = 0; x < fam.pairs.size(); ++x) {
      const auto [i, j] = fam.pairs[x];
      if (x > 0) {
        REQUIRE(fam.pairs[x - 1].first < i);
        REQUIRE(fam.pairs[x - 1].second < j);
      }
      for (std::size_t y = 0; y < x; ++y) {
        REQUIRE(lpp::are_disjoint(g.path(i, j),
                                  g.path(fam.pairs[y].first, fam.pairs[y].second)));
      }
    }
  }
  CHECK(mismatches == 0);
  MESSAGE("refined " << refined << ", greedy short " << greedy_short << " of 500");
}

TEST_CASE("singleton segments carry one geodesic") {
  const AntidiagSegment a{{0, 0}, 0};
  const AntidiagSegment b{{9, 9}, 0};
  const auto f = field_for(3, a, b);
  CHECK(lpp::max_disjoint_count(f, a, b) == 1);
  const auto c = lpp::coalescence_classes(f, a, b, Stretch::antidiags(6, 12));
  CHECK(c.classes == 1);
  CHECK(c.labels == std::vector<int>{0});
  // One geodesic meets each of the 7 anti-diagonals once.
  CHECK(c.band_vertices == 7);
}

TEST_CASE("a dominant vertex funnels every geodesic") {
  const int n = 30;
  const AntidiagSegment a{{0, 0}, 4};
  const AntidiagSegment b{{n, n}, 4};
  const LatticePoint hub{15, 15};
  const auto base = field_for(21, a, b);
  const std::vector<std::pair<LatticePoint, double>> heavy{{hub, 1e6}};
  const auto f = base.with_overrides(heavy);
  const lpp::SegmentGeodesics g(f, a, b);
  for (int i = 0; i < a.size(); ++i) {
    for (int j = 0; j < b.size(); ++j) {
      const Path p = g.path(i, j);
      REQUIRE(std::find(p.begin(), p.end(), hub) != p.end());
    }
  }
  CHECK(lpp::max_disjoint_family(g).count == 1);
  CHECK(lpp::max_disjoint_count(base, a, b) >= 1);
  // A band that is the hub's own anti-diagonal has one restriction.
  CHECK(lpp::coalescence_classes(g, Stretch::antidiags(30, 30)).classes == 1);
}

TEST_CASE("a heavy corridor collapses the coalescence classes") {
  const int n = 24;
  const AntidiagSegment a{{0, 0}, 3};
  const AntidiagSegment b{{n, n}, 3};
  const auto base = field_for(5, a, b);
  std::vector<std::pair<LatticePoint, double>> heavy;
  // Staircase (8,8) -> (9,8) -> (9,9) -> ... -> (16,16) over anti-diagonals 16..32.
  LatticePoint p{8, 8};
  for (int s = 16; s <= 32; ++s) {
    heavy.push_back({p, 1e6});
    p = p + ((s % 2 == 0) ? lpp::kRight : lpp::kUp);
  }
  const auto f = base.with_overrides(heavy);
  const auto c = lpp::coalescence_classes(f, a, b, Stretch::antidiags(16, 32));
  CHECK(c.classes == 1);
  CHECK(c.band_vertices == 17);
}

TEST_CASE("coalescence classes and band vertices match explicit paths") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const int n = 12;
    const AntidiagSegment a{{0, 0}, 3};
    const AntidiagSegment b{{n, n}, 3};
    const Stretch band = Stretch::antidiags(8, 16);
    auto f = field_for(seed, a, b);
    if (seed % 4 == 0) {
      const std::vector<std::pair<LatticePoint, double>> heavy{{{6, 6}, 1e6}};
      f = f.with_overrides(heavy);
    }
    const auto c = lpp::coalescence_classes(f, a, b, band);

    std::map<std::vector<std::pair<int, int>>, int> keys;
    std::set<std::pair<int, int>> vertices;
    std::vector<int> labels;
    for (int i = 0; i < a.size(); ++i) {
      for (int j = 0; j < b.size(); ++j) {
        std::vector<std::pair<int, int>> key;
        for (const auto& p : lpp::geodesic(f, a.at_rank(i), b.at_rank(j))) {
          if (band.contains(p)) {
            key.push_back({p.x, p.y});
            vertices.insert({p.x, p.y});
          }
        }
        labels.push_back(keys.try_emplace(key, static_cast<int>(keys.size())).first->second);
      }
    }
    CHECK(c.classes == static_cast<int>(keys.size()));
    CHECK(c.band_vertices == static_cast<std::int64_t>(vertices.size()));
    // Same partition: labels equal exactly when the keys are equal.
    for (std::size_t x = 0; x < labels.size(); ++x) {
      for (std::size_t y = 0; y < labels.size(); ++y) {
        REQUIRE((c.labels[x] == c.labels[y]) == (labels[x] == labels[y]));
      }
    }
    CHECK(c.band_vertices >= band.hi - band.lo + 1);
  }
}

TEST_CASE("coalescence band must separate the segments") {
  const AntidiagSegment a{{0, 0}, 1};
  const AntidiagSegment b{{5, 5}, 1};
  const auto f = field_for(1, a, b);
  CHECK_THROWS_AS(lpp::coalescence_classes(f, a, b, Stretch::antidiags(0, 4)),
                  lpp::ContractError);
  CHECK_THROWS_AS(lpp::coalescence_classes(f, a, b, Stretch::antidiags(4, 10)),
                  lpp::ContractError);
}

TEST_CASE("ordered disjoint subsets") {
  const std::array<Stretch, 4> st{Stretch::antidiags(0, 10), Stretch::antidiags(10, 20),
                                  Stretch::antidiags(20, 40), Stretch::antidiags(40, 60)};
  // Single geodesic.
  const std::vector<Path> one{staircase_path({0, 0}, std::string(30, 'R') + std::string(30, 'U'))};
  const auto r1 = lpp::ordered_disjoint_subset(one, st);
  CHECK(r1.indices == std::vector<int>{0});

  // Parallel diagonal staircases, pairwise disjoint everywhere.
  std::vector<Path> par;
  std::string diag;
  for (int i = 0; i < 30; ++i) diag += "RU";
  for (int i = 0; i < 5; ++i) par.push_back(staircase_path({-i, i}, diag));
  const auto r2 = lpp::ordered_disjoint_subset(par, st);
  CHECK(r2.indices == std::vector<int>{0, 1, 2, 3, 4});

  // Crossing families: ends in reverse order.
  std::vector<Path> cross;
  for (int i = 0; i < 4; ++i) {
    std::string s;
    for (int k = 0; k < 30 + 2 * i; ++k) s += 'R';
    for (int k = 0; k < 30 - 2 * i; ++k) s += 'U';
    cross.push_back(staircase_path({-i, i}, s));
  }
  const auto r3 = lpp::ordered_disjoint_subset(cross, st);
  CHECK(!r3.indices.empty());
  for (std::size_t x = 0; x < r3.indices.size(); ++x) {
    for (std::size_t y = x + 1; y < r3.indices.size(); ++y) {
      CHECK(lpp::are_disjoint(cross[r3.indices[x]], cross[r3.indices[y]],
                              st[r3.stretch]));
    }
  }
  // Unordered starts are rejected.
  std::vector<Path> bad{par[1], par[0]};
  CHECK_THROWS_AS(lpp::ordered_disjoint_subset(bad, st), lpp::ContractError);
}

TEST_CASE("distinct-class families yield k^(1/8) disjoint geodesics") {
  const int n = 60;
  const AntidiagSegment a{{0, 0}, 45};
  const AntidiagSegment b{{n, n}, 45};
  const std::array<Stretch, 4> st{Stretch::antidiags(0, n / 3), Stretch::antidiags(n / 3, 2 * n / 3),
                                  Stretch::antidiags(2 * n / 3, 4 * n / 3),
                                  Stretch::antidiags(4 * n / 3, 2 * n)};
  for (int k : {16, 81}) {
    bool found = false;
    for (std::uint64_t seed = 1; seed <= 40 && !found; ++seed) {
      const auto f = field_for(seed, a, b);
      const lpp::SegmentGeodesics g(f, a, b);
      const auto c = lpp::coalescence_classes(g, Stretch::antidiags(2 * n / 3, 4 * n / 3));
      // One pair per class, with distinct sources, in source order.
      std::vector<int> by_source(a.size(), -1);
      std::set<int> used;
      for (int i = 0; i < a.size(); ++i) {
        for (int j = 0; j < b.size(); ++j) {
          const int lab = c.labels[i * b.size() + j];
          if (lab >= 0 && !used.count(lab)) {
            used.insert(lab);
            by_source[i] = j;
            break;
          }
        }
      }
      std::vector<Path> fam;
      for (int i = 0; i < a.size(); ++i) {
        if (by_source[i] >= 0) fam.push_back(g.path(i, by_source[i]));
      }
      if (static_cast<int>(fam.size()) < k) continue;
      fam.resize(k);
      found = true;
      const auto r = lpp::ordered_disjoint_subset(fam, st);
      CHECK(static_cast<double>(r.indices.size()) >= std::pow(k, 1.0 / 8.0));
    }
    CHECK(found);
  }
}
