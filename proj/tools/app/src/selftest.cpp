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

#include "lpplab_app/selftest.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

#include "lpplab/batch_passage.hpp"
#include "lpplab/corner_passage.hpp"
#include "lpplab/errors.hpp"
#include "lpplab/geometry.hpp"
#include "lpplab/passage.hpp"

namespace lpp::app {
namespace {

std::uint64_t case_seed(std::uint64_t base, int suite, int index) {
  std::seed_seq seq{static_cast<std::uint32_t>(base), static_cast<std::uint32_t>(base >> 32),
                    static_cast<std::uint32_t>(suite), static_cast<std::uint32_t>(index)};
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (std::uint64_t{out[0]} << 32) | out[1];
}

bool close(double a, double b) {
  return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b));
}

// The mutation fixture: the same recursion, but it counts v and drops u.
double off_by_one_passage_time(const WeightField& f, LatticePoint u, LatticePoint v) {
  const int w = v.x - u.x + 1, h = v.y - u.y + 1;
  std::vector<double> g(static_cast<std::size_t>(w * h), 0.0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (x == 0 && y == 0) continue;
      const double left = x > 0 ? g[y * w + x - 1] : -1e300;
      const double down = y > 0 ? g[(y - 1) * w + x] : -1e300;
      g[y * w + x] = std::max(left, down) + f.at(u.x + x, u.y + y);
    }
  }
  return g.back();
}

void record(SuiteReport& r, bool ok, std::uint64_t seed, const std::string& what) {
  ++r.checks;
  if (ok) return;
  ++r.mismatches;
  if (!r.failing_seed) {
    r.failing_seed = seed;
    r.first_failure = what;
  }
}

std::string describe(LatticePoint u, LatticePoint v, double got, double want) {
  std::ostringstream s;
  s.precision(17);
  s << "(" << u.x << "," << u.y << ")->(" << v.x << "," << v.y << "): got " << got
    << ", enumeration " << want;
  return s.str();
}

SuiteReport dp_suite(const SelftestOptions& o) {
  SuiteReport r;
  r.name = "dp-vs-brute-force";
  std::mt19937_64 shape(o.seed);
  std::uniform_int_distribution<int> side(1, o.max_size);
  for (int c = 0; c < o.cases; ++c) {
    const std::uint64_t seed = case_seed(o.seed, 1, c);
    const Box box{0, 0, side(shape) - 1, side(shape) - 1};
    const WeightField f = sample_field(seed, box);
    std::vector<LatticePoint> sites;
    for (int y = box.y0; y <= box.y1; ++y) {
      for (int x = box.x0; x <= box.x1; ++x) sites.push_back({x, y});
    }
    const auto batches = run_batches(f, sites, box, sites);
    for (std::size_t i = 0; i < sites.size(); ++i) {
      const LatticePoint u = sites[i];
      const PassageField pf = passage_field(f, u, box);
      const SourceBatch& batch = batches[i / kLanes];
      const int lane = static_cast<int>(i % kLanes);
      for (std::size_t j = 0; j < sites.size(); ++j) {
        const LatticePoint v = sites[j];
        if (!precedes(u, v)) continue;
        const BruteForceResult bf = brute_force(f, u, v);
        const double dp = o.off_by_one_dp ? off_by_one_passage_time(f, u, v) : pf.value(v);
        record(r, close(dp, bf.value), seed, "passage time " + describe(u, v, dp, bf.value));
        const double bv = batch.value(lane, static_cast<int>(j));
        record(r, close(bv, bf.value), seed, "batch kernel " + describe(u, v, bv, bf.value));
        const double cv = corner_passage(seed, u, v).value;
        record(r, close(cv, bf.value), seed, "corner kernel " + describe(u, v, cv, bf.value));
        record(r, pf.geodesic_to(v) == bf.argmax, seed,
               "geodesic differs from the enumerated argmax " + describe(u, v, dp, bf.value));
        record(r, batch.geodesic(lane, v) == bf.argmax, seed,
               "batch geodesic differs from the enumerated argmax " +
                   describe(u, v, bv, bf.value));
      }
    }
    ++r.cases;
  }
  return r;
}

SuiteReport disjoint_suite(const SelftestOptions& o) {
  SuiteReport r;
  r.name = "greedy-vs-exhaustive";
  std::mt19937_64 shape(o.seed ^ 0x9e3779b97f4a7c15ULL);
  const int max_half = std::max(0, (o.max_size - 1) / 3);
  for (int c = 0; c < o.cases; ++c) {
    const std::uint64_t seed = case_seed(o.seed, 2, c);
    const int ka = std::uniform_int_distribution<int>(0, max_half)(shape);
    const int kb = std::uniform_int_distribution<int>(0, max_half)(shape);
    // Keep the hull of both segments within max_size x max_size.
    const int span = std::max(ka, kb);
    const int n_max = o.max_size - 1 - 2 * span;
    if (n_max < 1) break;  // no room for two segments
    const int n = std::uniform_int_distribution<int>(1, n_max)(shape);
    const AntidiagSegment a{{0, 0}, ka};
    const AntidiagSegment b{{n, n}, kb};
    const WeightField f = sample_field(seed, hull(a.bounds(), b.bounds()));
    const int fast = max_disjoint_count(f, a, b);
    const int truth = max_disjoint_exhaustive(f, a, b);
    std::ostringstream what;
    what << "n=" << n << " |A|=" << a.size() << " |B|=" << b.size() << ": family "
         << fast << ", exhaustive " << truth;
    record(r, fast == truth, seed, what.str());
    ++r.cases;
  }
  return r;
}

}  // namespace

bool SelftestReport::ok() const {
  return std::all_of(suites.begin(), suites.end(),
                     [](const SuiteReport& s) { return s.mismatches == 0; });
}

SelftestReport run_selftest(const SelftestOptions& options) {
  require(options.max_size >= 1 && options.max_size <= 7,
          "selftest: max_size must be between 1 and 7");
  require(options.cases >= 0, "selftest: cases must be nonnegative");
  SelftestReport report;
  report.suites.push_back(dp_suite(options));
  report.suites.push_back(disjoint_suite(options));
  return report;
}

void print_report(std::ostream& out, const SelftestReport& report) {
  for (const auto& s : report.suites) {
    out << s.name << ": " << s.cases << " fields, " << s.checks << " checks, "
        << s.mismatches << " mismatches";
    if (s.failing_seed) {
      out << "\n  first failure (seed " << *s.failing_seed << "): " << s.first_failure;
    }
    out << "\n";
  }
  out << (report.ok() ? "selftest passed" : "selftest FAILED") << "\n";
}

}  // namespace lpp::app
