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

// Acceptance run: one PASS/FAIL line per criterion, each with its measured
// runtime against the budget. Pass criterion ids (AC1 ... AC10) to run a
// subset; LPPLAB_WORKERS sets the trial pool size (default: all cores).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "lpplab/experiments.hpp"
#include "lpplab/geometry.hpp"
#include "lpplab/passage.hpp"
#include "lpplab/stats.hpp"
#include "lpplab_app/report.hpp"
#include "lpplab_app/run_file.hpp"
#include "lpplab_app/selftest.hpp"

namespace {

using lpp::ExperimentKind;
using lpp::LatticePoint;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  std::string id;
  std::string title;
  double budget_seconds;
  std::function<Outcome()> run;
};

int workers() {
  if (const char* env = std::getenv("LPPLAB_WORKERS")) {
    const int w = std::atoi(env);
    if (w > 0) return w;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

lpp::ExperimentConfig config(ExperimentKind kind, std::vector<int> ns, int trials,
                             std::uint64_t seed) {
  auto c = lpp::make_config(kind, std::move(ns), trials, seed);
  c.workers = workers();
  c.params.keep_samples = true;
  return c;
}

std::string num(double x, int digits = 4) {
  std::ostringstream s;
  s.precision(digits);
  s << x;
  return s.str();
}

std::vector<double> estimates(const lpp::ExperimentResult& r, const std::string& name) {
  std::vector<double> out;
  for (const auto& s : r.scales) out.push_back(s.estimate(name).value);
  return out;
}

std::vector<double> ns_of(const lpp::ExperimentResult& r) {
  std::vector<double> out;
  for (const auto& s : r.scales) out.push_back(s.n);
  return out;
}

std::string fit_text(const lpp::FitResult& f) {
  return "slope " + num(f.slope) + " [" + num(f.ci_low) + ", " + num(f.ci_high) + "]";
}

// --- AC1 -------------------------------------------------------------------

Outcome oracle_equivalence() {
  lpp::app::SelftestOptions o;
  o.max_size = 7;
  o.cases = 1000;
  o.seed = 101;
  const auto report = lpp::app::run_selftest(o);
  const auto& dp = report.suites.front();
  Outcome out;
  out.pass = dp.mismatches == 0 && dp.cases == 1000;
  out.detail = std::to_string(dp.cases) + " fields, " + std::to_string(dp.checks) +
               " checks (value, batch, corner, geodesic), " + std::to_string(dp.mismatches) +
               " mismatches";
  if (dp.failing_seed) {
    out.detail += "; first failing seed " + std::to_string(*dp.failing_seed) + ": " +
                  dp.first_failure;
  }
  return out;
}

// --- AC2, AC3 ----------------------------------------------------------------

Outcome limit_shape() {
  auto c = config(ExperimentKind::kTwRescaling, {1000}, 500, 102);
  c.params.h = 1.0;
  const auto r = lpp::run_tw_rescaling(c);
  const auto& e = r.scales[0].estimate("mean_T_over_n");
  return {e.value >= 3.95 && e.value <= 4.00,
          "mean T/n = " + num(e.value, 6) + " (se " + num(e.se, 2) + "), band [3.95, 4.00]"};
}

Outcome tracy_widom() {
  auto c = config(ExperimentKind::kTwRescaling, {1000}, 1000, 103);
  c.params.h = 1.0;
  const auto r = lpp::run_tw_rescaling(c);
  const auto ref = lpp::TWReference::shipped();
  const auto& z = r.scales[0].sample("z").values;
  const auto& zb = r.scales[0].sample("z_bare").values;
  const double ks = lpp::ks_distance(z, ref);
  const double m = lpp::mean(z);
  const double ks_bare = lpp::ks_distance(zb, ref);
  return {ks <= 0.08 && std::abs(m - ref.mean()) <= 0.15,
          "KS " + num(ks, 3) + " (<= 0.08), mean " + num(m) + " vs " + num(ref.mean()) +
              " (+-0.15); scale h^(-1/6)(1+sqrt h)^(4/3) n^(1/3). With h^(-1/6) n^(1/3) alone: KS " +
              num(ks_bare, 3) + ", mean " + num(lpp::mean(zb))};
}

// --- AC4, AC5 ----------------------------------------------------------------

Outcome tf_exponent() {
  const auto c = config(ExperimentKind::kTf, {250, 500, 1000, 2000, 4000}, 200, 104);
  const auto r = lpp::run_tf(c);
  const auto med = estimates(r, "median_tf");
  const auto fit = lpp::fit_loglog(ns_of(r), med);
  std::string meds;
  for (double v : med) meds += (meds.empty() ? "" : ", ") + num(v);
  return {fit.slope >= 0.57 && fit.slope <= 0.77,
          "median global TF (" + meds + "); " + fit_text(fit) + ", band [0.57, 0.77]"};
}

Outcome midpoint_exponent() {
  const auto c = config(ExperimentKind::kMidpoint, {128, 256, 512, 1024, 2048}, 4000, 105);
  const auto r = lpp::run_midpoint(c);
  const auto p = estimates(r, "p_midpoint");
  const auto fit = lpp::fit_loglog(ns_of(r), p);
  std::string ps;
  for (double v : p) ps += (ps.empty() ? "" : ", ") + num(v);
  return {fit.slope >= -0.85 && fit.slope <= -0.50,
          "P(midpoint) (" + ps + "); " + fit_text(fit) + ", band [-0.85, -0.50]"};
}

// --- AC6, AC7 ----------------------------------------------------------------

Outcome disjoint_tightness() {
  auto c = config(ExperimentKind::kDisjoint, {500, 1000, 2000}, 500, 106);
  c.params.ell_max = 6;
  const auto r = lpp::run_disjoint_tail(c);
  const auto means = estimates(r, "mean_N");
  const double lo = *std::min_element(means.begin(), means.end());
  const double hi = *std::max_element(means.begin(), means.end());
  const bool tight = hi / lo - 1.0 < 0.25;
  bool shape = true;
  std::string tails;
  for (const auto& s : r.scales) {
    const auto& t = s.curve("tail");
    std::vector<double> p;  // l = 2..6
    for (std::size_t i = 0; i < t.x.size(); ++i) {
      if (t.x[i] >= 2 && t.x[i] <= 6) p.push_back(t.p[i]);
    }
    bool decreasing = true, convex = true;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
      if (p[i] > 0) decreasing = decreasing && p[i + 1] < p[i];
    }
    for (std::size_t i = 0; i + 2 < p.size(); ++i) {
      if (p[i] > 0 && p[i + 1] > 0 && p[i + 2] > 0) {
        convex = convex && std::log(p[i + 1]) <= 0.5 * (std::log(p[i]) + std::log(p[i + 2]));
      }
    }
    shape = shape && decreasing && convex;
    tails += " n=" + std::to_string(s.n) + ":";
    for (double v : p) tails += " " + num(v, 3);
    tails += decreasing ? " (decr" : " (not decr";
    tails += convex ? ", log-convex)" : ", not log-convex)";
  }
  std::string ms;
  for (double v : means) ms += (ms.empty() ? "" : ", ") + num(v);
  return {tight && shape, "mean N (" + ms + "), spread " + num(100 * (hi / lo - 1), 3) +
                              "% (< 25%); P(N>=l), l=2..6:" + tails};
}

Outcome coalescence_classes() {
  const auto c = config(ExperimentKind::kCoalescence, {500, 1000}, 200, 107);
  const auto r = lpp::run_coalescence(c);
  const auto m = estimates(r, "mean_M");
  const auto nn = estimates(r, "mean_N_over_n");
  const double ratio = m[1] / m[0];
  const double band = std::max(nn[0], nn[1]) / std::min(nn[0], nn[1]);
  return {ratio >= 0.6 && ratio <= 1.6 && band <= 1.5,
          "mean M " + num(m[0]) + " -> " + num(m[1]) + " (ratio " + num(ratio) +
              ", [0.6, 1.6]); mean N/n " + num(nn[0]) + " -> " + num(nn[1]) + " (factor " +
              num(band) + ", <= 1.5)"};
}

// --- AC8, AC9 ----------------------------------------------------------------

Outcome origin_hit_decay() {
  auto c = config(ExperimentKind::kOriginHit, {32, 64, 128, 256}, 2000, 108);
  c.params.h = 0.5;
  const auto r = lpp::run_origin_hit(c);
  const auto p = estimates(r, "p_origin_hit");
  bool decreasing = true;
  for (std::size_t i = 1; i < p.size(); ++i) decreasing = decreasing && p[i] < p[i - 1];
  const auto fit = lpp::fit_loglog(ns_of(r), p);
  std::string ps;
  for (double v : p) ps += (ps.empty() ? "" : ", ") + num(v);
  return {decreasing && fit.slope >= -0.60 && fit.slope <= -0.10,
          "P(E) (" + ps + ")" + (decreasing ? " strictly decreasing; " : " NOT strictly decreasing; ") +
              fit_text(fit) + ", band [-0.60, -0.10]"};
}

Outcome steep_collapse() {
  auto c = config(ExperimentKind::kTf, {4000}, 300, 109);
  c.params.mode = "local_steep";
  c.params.L = 1000;
  c.params.eps_list = {0.01, 0.04};
  const auto r = lpp::run_tf(c);
  bool pass = true;
  std::string detail;
  for (const auto& s : r.scales) {
    const double med = s.estimate("median_tf_scaled").value;
    const auto& cv = s.curve("tf_exceedance");
    bool halving = true;
    int pairs = 0;
    for (std::size_t i = 0; i < cv.x.size(); ++i) {
      for (std::size_t j = 0; j < cv.x.size(); ++j) {
        if (cv.x[j] == 2 * cv.x[i] && cv.p[i] > 0 && cv.p[j] > 0) {
          halving = halving && cv.p[j] < cv.p[i];
          ++pairs;
        }
      }
    }
    pass = pass && med >= 0.1 && med <= 10 && halving;
    detail += s.variant + ": median " + num(med, 3) + " (TF = 0 in " +
              num(100 * s.estimate("fraction_zero").value, 3) + "% of trials), P(2x) < P(x) on " +
              std::to_string(pairs) + " pairs " + (halving ? "ok" : "VIOLATED") + "; ";
  }
  return {pass, detail + "median band [0.1, 10]"};
}

// --- AC10 --------------------------------------------------------------------

std::map<int, int> offsets(const lpp::Path& p) {
  std::map<int, int> out;
  for (const auto& q : p) out[lpp::antidiag(q)] = lpp::antidiag_offset(q);
  return out;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Outcome property_suites() {
  std::mt19937_64 gen(110);
  std::string detail;
  bool pass = true;

  // Polymer ordering: endpoints ordered along both anti-diagonals give
  // geodesics that never strictly cross.
  int violations = 0, pairs = 0;
  for (int field = 0; field < 100; ++field) {
    const lpp::AntidiagSegment a{{0, 0}, 6};
    const lpp::AntidiagSegment b{{24, 24}, 6};
    const auto f = lpp::sample_field(gen(), lpp::hull(a.bounds(), b.bounds()));
    std::uniform_int_distribution<int> ra(0, a.size() - 1), rb(0, b.size() - 1);
    for (int t = 0; t < 100; ++t) {
      int i = ra(gen), i2 = ra(gen), j = rb(gen), j2 = rb(gen);
      if (i > i2) std::swap(i, i2);
      if (j > j2) std::swap(j, j2);
      const auto lo = offsets(lpp::geodesic(f, a.at_rank(i), b.at_rank(j)));
      const auto hi = offsets(lpp::geodesic(f, a.at_rank(i2), b.at_rank(j2)));
      for (const auto& [s, d] : lo) violations += hi.count(s) && d > hi.at(s);
      ++pairs;
    }
  }
  pass = pass && violations == 0;
  detail += "ordering " + std::to_string(violations) + " violations/" + std::to_string(pairs) +
            " pairs; ";

  // Coalescence classes partition the pairs by their band restriction.
  int bad_partitions = 0;
  for (int inst = 0; inst < 40; ++inst) {
    const int n = 12 + static_cast<int>(gen() % 20);
    const lpp::AntidiagSegment a{{0, 0}, 1 + static_cast<int>(gen() % 4)};
    const lpp::AntidiagSegment b{{n, n}, 1 + static_cast<int>(gen() % 4)};
    const auto f = lpp::sample_field(gen(), lpp::hull(a.bounds(), b.bounds()));
    const auto band = lpp::Stretch::antidiags(2 * n / 3, 4 * n / 3);
    const auto res = lpp::coalescence_classes(f, a, b, band);
    std::map<std::vector<std::pair<int, int>>, int> seen;
    bool ok = true;
    int next = 0;
    for (int i = 0; i < a.size(); ++i) {
      for (int j = 0; j < b.size(); ++j) {
        const int label = res.labels[i * b.size() + j];
        if (!lpp::precedes(a.at_rank(i), b.at_rank(j))) {
          ok = ok && label == -1;
          continue;
        }
        std::vector<std::pair<int, int>> key;
        for (const auto& q : lpp::geodesic(f, a.at_rank(i), b.at_rank(j))) {
          if (band.contains(q)) key.emplace_back(q.x, q.y);
        }
        const auto [it, fresh] = seen.emplace(key, next);
        if (fresh) ++next;
        ok = ok && label == it->second;
      }
    }
    ok = ok && res.classes == next;
    bad_partitions += !ok;
  }
  pass = pass && bad_partitions == 0;
  detail += "partitions " + std::to_string(bad_partitions) + " invalid/40; ";

  // Encoding counts against direct enumeration.
  int count_mismatch = 0;
  for (int ell = 1; ell <= 6; ++ell) {
    for (int s = 0; s <= 8; ++s) {
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
      count_mismatch += lpp::count_monotone_encodings(ell, s) != count;
    }
  }
  pass = pass && count_mismatch == 0;
  detail += "encoding counts " + std::to_string(count_mismatch) + " mismatches/54; ";

  // Disjoint-family size against exhaustive subset search.
  int disjoint_mismatch = 0;
  for (int t = 0; t < 500; ++t) {
    const int n = 2 + static_cast<int>(gen() % 11);
    const lpp::AntidiagSegment a{{0, 0}, static_cast<int>(gen() % 3)};
    const lpp::AntidiagSegment b{{n, n}, static_cast<int>(gen() % 3)};
    const auto f = lpp::sample_field(gen(), lpp::hull(a.bounds(), b.bounds()));
    disjoint_mismatch += lpp::max_disjoint_count(f, a, b) != lpp::max_disjoint_exhaustive(f, a, b);
  }
  pass = pass && disjoint_mismatch == 0;
  detail += "disjoint families " + std::to_string(disjoint_mismatch) + " mismatches/500; ";

  // Two runs of the smoke config give byte-identical outputs.
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / "lpplab_acceptance_smoke";
  fs::remove_all(root);
  std::vector<fs::path> files;
  for (const char* dir : {"a", "b"}) {
    auto run = lpp::app::load_run_file(LPPLAB_SMOKE_CONFIG);
    std::vector<lpp::ExperimentResult> results;
    for (const auto& c : run.experiments) results.push_back(lpp::run_experiment(c));
    files = lpp::app::write_outputs(run, results, root / dir);
  }
  int differing = 0, compared = 0;
  for (const auto& f : files) {
    if (f.filename() == "timing.json") continue;
    differing += slurp(f) != slurp(root / "a" / f.filename());
    ++compared;
  }
  fs::remove_all(root);
  pass = pass && differing == 0 && compared > 0;
  detail += "smoke rerun " + std::to_string(differing) + " differing/" +
            std::to_string(compared) + " files";
  return {pass, detail};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {"AC1", "oracle equivalence", 30, oracle_equivalence},
      {"AC2", "limit shape", 120, limit_shape},
      {"AC3", "Tracy-Widom", 300, tracy_widom},
      {"AC4", "transversal fluctuation exponent", 600, tf_exponent},
      {"AC5", "midpoint exponent", 900, midpoint_exponent},
      {"AC6", "disjoint-geodesic tightness", 600, disjoint_tightness},
      {"AC7", "coalescence classes", 900, coalescence_classes},
      {"AC8", "origin-hit decay", 1800, origin_hit_decay},
      {"AC9", "steep local TF collapse", 600, steep_collapse},
      {"AC10", "property suites", 300, property_suites},
  };
  std::set<std::string> wanted(argv + 1, argv + argc);
  int failures = 0, ran = 0;
  std::cout << "lpplab " << lpp::library_version() << " acceptance, " << workers()
            << " worker(s)\n" << std::flush;
  for (const auto& c : all) {
    if (!wanted.empty() && !wanted.count(c.id)) continue;
    ++ran;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.budget_seconds;
    const bool pass = o.pass && in_time;
    failures += !pass;
    std::printf("%s %s %s: %s [%.1f s, budget %.0f s%s]\n", c.id.c_str(), pass ? "PASS" : "FAIL",
                c.title.c_str(), o.detail.c_str(), secs, c.budget_seconds,
                in_time ? "" : ", OVER BUDGET");
    std::fflush(stdout);
  }
  if (ran == 0) {
    std::cerr << "no criterion matched the arguments\n";
    return 2;
  }
  std::printf("%d of %d criteria passed\n", ran - failures, ran);
  return failures == 0 ? 0 : 1;
}
