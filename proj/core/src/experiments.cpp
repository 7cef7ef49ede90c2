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

// Monte Carlo runners. Each runner maps a trial seed to a fixed vector of
// per-trial metrics; aggregation into estimates, curves and samples happens
// afterwards in trial order.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "lpplab/batch_passage.hpp"
#include "lpplab/corner_passage.hpp"
#include "lpplab/errors.hpp"
#include "lpplab/experiments.hpp"
#include "lpplab/geometry.hpp"
#include "lpplab/stage_grid.hpp"
#include "lpplab/stats.hpp"
#include "trial_pool.hpp"

namespace lpp {
namespace {

using detail::TrialOut;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Columns {
  std::vector<std::vector<double>> cols;
  std::uint64_t ties = 0;
  const std::vector<double>& operator[](std::size_t k) const { return cols[k]; }
};

template <class F>
Columns collect(const ExperimentConfig& c, int n, int variant, std::size_t metrics,
                F&& trial) {
  auto outs = detail::run_trials(c.trials, c.workers, [&](int t) {
    return trial(derive_seed(c.master_seed, c.kind, n, variant,
                             static_cast<std::uint64_t>(t)));
  });
  Columns out;
  out.cols.assign(metrics, std::vector<double>(outs.size()));
  for (std::size_t t = 0; t < outs.size(); ++t) {
    if (outs[t].values.size() != metrics) {
      throw std::logic_error("trial returned the wrong number of metrics");
    }
    for (std::size_t k = 0; k < metrics; ++k) out.cols[k][t] = outs[t].values[k];
    out.ties += outs[t].ties;
  }
  return out;
}

Estimate mean_of(std::string name, const std::vector<double>& xs) {
  return {std::move(name), mean(xs), standard_error(xs)};
}

Estimate proportion(std::string name, double hits, double trials) {
  const double p = hits / trials;
  return {std::move(name), p, std::sqrt(p * (1.0 - p) / trials)};
}

Estimate median_of(std::string name, const std::vector<double>& xs) {
  return {std::move(name), median(xs), kNaN};
}

std::vector<double> finite(const std::vector<double>& xs) {
  std::vector<double> out;
  for (double x : xs) {
    if (std::isfinite(x)) out.push_back(x);
  }
  return out;
}

// p(x) = fraction of values >= x (or <= -x when `lower`).
template <class Grid>
Curve exceedance(std::string name, std::string abscissa, const std::vector<double>& vals,
                 const Grid& grid, bool lower = false) {
  Curve c;
  c.name = std::move(name);
  c.abscissa = std::move(abscissa);
  const double total = static_cast<double>(vals.size());
  for (const auto g : grid) {
    const double x = static_cast<double>(g);
    double hits = 0;
    for (double v : vals) hits += lower ? (v <= -x) : (v >= x);
    const double p = total > 0 ? hits / total : 0.0;
    c.x.push_back(x);
    c.p.push_back(p);
    c.se.push_back(total > 0 ? std::sqrt(p * (1.0 - p) / total) : 0.0);
  }
  return c;
}

void add_sample(ScaleResult& s, const ExperimentConfig& c, std::string name,
                const std::vector<double>& values) {
  if (c.params.keep_samples) s.samples.push_back({std::move(name), values});
}

ExperimentResult start(const ExperimentConfig& c, ExperimentKind expected) {
  require(c.kind == expected, "runner called with a config of kind " +
                                  std::string(kind_name(c.kind)));
  validate(c);
  ExperimentResult r;
  r.config = c;
  r.version = library_version();
  return r;
}

double n23(int n) { return std::cbrt(static_cast<double>(n) * n); }

std::string eps_label(double eps) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "eps=%g", eps);
  return buf;
}

// --- disjoint geodesics ----------------------------------------------------

TrialOut disjoint_trial(std::uint64_t seed, int n, double wf) {
  const AntidiagSegment a = antidiag_segment(n, {0, 0}, wf);
  const AntidiagSegment b = antidiag_segment(n, {n, n}, wf);
  const WeightField f = sample_field(seed, hull(a.bounds(), b.bounds()));
  const SegmentGeodesics geo(f, a, b);
  const DisjointFamily fam = max_disjoint_family(geo);
  return {{static_cast<double>(fam.count), static_cast<double>(fam.lower),
           static_cast<double>(fam.upper), fam.refined ? 1.0 : 0.0},
          geo.ties()};
}

// --- coalescence -----------------------------------------------------------

Stretch middle_band(int n, const ExperimentParams& p) {
  return Stretch::antidiags(static_cast<int>(std::lround(p.band_lo * n)),
                            static_cast<int>(std::lround(p.band_hi * n)));
}

TrialOut coalescence_trial(std::uint64_t seed, int n, const ExperimentParams& p) {
  const AntidiagSegment a = antidiag_segment(n, {0, 0}, p.width_factor);
  const AntidiagSegment b = antidiag_segment(n, {n, n}, p.width_factor);
  const WeightField f = sample_field(seed, hull(a.bounds(), b.bounds()));
  const SegmentGeodesics geo(f, a, b);
  const CoalescenceResult r = coalescence_classes(geo, middle_band(n, p));
  return {{static_cast<double>(r.classes), static_cast<double>(r.band_vertices)},
          geo.ties()};
}

// Intervals of `len` consecutive points along the entry sides (bottom, then
// left without the corner) or exit sides (top, then right without the
// corner) of [-n, n]^2.
std::vector<std::vector<LatticePoint>> side_intervals(int n, int len, bool entry) {
  std::vector<std::vector<LatticePoint>> out;
  auto cut = [&](const std::vector<LatticePoint>& side) {
    for (std::size_t i = 0; i < side.size(); i += static_cast<std::size_t>(len)) {
      const std::size_t e = std::min(side.size(), i + static_cast<std::size_t>(len));
      out.emplace_back(side.begin() + static_cast<std::ptrdiff_t>(i),
                       side.begin() + static_cast<std::ptrdiff_t>(e));
    }
  };
  std::vector<LatticePoint> horiz, vert;
  const int y_h = entry ? -n : n;
  const int x_v = entry ? -n : n;
  for (int x = -n; x <= n; ++x) horiz.push_back({x, y_h});
  for (int y = -n; y <= n; ++y) {
    if (entry ? y == -n : y == n) continue;  // corner belongs to the horizontal side
    vert.push_back({x_v, y});
  }
  cut(horiz);
  cut(vert);
  return out;
}

struct Mid {
  double x, y;
};

Mid midpoint_of(const std::vector<LatticePoint>& seg) {
  return {0.5 * (seg.front().x + seg.back().x), 0.5 * (seg.front().y + seg.back().y)};
}

// N_n(I, J) for every h-compatible pair: vertices of the central box lying
// on some geodesic from I to J. Returns (pairs, mean, max) of N / n.
TrialOut side_trial(std::uint64_t seed, int n, const ExperimentParams& p) {
  const Box square{-n, -n, n, n};
  const WeightField f = sample_field(seed, square);
  const int len = std::max(1, two_thirds_floor(n));
  const auto ents = side_intervals(n, len, true);
  const auto exits = side_intervals(n, len, false);
  const double lo = p.compat_lo * p.h, hi = p.compat_hi / p.h;
  const int c = static_cast<int>(std::floor(p.center_factor * p.h * n));
  const Box center{-c, -c, c, c};

  std::vector<std::int64_t> stamp(static_cast<std::size_t>(square.area()), -1);
  std::vector<std::int64_t> center_mark(static_cast<std::size_t>(center.area()), -1);
  std::int64_t next_stamp = 0;
  std::uint64_t ties = 0;
  double sum = 0.0, best = 0.0;
  int pairs = 0;

  for (const auto& in : ents) {
    const Mid mi = midpoint_of(in);
    std::vector<int> partners;
    std::vector<LatticePoint> targets;
    for (std::size_t j = 0; j < exits.size(); ++j) {
      const Mid mj = midpoint_of(exits[j]);
      const double dx = mj.x - mi.x, dy = mj.y - mi.y;
      if (dx <= 0.0) continue;
      const double slope = dy / dx;
      if (slope > lo && slope < hi) {
        partners.push_back(static_cast<int>(j));
        targets.insert(targets.end(), exits[j].begin(), exits[j].end());
      }
    }
    if (partners.empty()) continue;
    const auto batches = run_batches(f, in, square, targets);
    for (const auto& b : batches) ties += b.ties();
    for (int j : partners) {
      const std::int64_t pair_mark = next_stamp++;
      std::int64_t count = 0;
      for (const auto& b : batches) {
        for (int l = 0; l < b.lanes(); ++l) {
          const std::int64_t s = next_stamp++;
          for (std::size_t k = 0; k < exits[j].size(); ++k) {
            const LatticePoint v = exits[j][k];
            if (!precedes(b.source(l), v)) continue;
            b.trace(l, v, [&](LatticePoint q) {
              auto& st = stamp[static_cast<std::size_t>(square.index(q))];
              if (st == s) return false;  // rest of this lane's path already seen
              st = s;
              if (center.contains(q)) {
                auto& cm = center_mark[static_cast<std::size_t>(center.index(q))];
                if (cm != pair_mark) {
                  cm = pair_mark;
                  ++count;
                }
              }
              return antidiag(q) >= -2 * c;
            });
          }
        }
      }
      const double per_n = static_cast<double>(count) / n;
      sum += per_n;
      best = std::max(best, per_n);
      ++pairs;
    }
  }
  return {{static_cast<double>(pairs), pairs ? sum / pairs : 0.0, best}, ties};
}

// --- thin cylinder -----------------------------------------------------------

struct ThinSetup {
  AntidiagSegment a;
  AntidiagSegment b;
  StageGrid grid;
  Box region;
  double center = 0.0;
};

ThinSetup thin_setup(int n, const ExperimentParams& p) {
  ThinSetup s;
  const int stages = static_cast<int>(p.h);
  const int cells_per_unit =
      std::max(1, static_cast<int>(std::lround(std::pow(stages, 2.0 / 3.0) / p.c0)));
  const int wfac = std::max(1, static_cast<int>(std::floor(std::pow(p.ell, 0.125))));
  const LatticePoint end{n, static_cast<int>(std::lround(p.m * n))};
  s.a = antidiag_segment(n, {0, 0}, p.width_factor);
  s.b = antidiag_segment(n, end, p.width_factor);
  if (stages == 0) {
    // One cell per line holding the whole of A and B: the constrained
    // maximum is then the plain maximum over A x B.
    s.grid = StageGrid::single_cell({0, 0}, end, 1, s.a.half_span);
  } else {
    s.grid = StageGrid::on_scale(n, stages, cells_per_unit, wfac, {0, 0}, end);
  }
  s.region = hull(s.a.bounds(), s.b.bounds());
  const int last = s.grid.first_cell + s.grid.cells - 1;
  for (int i = 0; i <= s.grid.stages; ++i) {
    s.region = hull(s.region, hull(s.grid.cell_points(i, s.grid.first_cell)));
    s.region = hull(s.region, hull(s.grid.cell_points(i, last)));
  }
  s.center = std::pow(std::sqrt(static_cast<double>(end.x)) +
                          std::sqrt(static_cast<double>(end.y)),
                      2.0);
  return s;
}

TrialOut thin_trial(std::uint64_t seed, const ThinSetup& s, const ExperimentParams& p) {
  const WeightField f = sample_field(seed, s.region);
  GridEncoding zero{s.grid.stages, s.grid.per_unit,
                    std::vector<int>(static_cast<std::size_t>(s.grid.stages + 1), 0)};
  GridEncoding rnd = zero;
  std::mt19937_64 gen(seed ^ 0x5bd1e995u);
  std::uniform_int_distribution<int> pick(s.grid.first_cell,
                                          s.grid.first_cell + s.grid.cells - 1);
  for (auto& j : rnd.j) j = pick(gen);
  const auto central = constrained_best(f, s.a, s.b, s.grid, zero);
  const auto random = constrained_best(f, s.a, s.b, s.grid, rnd);
  double inf = kNaN, sup = kNaN;
  std::uint64_t ties = 0;
  if (p.with_inf) {
    const auto batches = run_batches(f, s.a.points(), s.region, s.b.points(),
                                     BatchOptions{false, std::nullopt});
    inf = std::numeric_limits<double>::infinity();
    sup = -inf;
    for (const auto& b : batches) {
      ties += b.ties();
      for (int l = 0; l < b.lanes(); ++l) {
        for (int t = 0; t < s.b.size(); ++t) {
          if (!b.reachable(l, t)) continue;
          inf = std::min(inf, b.value(l, t));
          sup = std::max(sup, b.value(l, t));
        }
      }
    }
    inf -= s.center;
    sup -= s.center;
  }
  const double inf_neg = -std::numeric_limits<double>::infinity();
  return {{central ? *central - s.center : inf_neg, random ? *random - s.center : inf_neg,
           inf, sup},
          ties};
}

// --- segment fluctuations --------------------------------------------------

struct FluctSetup {
  std::vector<LatticePoint> sources;
  std::vector<LatticePoint> targets;
  Box region;
  double scale = 1.0;
};

FluctSetup fluct_setup(int n, const ExperimentParams& p) {
  FluctSetup s;
  if (p.region == "vertical") {
    const int k = two_thirds_floor(n, p.width_factor);
    const int y1 = static_cast<int>(std::lround(p.m * n));
    for (int i = 0; i <= k; ++i) s.sources.push_back({0, i});
    for (int i = 0; i <= k; ++i) s.targets.push_back({n, y1 + i});
    s.scale = std::cbrt(static_cast<double>(n));
  } else if (p.region == "tilted") {
    // Short sides on x + y = 0 and x + y = n; the midpoints are joined by a
    // line of slope m.
    const int hs = two_thirds_floor(n, 0.5 * p.width_factor);
    const int bx = static_cast<int>(std::lround(n / (1.0 + p.m)));
    s.sources = AntidiagSegment{{0, 0}, hs}.points();
    s.targets = AntidiagSegment{{bx, n - bx}, hs}.points();
    s.scale = std::cbrt(static_cast<double>(n));
  } else {  // steep
    const int k = static_cast<int>(
        std::floor(p.width_factor * std::pow(p.eps, 2.0 / 3.0) * n23(n)));
    const int x1 = static_cast<int>(std::lround(p.m * n));
    for (int i = 0; i <= k; ++i) s.sources.push_back({i, 0});
    for (int i = 0; i <= k; ++i) s.targets.push_back({x1 + i, n});
    s.scale = std::pow(p.eps, -1.0 / 6.0) * std::cbrt(static_cast<double>(n));
  }
  s.region = hull(hull(s.sources), hull(s.targets));
  return s;
}

// T for all pairs, row-major (source, target); -inf where undefined.
std::vector<double> all_pair_times(const WeightField& f, const FluctSetup& s,
                                   std::uint64_t& ties) {
  std::vector<double> out;
  out.reserve(s.sources.size() * s.targets.size());
  const auto batches = run_batches(f, s.sources, s.region, s.targets,
                                   BatchOptions{false, std::nullopt});
  for (const auto& b : batches) {
    ties += b.ties();
    for (int l = 0; l < b.lanes(); ++l) {
      for (std::size_t t = 0; t < s.targets.size(); ++t) {
        out.push_back(b.value(l, static_cast<int>(t)));
      }
    }
  }
  return out;
}

double analytic_center(LatticePoint u, LatticePoint v) {
  const int dx = v.x - u.x, dy = v.y - u.y;
  require(dx > 0 && dy > 0,
          "analytic centering needs v - u with both coordinates positive");
  return std::pow(std::sqrt(static_cast<double>(dx)) + std::sqrt(static_cast<double>(dy)),
                  2.0);
}

}  // namespace

// ---------------------------------------------------------------------------

ExperimentResult run_disjoint_tail(const ExperimentConfig& c) {
  ExperimentResult r = start(c, ExperimentKind::kDisjoint);
  const auto t0 = std::chrono::steady_clock::now();
  for (int n : c.n_list) {
    const Columns col = collect(c, n, 0, 4, [&](std::uint64_t seed) {
      return disjoint_trial(seed, n, c.params.width_factor);
    });
    ScaleResult s;
    s.n = n;
    s.trials = c.trials;
    s.estimates.push_back(mean_of("mean_N", col[0]));
    s.estimates.push_back(mean_of("mean_greedy_lower", col[1]));
    s.estimates.push_back(mean_of("mean_envelope_upper", col[2]));
    double refined = 0;
    for (double v : col[3]) refined += v;
    s.estimates.push_back(proportion("refined_fraction", refined, c.trials));
    std::vector<int> ells;
    for (int l = 1; l <= c.params.ell_max; ++l) ells.push_back(l);
    s.curves.push_back(exceedance("tail", "ell", col[0], ells));
    add_sample(s, c, "N", col[0]);
    r.ties += col.ties;
    r.scales.push_back(std::move(s));
  }
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

ExperimentResult run_coalescence(const ExperimentConfig& c) {
  ExperimentResult r = start(c, ExperimentKind::kCoalescence);
  const auto t0 = std::chrono::steady_clock::now();
  const ExperimentParams& p = c.params;
  for (int n : c.n_list) {
    ScaleResult s;
    s.n = n;
    s.trials = c.trials;
    if (p.geometry == "side") {
      const Columns col = collect(c, n, 1, 3, [&](std::uint64_t seed) {
        return side_trial(seed, n, p);
      });
      s.variant = "side";
      s.estimates.push_back({"pairs", col[0].empty() ? 0.0 : col[0][0], kNaN});
      s.estimates.push_back(mean_of("mean_pair_N_over_n", col[1]));
      s.estimates.push_back(mean_of("max_pair_N_over_n", col[2]));
      add_sample(s, c, "mean_pair_N_over_n", col[1]);
      add_sample(s, c, "max_pair_N_over_n", col[2]);
      r.ties += col.ties;
    } else {
      const Columns col = collect(c, n, 0, 2, [&](std::uint64_t seed) {
        return coalescence_trial(seed, n, p);
      });
      std::vector<double> per_n(col[1]);
      for (auto& v : per_n) v /= n;
      s.estimates.push_back(mean_of("mean_M", col[0]));
      s.estimates.push_back(mean_of("mean_N", col[1]));
      s.estimates.push_back(mean_of("mean_N_over_n", per_n));
      const Stretch band = middle_band(n, p);
      s.estimates.push_back({"band_lo", static_cast<double>(band.lo), kNaN});
      s.estimates.push_back({"band_hi", static_cast<double>(band.hi), kNaN});
      std::vector<int> ells;
      for (int l = 1; l <= p.ell_max; ++l) ells.push_back(l);
      s.curves.push_back(exceedance("tail_M", "ell", col[0], ells));
      add_sample(s, c, "M", col[0]);
      add_sample(s, c, "N", col[1]);
      r.ties += col.ties;
    }
    r.scales.push_back(std::move(s));
  }
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

ExperimentResult run_midpoint(const ExperimentConfig& c) {
  ExperimentResult r = start(c, ExperimentKind::kMidpoint);
  const auto t0 = std::chrono::steady_clock::now();
  for (int n : c.n_list) {
    const Columns col = collect(c, n, 0, 1, [&](std::uint64_t seed) {
      CornerOptions opt;
      opt.through = LatticePoint{n / 2, n / 2};
      const CornerPassage cp = corner_passage(seed, {0, 0}, {n, n}, opt);
      return TrialOut{{cp.through ? 1.0 : 0.0}, cp.ties};
    });
    ScaleResult s;
    s.n = n;
    s.trials = c.trials;
    double hits = 0;
    for (double v : col[0]) hits += v;
    s.estimates.push_back(proportion("p_midpoint", hits, c.trials));
    add_sample(s, c, "hit", col[0]);
    r.ties += col.ties;
    r.scales.push_back(std::move(s));
  }
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

bool origin_hit_trial(std::uint64_t seed, int n, double slope_min, double slope_max) {
  require(n >= 1, "origin_hit_trial: n must be at least 1");
  const Box square{-n, -n, n, n};
  const WeightField f = sample_field(seed, square);
  // Entry points below the origin, listed along the boundary from (-n, 0)
  // down to the corner and then right to (0, -n).
  std::vector<LatticePoint> sources;
  for (int y = 0; y > -n; --y) sources.push_back({-n, y});
  for (int x = -n; x <= 0; ++x) sources.push_back({x, -n});
  std::vector<LatticePoint> exits;
  for (int x = 0; x <= n; ++x) exits.push_back({x, n});
  for (int y = n - 1; y >= 0; --y) exits.push_back({n, y});
  auto in_window = [&](LatticePoint u, LatticePoint v) {
    const int dx = v.x - u.x, dy = v.y - u.y;
    if (dx <= 0) return false;
    const double s = static_cast<double>(dy) / dx;
    return s > slope_min && s < slope_max;
  };
  BatchOptions opt;
  opt.keep_backsteps = false;
  opt.through = LatticePoint{0, 0};
  for (std::size_t b0 = 0; b0 < sources.size(); b0 += kLanes) {
    const std::size_t b1 = std::min(sources.size(), b0 + kLanes);
    const std::span<const LatticePoint> lanes(sources.data() + b0, b1 - b0);
    std::vector<LatticePoint> targets;
    for (const auto& v : exits) {
      if (std::any_of(lanes.begin(), lanes.end(),
                      [&](LatticePoint u) { return in_window(u, v); })) {
        targets.push_back(v);
      }
    }
    if (targets.empty()) continue;
    const SourceBatch batch = run_batch(f, lanes, square, targets, opt);
    for (int l = 0; l < batch.lanes(); ++l) {
      for (std::size_t t = 0; t < targets.size(); ++t) {
        if (in_window(lanes[l], targets[t]) &&
            batch.passes_through(l, static_cast<int>(t))) {
          return true;
        }
      }
    }
  }
  return false;
}

ExperimentResult run_origin_hit(const ExperimentConfig& c) {
  ExperimentResult r = start(c, ExperimentKind::kOriginHit);
  const auto t0 = std::chrono::steady_clock::now();
  const double lo = c.params.slope_lo * c.params.h;
  const double hi = c.params.slope_hi / c.params.h;
  for (int n : c.n_list) {
    const Columns col = collect(c, n, 0, 1, [&](std::uint64_t seed) {
      return TrialOut{{origin_hit_trial(seed, n, lo, hi) ? 1.0 : 0.0}, 0};
    });
    ScaleResult s;
    s.n = n;
    s.trials = c.trials;
    double hits = 0;
    for (double v : col[0]) hits += v;
    s.estimates.push_back(proportion("p_origin_hit", hits, c.trials));
    s.estimates.push_back({"slope_min", lo, kNaN});
    s.estimates.push_back({"slope_max", hi, kNaN});
    add_sample(s, c, "hit", col[0]);
    r.scales.push_back(std::move(s));
  }
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

ExperimentResult run_tw_rescaling(const ExperimentConfig& c) {
  ExperimentResult r = start(c, ExperimentKind::kTwRescaling);
  const auto t0 = std::chrono::steady_clock::now();
  for (int n : c.n_list) {
    const int yn = static_cast<int>(std::lround(c.params.h * n));
    const double h = static_cast<double>(yn) / n;
    const double centre = n * (1.0 + std::sqrt(h)) * (1.0 + std::sqrt(h));
    const double bare = std::pow(h, -1.0 / 6.0) * std::cbrt(static_cast<double>(n));
    const double full = bare * std::pow(1.0 + std::sqrt(h), 4.0 / 3.0);
    const Columns col = collect(c, n, 0, 1, [&](std::uint64_t seed) {
      const CornerPassage cp = corner_passage(seed, {0, 0}, {n, yn});
      return TrialOut{{cp.value}, cp.ties};
    });
    std::vector<double> t_over_n, z, zb;
    for (double t : col[0]) {
      t_over_n.push_back(t / n);
      z.push_back((t - centre) / full);
      zb.push_back((t - centre) / bare);
    }
    std::vector<double> abs_z;
    for (double v : z) abs_z.push_back(std::abs(v));
    ScaleResult s;
    s.n = n;
    s.trials = c.trials;
    s.estimates.push_back(mean_of("mean_T_over_n", t_over_n));
    s.estimates.push_back({"centering", centre, kNaN});
    s.estimates.push_back({"scale", full, kNaN});
    s.estimates.push_back({"scale_bare", bare, kNaN});
    s.estimates.push_back(mean_of("mean_z", z));
    s.estimates.push_back({"sd_z", standard_error(z) * std::sqrt(static_cast<double>(z.size())), kNaN});
    s.estimates.push_back(mean_of("mean_z_bare", zb));
    s.curves.push_back(exceedance("abs_z_exceedance", "t", abs_z, c.params.t_grid));
    add_sample(s, c, "z", z);
    add_sample(s, c, "z_bare", zb);
    add_sample(s, c, "T", col[0]);
    r.ties += col.ties;
    r.scales.push_back(std::move(s));
  }
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

ExperimentResult run_segment_fluct(const ExperimentConfig& c) {
  ExperimentResult r = start(c, ExperimentKind::kSegmentFluct);
  const auto t0 = std::chrono::steady_clock::now();
  const ExperimentParams& p = c.params;
  for (int n : c.n_list) {
    const FluctSetup setup = fluct_setup(n, p);
    const std::size_t nt = setup.targets.size();
    std::vector<double> centre(setup.sources.size() * nt, kNaN);
    if (p.centering == "analytic") {
      for (std::size_t i = 0; i < setup.sources.size(); ++i) {
        for (std::size_t j = 0; j < nt; ++j) {
          if (precedes(setup.sources[i], setup.targets[j])) {
            centre[i * nt + j] = analytic_center(setup.sources[i], setup.targets[j]);
          }
        }
      }
    } else {
      // Pre-pass on independent fields (variant 1 seeds).
      ExperimentConfig pre = c;
      pre.trials = p.empirical_trials;
      std::vector<std::vector<double>> runs;
      const auto outs = detail::run_trials(pre.trials, c.workers, [&](int t) {
        const auto seed = derive_seed(c.master_seed, c.kind, n, 1, static_cast<std::uint64_t>(t));
        std::uint64_t ties = 0;
        const WeightField f = sample_field(seed, setup.region);
        return TrialOut{all_pair_times(f, setup, ties), ties};
      });
      std::fill(centre.begin(), centre.end(), 0.0);
      for (const auto& o : outs) {
        for (std::size_t k = 0; k < centre.size(); ++k) centre[k] += o.values[k];
      }
      for (auto& v : centre) v = std::isfinite(v) ? v / pre.trials : kNaN;
    }
    const Columns col = collect(c, n, 0, 2, [&](std::uint64_t seed) {
      std::uint64_t ties = 0;
      const WeightField f = sample_field(seed, setup.region);
      const auto times = all_pair_times(f, setup, ties);
      double sup = -std::numeric_limits<double>::infinity();
      double inf = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < times.size(); ++k) {
        if (!std::isfinite(centre[k])) continue;
        const double d = (times[k] - centre[k]) / setup.scale;
        sup = std::max(sup, d);
        inf = std::min(inf, d);
      }
      return TrialOut{{sup, inf}, ties};
    });
    ScaleResult s;
    s.n = n;
    s.trials = c.trials;
    s.variant = p.region;
    s.estimates.push_back(mean_of("mean_sup", col[0]));
    s.estimates.push_back(mean_of("mean_inf", col[1]));
    s.estimates.push_back({"scale", setup.scale, kNaN});
    s.estimates.push_back({"pairs", static_cast<double>(centre.size()), kNaN});
    s.curves.push_back(exceedance("sup_exceedance", "t", col[0], p.t_grid));
    s.curves.push_back(exceedance("inf_exceedance", "t", col[1], p.t_grid, true));
    add_sample(s, c, "sup", col[0]);
    add_sample(s, c, "inf", col[1]);
    r.ties += col.ties;
    r.scales.push_back(std::move(s));
  }
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

ExperimentResult run_tf(const ExperimentConfig& c) {
  ExperimentResult r = start(c, ExperimentKind::kTf);
  const auto t0 = std::chrono::steady_clock::now();
  const ExperimentParams& p = c.params;
  CornerOptions keep;
  keep.keep_path = true;
  for (int n : c.n_list) {
    if (p.mode == "global") {
      const LatticePoint end{n, static_cast<int>(std::lround(p.m * n))};
      const Columns col = collect(c, n, 0, 1, [&](std::uint64_t seed) {
        const CornerPassage cp = corner_passage(seed, {0, 0}, end, keep);
        return TrialOut{{global_tf(cp.path)}, cp.ties};
      });
      std::vector<double> scaled(col[0]);
      for (auto& v : scaled) v /= n23(n);
      ScaleResult s;
      s.n = n;
      s.trials = c.trials;
      s.estimates.push_back(median_of("median_tf", col[0]));
      s.estimates.push_back(mean_of("mean_tf", col[0]));
      s.estimates.push_back(median_of("median_tf_scaled", scaled));
      s.curves.push_back(exceedance("tf_exceedance", "s", scaled, p.s_grid));
      add_sample(s, c, "tf", col[0]);
      r.ties += col.ties;
      r.scales.push_back(std::move(s));
      continue;
    }
    for (std::size_t e = 0; e < p.eps_list.size(); ++e) {
      const double eps = p.eps_list[e];
      const LatticePoint end{static_cast<int>(std::lround(eps * n)), n};
      const Columns col = collect(c, n, static_cast<int>(e), 2, [&](std::uint64_t seed) {
        const CornerPassage cp = corner_passage(seed, {0, 0}, end, keep);
        return TrialOut{{local_tf(cp.path, static_cast<int>(p.L), eps),
                         static_cast<double>(rightmost_at_height(cp.path, static_cast<int>(p.L)))},
                        cp.ties};
      });
      ScaleResult s;
      s.n = n;
      s.trials = c.trials;
      s.variant = eps_label(eps);
      if (p.mode == "local_steep") {
        const double unit = std::pow(eps, 2.0 / 3.0) * std::pow(p.L, 2.0 / 3.0);
        std::vector<double> scaled(col[0]);
        for (auto& v : scaled) v = unit > 0 ? v / unit : 0.0;
        double zeros = 0;
        for (double v : col[0]) zeros += (v == 0.0);
        s.estimates.push_back(median_of("median_tf_scaled", scaled));
        s.estimates.push_back(mean_of("mean_tf_scaled", scaled));
        s.estimates.push_back(proportion("fraction_zero", zeros, c.trials));
        s.estimates.push_back({"unit", unit, kNaN});
        s.curves.push_back(exceedance("tf_exceedance", "x", scaled, p.x_grid));
        add_sample(s, c, "tf_scaled", scaled);
      } else {
        s.estimates.push_back(median_of("median_X_L", col[1]));
        s.estimates.push_back(mean_of("mean_X_L", col[1]));
        s.curves.push_back(exceedance("X_L_exceedance", "M", col[1], p.M_grid));
        add_sample(s, c, "X_L", col[1]);
      }
      r.ties += col.ties;
      r.scales.push_back(std::move(s));
    }
  }
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

ExperimentResult run_thin_cylinder(const ExperimentConfig& c) {
  ExperimentResult r = start(c, ExperimentKind::kThinCylinder);
  const auto t0 = std::chrono::steady_clock::now();
  const ExperimentParams& p = c.params;
  for (int n : c.n_list) {
    const ThinSetup setup = thin_setup(n, p);
    check_memory(setup.region.area() * std::int64_t{sizeof(double)}, "thin-cylinder field");
    const Columns col = collect(c, n, 0, 4, [&](std::uint64_t seed) {
      return thin_trial(seed, setup, p);
    });
    ScaleResult s;
    s.n = n;
    s.trials = c.trials;
    const auto central = finite(col[0]);
    const auto random = finite(col[1]);
    s.excluded = static_cast<std::int64_t>(col[1].size() - random.size() +
                                           col[0].size() - central.size());
    const double unit = std::pow(p.h, 2.0 / 3.0) * std::cbrt(static_cast<double>(n));
    s.estimates.push_back({"center", setup.center, kNaN});
    s.estimates.push_back({"cells_per_unit", static_cast<double>(setup.grid.per_unit), kNaN});
    s.estimates.push_back({"cell_width", static_cast<double>(setup.grid.width), kNaN});
    if (!central.empty()) s.estimates.push_back(mean_of("mean_central", central));
    if (!random.empty()) s.estimates.push_back(mean_of("mean_random", random));
    s.estimates.push_back({"random_infeasible",
                           static_cast<double>(col[1].size() - random.size()), kNaN});
    auto curve_for = [&](std::string name, const std::vector<double>& vals) {
      Curve cv;
      cv.name = std::move(name);
      cv.abscissa = "c1";
      for (double c1 : p.c1_grid) {
        double hits = 0;
        for (double v : vals) hits += (v >= -c1 * unit);
        const double tot = static_cast<double>(vals.size());
        const double pr = tot > 0 ? hits / tot : 0.0;
        cv.x.push_back(c1);
        cv.p.push_back(pr);
        cv.se.push_back(tot > 0 ? std::sqrt(pr * (1 - pr) / tot) : 0.0);
      }
      return cv;
    };
    s.curves.push_back(curve_for("central_exceedance", col[0]));
    s.curves.push_back(curve_for("random_exceedance", random));
    if (p.with_inf) {
      s.estimates.push_back(mean_of("mean_inf", col[2]));
      s.estimates.push_back(mean_of("mean_sup", col[3]));
      double ok = 0;
      for (int t = 0; t < c.trials; ++t) {
        ok += (col[0][t] <= col[3][t] && (!std::isfinite(col[1][t]) || col[1][t] <= col[3][t]));
      }
      s.estimates.push_back(proportion("constrained_le_sup", ok, c.trials));
      add_sample(s, c, "inf", col[2]);
      add_sample(s, c, "sup", col[3]);
    }
    add_sample(s, c, "central", col[0]);
    add_sample(s, c, "random", col[1]);
    r.ties += col.ties;
    r.scales.push_back(std::move(s));
  }
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

ExperimentResult run_experiment(const ExperimentConfig& c) {
  switch (c.kind) {
    case ExperimentKind::kDisjoint: return run_disjoint_tail(c);
    case ExperimentKind::kCoalescence: return run_coalescence(c);
    case ExperimentKind::kMidpoint: return run_midpoint(c);
    case ExperimentKind::kOriginHit: return run_origin_hit(c);
    case ExperimentKind::kTwRescaling: return run_tw_rescaling(c);
    case ExperimentKind::kSegmentFluct: return run_segment_fluct(c);
    case ExperimentKind::kTf: return run_tf(c);
    case ExperimentKind::kThinCylinder: return run_thin_cylinder(c);
  }
  throw ContractError("unknown experiment kind");
}

}  // namespace lpp
