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

#ifndef LPPLAB_EXPERIMENTS_HPP_
#define LPPLAB_EXPERIMENTS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace lpp {

enum class ExperimentKind {
  kDisjoint,
  kCoalescence,
  kMidpoint,
  kOriginHit,
  kTwRescaling,
  kSegmentFluct,
  kTf,
  kThinCylinder,
};

std::string_view kind_name(ExperimentKind kind);
std::optional<ExperimentKind> parse_kind(std::string_view name);
const std::vector<ExperimentKind>& all_kinds();

// Every tunable of every experiment. Which keys a kind accepts, and their
// defaults for that kind, come from param_specs and default_params.
struct ExperimentParams {
  bool keep_samples = true;
  // Segments A_n, B_n: half-span floor(width_factor * n^{2/3}).
  double width_factor = 1.0;
  int ell_max = 6;
  // Coalescence: "diagonal" (A_n to B_n) or "side" (side intervals of the
  // square [-n, n]^2 with a central counting box).
  std::string geometry = "diagonal";
  double band_lo = 2.0 / 3.0;  // band x + y in [band_lo n, band_hi n]
  double band_hi = 4.0 / 3.0;
  double compat_lo = 0.1;  // h-compatible: slope in (compat_lo h, compat_hi / h)
  double compat_hi = 10.0;
  double center_factor = 0.01;  // central box half-width center_factor * h * n
  // Slope parameter h (origin hit, Tracy-Widom, side coalescence) or the
  // stage count of the thin-cylinder grid.
  double h = 0.5;
  double slope_lo = 0.5;  // E_{n,h} window (slope_lo h, slope_hi / h)
  double slope_hi = 2.0;
  int max_n = 256;
  std::vector<double> t_grid{2.0, 2.5, 3.0, 3.5, 4.0};
  // Segment fluctuations: "vertical", "tilted" or "steep" parallelogram.
  std::string region = "vertical";
  double m = 1.0;  // slope of the parallelogram / geodesic direction
  double eps = 0.05;
  std::string centering = "analytic";  // or "empirical"
  int empirical_trials = 20;
  // Transversal fluctuations: "global", "local_steep" or "rightmost".
  std::string mode = "global";
  std::vector<double> s_grid{0.25, 0.5, 0.75, 1.0, 1.25, 1.5};
  std::vector<double> eps_list{0.01, 0.04};
  int L = 1000;
  std::vector<double> x_grid{0.5, 1.0, 2.0, 4.0, 8.0};
  std::vector<int> M_grid{1, 2, 4, 8, 16, 32};
  // Thin cylinder.
  double c0 = 1.0;  // m = round(h^{2/3} / c0) cells per n^{2/3}
  int ell = 16;     // cells span [-floor(ell^{1/8}) m, floor(ell^{1/8}) m)
  std::vector<double> c1_grid{0.0, 0.5, 1.0, 2.0, 4.0};
  bool with_inf = true;
};

using ParamMember =
    std::variant<bool ExperimentParams::*, int ExperimentParams::*,
                 double ExperimentParams::*, std::string ExperimentParams::*,
                 std::vector<double> ExperimentParams::*,
                 std::vector<int> ExperimentParams::*>;

struct ParamSpec {
  std::string_view key;
  ParamMember member;
  std::vector<std::string_view> choices;  // allowed strings, if restricted
  std::string_view doc;
};

const std::vector<ParamSpec>& param_specs(ExperimentKind kind);
ExperimentParams default_params(ExperimentKind kind);
// Parses `text` into the parameter `key`. ConfigError naming the key when
// the kind has no such parameter or the value does not parse.
void set_param(ExperimentKind kind, ExperimentParams& params,
               std::string_view key, std::string_view text);
// (key, canonical text) for every parameter of the kind, in schema order.
std::vector<std::pair<std::string, std::string>> param_values(
    ExperimentKind kind, const ExperimentParams& params);

struct ExperimentConfig {
  std::string name;  // label used in outputs
  ExperimentKind kind = ExperimentKind::kMidpoint;
  std::vector<int> n_list;
  int trials = 1;
  std::uint64_t master_seed = 1;
  int workers = 1;
  ExperimentParams params;
};

ExperimentConfig make_config(ExperimentKind kind, std::vector<int> n_list,
                             int trials, std::uint64_t master_seed);
// ConfigError or CapacityError naming the offending parameter.
void validate(const ExperimentConfig& config);

// Seed of one trial; a pure function of its arguments.
std::uint64_t derive_seed(std::uint64_t master, ExperimentKind kind, int n,
                          int variant, std::uint64_t trial);

struct Estimate {
  std::string name;
  double value = 0.0;
  double se = 0.0;  // NaN when not meaningful
};

// Exceedance-type curve p(x) with binomial standard errors.
struct Curve {
  std::string name;
  std::string abscissa;
  std::vector<double> x;
  std::vector<double> p;
  std::vector<double> se;
};

struct Sample {
  std::string name;
  std::vector<double> values;
};

struct ScaleResult {
  int n = 0;
  std::string variant;  // e.g. "eps=0.01"; empty when the kind has none
  int trials = 0;
  std::int64_t excluded = 0;
  std::vector<Estimate> estimates;
  std::vector<Curve> curves;
  std::vector<Sample> samples;

  const Estimate& estimate(std::string_view name) const;
  const Curve& curve(std::string_view name) const;
  const Sample& sample(std::string_view name) const;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<ScaleResult> scales;
  std::uint64_t ties = 0;
  double wall_seconds = 0.0;
  std::string version;
};

ExperimentResult run_disjoint_tail(const ExperimentConfig& config);
ExperimentResult run_coalescence(const ExperimentConfig& config);
ExperimentResult run_midpoint(const ExperimentConfig& config);
ExperimentResult run_origin_hit(const ExperimentConfig& config);
ExperimentResult run_tw_rescaling(const ExperimentConfig& config);
ExperimentResult run_segment_fluct(const ExperimentConfig& config);
ExperimentResult run_tf(const ExperimentConfig& config);
ExperimentResult run_thin_cylinder(const ExperimentConfig& config);
// Dispatches on config.kind.
ExperimentResult run_experiment(const ExperimentConfig& config);

// Single-trial observables, exposed for cross-checks against enumeration.
// Whether some pair (u, v), u on the entry sides and v on the exit sides of
// [-n, n]^2 with slope(u, v) in the window, has the origin on its geodesic.
bool origin_hit_trial(std::uint64_t seed, int n, double slope_min,
                      double slope_max);

const char* library_version();

}  // namespace lpp

#endif  // LPPLAB_EXPERIMENTS_HPP_
