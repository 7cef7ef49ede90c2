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
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "lpplab/errors.hpp"
#include "lpplab/experiments.hpp"
#include "lpplab/lattice.hpp"
#include "lpplab/weight_field.hpp"

#ifndef LPPLAB_VERSION
#define LPPLAB_VERSION "0.0.0"
#endif

namespace lpp {
namespace {

using P = ExperimentParams;

constexpr std::pair<ExperimentKind, std::string_view> kKindNames[] = {
    {ExperimentKind::kDisjoint, "disjoint"},
    {ExperimentKind::kCoalescence, "coalescence"},
    {ExperimentKind::kMidpoint, "midpoint"},
    {ExperimentKind::kOriginHit, "origin_hit"},
    {ExperimentKind::kTwRescaling, "tw_rescaling"},
    {ExperimentKind::kSegmentFluct, "segment_fluct"},
    {ExperimentKind::kTf, "tf"},
    {ExperimentKind::kThinCylinder, "thin_cylinder"},
};

const ParamSpec kKeepSamples{"keep_samples", &P::keep_samples, {},
                             "store per-trial samples in the result"};
const ParamSpec kWidthFactor{"width_factor", &P::width_factor, {},
                             "segment half-span in units of n^{2/3}"};
const ParamSpec kEllMax{"ell_max", &P::ell_max, {}, "largest ell of the tail P(N >= ell)"};
const ParamSpec kTGrid{"t_grid", &P::t_grid, {}, "thresholds of the exceedance curve"};

std::vector<ParamSpec> make_specs(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kDisjoint:
      return {kKeepSamples, kWidthFactor, kEllMax};
    case ExperimentKind::kCoalescence:
      return {kKeepSamples,
              {"geometry", &P::geometry, {"diagonal", "side"}, "endpoint layout"},
              kWidthFactor,
              {"band_lo", &P::band_lo, {}, "band lower end, x + y >= band_lo * n"},
              {"band_hi", &P::band_hi, {}, "band upper end, x + y <= band_hi * n"},
              kEllMax,
              {"h", &P::h, {}, "slope parameter of h-compatible pairs (side)"},
              {"compat_lo", &P::compat_lo, {}, "h-compatible slope window, lower factor"},
              {"compat_hi", &P::compat_hi, {}, "h-compatible slope window, upper factor"},
              {"center_factor", &P::center_factor, {},
               "central box half-width in units of h * n (side)"}};
    case ExperimentKind::kMidpoint:
      return {kKeepSamples};
    case ExperimentKind::kOriginHit:
      return {kKeepSamples,
              {"h", &P::h, {}, "slope parameter in (0, 1)"},
              {"slope_lo", &P::slope_lo, {}, "window lower end is slope_lo * h"},
              {"slope_hi", &P::slope_hi, {}, "window upper end is slope_hi / h"},
              {"max_n", &P::max_n, {}, "largest admissible n"}};
    case ExperimentKind::kTwRescaling:
      return {kKeepSamples, {"h", &P::h, {}, "end point (n, round(h n))"}, kTGrid};
    case ExperimentKind::kSegmentFluct:
      return {kKeepSamples,
              {"region", &P::region, {"vertical", "tilted", "steep"}, "parallelogram type"},
              {"m", &P::m, {}, "slope of the parallelogram"},
              {"eps", &P::eps, {}, "steepness (steep region)"},
              kWidthFactor,
              {"centering", &P::centering, {"analytic", "empirical"},
               "centering of T_{u,v}"},
              {"empirical_trials", &P::empirical_trials, {},
               "pre-pass trials of the empirical centering"},
              kTGrid};
    case ExperimentKind::kTf:
      return {kKeepSamples,
              {"mode", &P::mode, {"global", "local_steep", "rightmost"}, "observable"},
              {"m", &P::m, {}, "global: end point (n, round(m n))"},
              {"s_grid", &P::s_grid, {}, "global: thresholds in units of n^{2/3}"},
              {"eps_list", &P::eps_list, {}, "steep: end points (round(eps n), n)"},
              {"L", &P::L, {}, "steep: height L"},
              {"x_grid", &P::x_grid, {}, "local_steep: thresholds in eps^{2/3} L^{2/3}"},
              {"M_grid", &P::M_grid, {}, "rightmost: thresholds of X_L"}};
    case ExperimentKind::kThinCylinder:
      return {kKeepSamples,
              {"h", &P::h, {}, "number of stages (integer; 0 disables thinning)"},
              {"c0", &P::c0, {}, "cells per n^{2/3} are round(h^{2/3} / c0)"},
              {"ell", &P::ell, {}, "cells span floor(ell^{1/8}) n^{2/3} per side"},
              {"m", &P::m, {}, "B_n centred at (n, round(m n))"},
              kWidthFactor,
              {"c1_grid", &P::c1_grid, {}, "thresholds 4n - c1 h^{2/3} n^{1/3}"},
              {"with_inf", &P::with_inf, {}, "also sample inf and sup of T over A x B"}};
  }
  return {};
}

std::string format_double(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

template <class T>
T parse_number(std::string_view key, std::string_view text) {
  const std::string t = trim(text);
  T v{};
  const auto r = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || r.ec != std::errc() || r.ptr != t.data() + t.size()) {
    throw ConfigError("invalid value '" + std::string(text) + "' for key '" +
                      std::string(key) + "'");
  }
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(v)) {
      throw ConfigError("non-finite value for key '" + std::string(key) + "'");
    }
  }
  return v;
}

template <class T>
std::vector<T> parse_list(std::string_view key, std::string_view text) {
  std::string s(text);
  std::replace(s.begin(), s.end(), ',', ' ');
  std::istringstream in(s);
  std::vector<T> out;
  std::string item;
  while (in >> item) out.push_back(parse_number<T>(key, item));
  if (out.empty()) throw ConfigError("empty list for key '" + std::string(key) + "'");
  return out;
}

bool parse_bool(std::string_view key, std::string_view text) {
  const std::string t = trim(text);
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  throw ConfigError("invalid boolean '" + t + "' for key '" + std::string(key) + "'");
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

[[noreturn]] void config_error(const std::string& key, const std::string& what) {
  throw ConfigError(key + ": " + what);
}

}  // namespace

std::string_view kind_name(ExperimentKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<ExperimentKind> parse_kind(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

const std::vector<ExperimentKind>& all_kinds() {
  static const std::vector<ExperimentKind> kinds = [] {
    std::vector<ExperimentKind> v;
    for (const auto& [k, name] : kKindNames) v.push_back(k);
    return v;
  }();
  return kinds;
}

const std::vector<ParamSpec>& param_specs(ExperimentKind kind) {
  static const std::vector<std::vector<ParamSpec>> table = [] {
    std::vector<std::vector<ParamSpec>> t;
    for (const auto& [k, name] : kKindNames) t.push_back(make_specs(k));
    return t;
  }();
  return table[static_cast<std::size_t>(kind)];
}

ExperimentParams default_params(ExperimentKind kind) {
  ExperimentParams p;
  switch (kind) {
    case ExperimentKind::kTwRescaling:
      p.h = 1.0;
      break;
    case ExperimentKind::kThinCylinder:
      p.h = 4.0;
      break;
    case ExperimentKind::kSegmentFluct:
      p.t_grid = {0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 6.0};
      break;
    default:
      break;
  }
  return p;
}

void set_param(ExperimentKind kind, ExperimentParams& params, std::string_view key,
               std::string_view text) {
  for (const auto& spec : param_specs(kind)) {
    if (spec.key != key) continue;
    std::visit(
        [&](auto member) {
          auto& field = params.*member;
          using T = std::decay_t<decltype(field)>;
          if constexpr (std::is_same_v<T, bool>) {
            field = parse_bool(key, text);
          } else if constexpr (std::is_same_v<T, int> || std::is_same_v<T, double>) {
            field = parse_number<T>(key, text);
          } else if constexpr (std::is_same_v<T, std::string>) {
            const std::string v = trim(text);
            if (!spec.choices.empty() &&
                std::find(spec.choices.begin(), spec.choices.end(), v) ==
                    spec.choices.end()) {
              throw ConfigError("invalid value '" + v + "' for key '" +
                                std::string(key) + "'");
            }
            field = v;
          } else {
            field = parse_list<typename T::value_type>(key, text);
          }
        },
        spec.member);
    return;
  }
  throw ConfigError("unknown key '" + std::string(key) + "' for experiment kind '" +
                    std::string(kind_name(kind)) + "'");
}

std::vector<std::pair<std::string, std::string>> param_values(
    ExperimentKind kind, const ExperimentParams& params) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& spec : param_specs(kind)) {
    std::string text;
    std::visit(
        [&](auto member) {
          const auto& field = params.*member;
          using T = std::decay_t<decltype(field)>;
          if constexpr (std::is_same_v<T, bool>) {
            text = field ? "true" : "false";
          } else if constexpr (std::is_same_v<T, int>) {
            text = std::to_string(field);
          } else if constexpr (std::is_same_v<T, double>) {
            text = format_double(field);
          } else if constexpr (std::is_same_v<T, std::string>) {
            text = field;
          } else {
            for (std::size_t i = 0; i < field.size(); ++i) {
              if (i) text += ",";
              if constexpr (std::is_same_v<typename T::value_type, int>) {
                text += std::to_string(field[i]);
              } else {
                text += format_double(field[i]);
              }
            }
          }
        },
        spec.member);
    out.emplace_back(std::string(spec.key), std::move(text));
  }
  return out;
}

ExperimentConfig make_config(ExperimentKind kind, std::vector<int> n_list,
                             int trials, std::uint64_t master_seed) {
  ExperimentConfig c;
  c.name = std::string(kind_name(kind));
  c.kind = kind;
  c.n_list = std::move(n_list);
  c.trials = trials;
  c.master_seed = master_seed;
  c.params = default_params(kind);
  return c;
}

void validate(const ExperimentConfig& c) {
  const ExperimentParams& p = c.params;
  if (c.trials < 1) config_error("trials", "must be at least 1");
  if (c.workers < 1) config_error("workers", "must be at least 1");
  if (c.n_list.empty()) config_error("n_list", "no scales given");
  for (int n : c.n_list) {
    if (n < 1) config_error("n_list", "every n must be at least 1");
  }
  if (p.width_factor <= 0.0) config_error("width_factor", "must be positive");
  if (p.ell_max < 1) config_error("ell_max", "must be at least 1");

  auto grid_ok = [](const auto& g, const char* key) {
    if (g.empty()) config_error(key, "empty grid");
    for (std::size_t i = 1; i < g.size(); ++i) {
      if (!(g[i] > g[i - 1])) config_error(key, "grid must be increasing");
    }
  };
  std::int64_t bytes = 0;  // largest single allocation the runner makes
  const int n_max = *std::max_element(c.n_list.begin(), c.n_list.end());
  const std::int64_t side = 2 * std::int64_t{n_max} + 1;

  switch (c.kind) {
    case ExperimentKind::kDisjoint:
    case ExperimentKind::kCoalescence: {
      if (c.kind == ExperimentKind::kCoalescence && p.geometry == "side") {
        if (!(p.h > 0.0 && p.h < 1.0)) config_error("h", "must lie in (0, 1)");
        if (!(p.compat_lo > 0.0 && p.compat_hi > 0.0)) {
          config_error("compat_lo", "window factors must be positive");
        }
        if (p.center_factor < 0.0) config_error("center_factor", "must be >= 0");
        bytes = side * side * 8;
        break;
      }
      if (c.kind == ExperimentKind::kCoalescence) {
        for (int n : c.n_list) {
          const long lo = std::lround(p.band_lo * n);
          const long hi = std::lround(p.band_hi * n);
          if (!(lo > 0 && lo <= hi && hi < 2L * n)) {
            config_error("band_lo", "band must lie strictly between the segments at n=" +
                                        std::to_string(n));
          }
        }
      }
      const std::int64_t hs = two_thirds_floor(n_max, p.width_factor);
      const std::int64_t box = n_max + 2 * hs + 1;
      const std::int64_t lanes = 2 * hs + 1;
      bytes = box * box * 2 * ((lanes + 15) / 16) + box * box * 8;
      break;
    }
    case ExperimentKind::kMidpoint:
      for (int n : c.n_list) {
        if (n % 2 != 0) config_error("n_list", "midpoint needs even n, got " + std::to_string(n));
      }
      bytes = (n_max + 1) * std::int64_t{n_max + 1} / 8;
      break;
    case ExperimentKind::kOriginHit:
      if (!(p.h > 0.0 && p.h < 1.0)) config_error("h", "must lie in (0, 1)");
      if (!(p.slope_lo > 0.0 && p.slope_hi > 0.0)) {
        config_error("slope_lo", "window factors must be positive");
      }
      if (n_max > p.max_n) {
        throw CapacityError("max_n: n=" + std::to_string(n_max) +
                            " exceeds the origin-hit cap max_n=" + std::to_string(p.max_n));
      }
      bytes = side * side * 8;
      break;
    case ExperimentKind::kTwRescaling:
      if (!(p.h > 0.0)) config_error("h", "must be positive");
      grid_ok(p.t_grid, "t_grid");
      bytes = (n_max + 1) * static_cast<std::int64_t>(p.h * n_max + 2) / 8;
      break;
    case ExperimentKind::kSegmentFluct: {
      if (!(p.m > 0.0)) config_error("m", "must be positive");
      if (p.region == "steep") {
        if (!(p.eps > 0.0)) config_error("eps", "must be positive");
        if (!(p.m > p.eps / 100.0 && p.m < 100.0 * p.eps)) {
          config_error("m", "steep region needs m in (eps/100, 100 eps)");
        }
      }
      if (p.centering == "empirical" && p.empirical_trials < 1) {
        config_error("empirical_trials", "must be at least 1");
      }
      grid_ok(p.t_grid, "t_grid");
      const std::int64_t hs = two_thirds_floor(n_max, p.width_factor) + 1;
      bytes = (n_max + 2 * hs + 1) * static_cast<std::int64_t>(p.m * n_max + 2 * hs + 2) * 8;
      break;
    }
    case ExperimentKind::kTf:
      if (p.mode == "global") {
        if (!(p.m > 0.0)) config_error("m", "must be positive");
        grid_ok(p.s_grid, "s_grid");
        bytes = (n_max + 1) * static_cast<std::int64_t>(p.m * n_max + 2) / 8;
      } else {
        for (double e : p.eps_list) {
          for (int n : c.n_list) {
            if (!(e > 0.0) || std::lround(e * n) < 1) {
              config_error("eps_list", "eps * n must be at least 1 (eps=" +
                                           format_double(e) + ", n=" + std::to_string(n) + ")");
            }
          }
        }
        for (int n : c.n_list) {
          if (p.L < 0 || p.L > n) config_error("L", "height must lie in [0, n]");
        }
        if (p.mode == "local_steep") grid_ok(p.x_grid, "x_grid");
        if (p.mode == "rightmost") grid_ok(p.M_grid, "M_grid");
        bytes = (n_max + 1) * std::int64_t{n_max + 1} / 8;
      }
      break;
    case ExperimentKind::kThinCylinder: {
      if (!(p.h >= 0.0 && p.h == std::floor(p.h))) config_error("h", "must be a nonnegative integer");
      if (p.ell < 1) config_error("ell", "must be at least 1");
      if (p.h > std::sqrt(static_cast<double>(p.ell))) config_error("h", "must not exceed sqrt(ell)");
      if (!(p.c0 > 0.0)) config_error("c0", "must be positive");
      if (!(p.m > 0.0)) config_error("m", "must be positive");
      grid_ok(p.c1_grid, "c1_grid");
      const int wfac = std::max(1, static_cast<int>(std::floor(std::pow(p.ell, 0.125))));
      const std::int64_t reach = 2 * std::int64_t{wfac} * two_thirds_floor(n_max) + 2;
      bytes = (n_max + 2 * reach) * static_cast<std::int64_t>(p.m * n_max + 2 * reach) * 8;
      break;
    }
  }
  if (bytes > memory_budget_bytes()) {
    throw CapacityError("n: n=" + std::to_string(n_max) + " needs about " +
                        std::to_string(bytes >> 20) + " MB in one allocation, over the " +
                        std::to_string(memory_budget_bytes() >> 20) +
                        " MB memory budget (LPPLAB_MEMORY_BUDGET_MB)");
  }
}

std::uint64_t derive_seed(std::uint64_t master, ExperimentKind kind, int n,
                          int variant, std::uint64_t trial) {
  std::uint64_t s = splitmix64(master);
  s = splitmix64(s ^ static_cast<std::uint64_t>(kind));
  s = splitmix64(s ^ static_cast<std::uint64_t>(static_cast<std::uint32_t>(n)));
  s = splitmix64(s ^ static_cast<std::uint64_t>(static_cast<std::uint32_t>(variant)));
  return splitmix64(s ^ trial);
}

const Estimate& ScaleResult::estimate(std::string_view name) const {
  for (const auto& e : estimates) {
    if (e.name == name) return e;
  }
  throw ContractError("no estimate named " + std::string(name));
}

const Curve& ScaleResult::curve(std::string_view name) const {
  for (const auto& c : curves) {
    if (c.name == name) return c;
  }
  throw ContractError("no curve named " + std::string(name));
}

const Sample& ScaleResult::sample(std::string_view name) const {
  for (const auto& s : samples) {
    if (s.name == name) return s;
  }
  throw ContractError("no sample named " + std::string(name));
}

const char* library_version() { return LPPLAB_VERSION; }

}  // namespace lpp
