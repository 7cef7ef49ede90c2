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

#include "lpplab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "lpplab/errors.hpp"

namespace lpp {

TWReference TWReference::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open Tracy-Widom table " + file.string());
  TWReference ref;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    if (!line.empty() && line[0] == '#') {
      std::string hash, key;
      double value = 0.0;
      ls >> hash >> key;
      if ((key == "mean" || key == "variance") && (ls >> value)) {
        (key == "mean" ? ref.mean_ : ref.variance_) = value;
      }
      continue;
    }
    double z = 0.0, f = 0.0;
    if (!(ls >> z)) continue;  // blank line
    if (!(ls >> f)) throw ConfigError("malformed Tracy-Widom table line: " + line);
    if (!ref.z_.empty() && !(z > ref.z_.back() && f > ref.f_.back())) {
      throw ConfigError("Tracy-Widom table is not strictly increasing at z = " +
                        std::to_string(z));
    }
    ref.z_.push_back(z);
    ref.f_.push_back(f);
  }
  if (ref.z_.size() < 2) throw ConfigError("Tracy-Widom table has fewer than 2 rows");
  return ref;
}

TWReference TWReference::shipped() {
  namespace fs = std::filesystem;
  if (const char* env = std::getenv("LPPLAB_TW_TABLE")) return load(env);
  const fs::path name = "tw_gue_cdf.txt";
  for (const fs::path& dir : {fs::path(LPPLAB_DATA_DIR),
                             fs::path(LPPLAB_INSTALLED_DATA_DIR)}) {
    if (fs::exists(dir / name)) return load(dir / name);
  }
  throw ConfigError("Tracy-Widom table not found; set LPPLAB_TW_TABLE");
}

double TWReference::cdf(double z) const {
  if (z <= z_.front()) return f_.front();
  if (z >= z_.back()) return f_.back();
  const auto it = std::upper_bound(z_.begin(), z_.end(), z);
  const std::size_t k = static_cast<std::size_t>(it - z_.begin());
  const double w = (z - z_[k - 1]) / (z_[k] - z_[k - 1]);
  return f_[k - 1] + w * (f_[k] - f_[k - 1]);
}

double TWReference::quantile(double p) const {
  if (p <= f_.front()) return z_.front();
  if (p >= f_.back()) return z_.back();
  const auto it = std::upper_bound(f_.begin(), f_.end(), p);
  const std::size_t k = static_cast<std::size_t>(it - f_.begin());
  const double w = (p - f_[k - 1]) / (f_[k] - f_[k - 1]);
  return z_[k - 1] + w * (z_[k] - z_[k - 1]);
}

namespace {

struct Line {
  double slope = 0.0;
  double intercept = 0.0;
  double se = 0.0;  // standard error of the slope
  bool ok = false;
};

Line least_squares(std::span<const double> x, std::span<const double> y) {
  const double k = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= k;
  my /= k;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) return {};
  Line l;
  l.slope = sxy / sxx;
  l.intercept = my - l.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (l.intercept + l.slope * x[i]);
    ss += e * e;
  }
  l.se = k > 2 ? std::sqrt(ss / (k - 2) / sxx) : 0.0;
  l.ok = true;
  return l;
}

// Residual bootstrap-t: the abscissae stay fixed, each resample redraws the
// leverage-corrected residuals of the points, and the interval is built from
// the studentized slopes. With 5-10 points the plain percentile interval of
// a pairs bootstrap covers noticeably less than its nominal 95%.
FitResult fit_line(const std::vector<double>& x, const std::vector<double>& y,
                   int resamples, std::uint64_t seed) {
  const int n = static_cast<int>(x.size());
  if (n < 3) throw DegenerateFitError("fit needs at least 3 usable points");
  const Line fit = least_squares(x, y);
  if (!fit.ok) throw DegenerateFitError("fit abscissae are all equal");

  FitResult r;
  r.slope = fit.slope;
  r.intercept = fit.intercept;
  r.points = n;
  r.ci_low = r.ci_high = r.slope;

  double mx = 0.0, sxx = 0.0;
  for (double v : x) mx += v;
  mx /= n;
  for (double v : x) sxx += (v - mx) * (v - mx);
  std::vector<double> fitted(x.size()), resid(x.size());
  double ss = 0.0, rbar = 0.0;
  for (int i = 0; i < n; ++i) {
    fitted[i] = fit.intercept + fit.slope * x[i];
    const double e = y[i] - fitted[i];
    ss += e * e;
    const double lev = 1.0 / n + (x[i] - mx) * (x[i] - mx) / sxx;
    resid[i] = lev < 1.0 ? e / std::sqrt(1.0 - lev) : 0.0;
    rbar += resid[i];
  }
  r.rms_residual = std::sqrt(ss / n);
  if (!(fit.se > 0.0) || resamples <= 0) return r;
  rbar /= n;
  for (auto& e : resid) e -= rbar;

  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::vector<double> ystar(x.size()), ts;
  ts.reserve(static_cast<std::size_t>(resamples));
  for (int b = 0; b < resamples; ++b) {
    for (int i = 0; i < n; ++i) ystar[i] = fitted[i] + resid[pick(gen)];
    const Line l = least_squares(x, ystar);
    if (l.ok && l.se > 0.0) ts.push_back((l.slope - fit.slope) / l.se);
  }
  if (ts.empty()) return r;
  r.ci_low = std::min(r.slope, r.slope - quantile(ts, 0.975) * fit.se);
  r.ci_high = std::max(r.slope, r.slope - quantile(ts, 0.025) * fit.se);
  return r;
}

}  // namespace

FitResult fit_loglog(std::span<const double> xs, std::span<const double> ys,
                     int resamples, std::uint64_t seed) {
  require(xs.size() == ys.size(), "fit_loglog: xs and ys differ in length");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    require(xs[i] > 0.0 && ys[i] > 0.0, "fit_loglog: inputs must be positive");
    lx.push_back(std::log(xs[i]));
    ly.push_back(std::log(ys[i]));
  }
  return fit_line(lx, ly, resamples, seed);
}

FitResult fit_semilog(std::span<const double> ts, std::span<const double> ps,
                      int resamples, Abscissa abscissa, std::uint64_t seed) {
  require(ts.size() == ps.size(), "fit_semilog: ts and ps differ in length");
  std::vector<double> x, y;
  int dropped = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    require(ps[i] >= 0.0 && ps[i] <= 1.0, "fit_semilog: p outside [0, 1]");
    if (ps[i] == 0.0) {
      ++dropped;
      continue;
    }
    double t = ts[i];
    switch (abscissa) {
      case Abscissa::kLinear: break;
      case Abscissa::kFourthRoot:
        require(t >= 0.0, "fit_semilog: t^{1/4} needs t >= 0");
        t = std::pow(t, 0.25);
        break;
      case Abscissa::kSquare: t = t * t; break;
    }
    x.push_back(t);
    y.push_back(std::log(ps[i]));
  }
  if (x.empty()) throw DegenerateFitError("fit_semilog: every probability is zero");
  FitResult r = fit_line(x, y, resamples, seed);
  r.dropped = dropped;
  return r;
}

double ks_distance(std::span<const double> sample, const TWReference& ref) {
  require(!sample.empty(), "ks_distance: empty sample");
  std::vector<double> s(sample.begin(), sample.end());
  std::sort(s.begin(), s.end());
  const double n = static_cast<double>(s.size());
  double d = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double f = ref.cdf(s[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return d;
}

double mean(std::span<const double> xs) {
  require(!xs.empty(), "mean: empty sample");
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double standard_error(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  const double n = static_cast<double>(xs.size());
  return std::sqrt(ss / (n - 1) / n);
}

double quantile(std::vector<double> xs, double q) {
  require(!xs.empty(), "quantile: empty sample");
  require(q >= 0.0 && q <= 1.0, "quantile: q outside [0, 1]");
  std::sort(xs.begin(), xs.end());
  const double h = q * static_cast<double>(xs.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, xs.size() - 1);
  return xs[lo] + (h - static_cast<double>(lo)) * (xs[hi] - xs[lo]);
}

double median(std::vector<double> xs) { return quantile(std::move(xs), 0.5); }

}  // namespace lpp
