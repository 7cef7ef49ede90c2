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

#ifndef LPPLAB_STATS_HPP_
#define LPPLAB_STATS_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace lpp {

// Tabulated GUE Tracy-Widom distribution function. The file has two
// whitespace-separated columns (z, F) and '#' comments; comments of the
// form "# mean <value>" and "# variance <value>" set the moments.
class TWReference {
 public:
  static TWReference load(const std::filesystem::path& file);
  // LPPLAB_TW_TABLE if set, else the table next to the build tree, else the
  // installed copy.
  static TWReference shipped();

  // Linear interpolation, clamped to the end values outside the grid.
  double cdf(double z) const;
  // Inverse of cdf on (F(z_min), F(z_max)), by interpolation.
  double quantile(double p) const;
  double mean() const { return mean_; }
  double variance() const { return variance_; }
  const std::vector<double>& z() const { return z_; }
  const std::vector<double>& f() const { return f_; }

 private:
  std::vector<double> z_;
  std::vector<double> f_;
  double mean_ = 0.0;
  double variance_ = 0.0;
};

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  // 95% bootstrap-t interval for the slope; always contains `slope`.
  double ci_low = 0.0;
  double ci_high = 0.0;
  double rms_residual = 0.0;
  int points = 0;
  int dropped = 0;  // inputs removed before fitting (zero probabilities)
};

// Least squares of log y on log x. The interval resamples the residuals of
// the fitted points.
FitResult fit_loglog(std::span<const double> xs, std::span<const double> ys,
                     int resamples = 1000, std::uint64_t seed = 1);

// Abscissa used by fit_semilog: t, t^{1/4} or t^2.
enum class Abscissa { kLinear, kFourthRoot, kSquare };

// Least squares of log p on the transformed t. Points with p = 0 are dropped
// and counted; slope is the (negative) tail rate.
FitResult fit_semilog(std::span<const double> ts, std::span<const double> ps,
                      int resamples = 1000, Abscissa abscissa = Abscissa::kLinear,
                      std::uint64_t seed = 1);

// sup_z |F_n(z) - F(z)| for the empirical distribution F_n of the sample.
double ks_distance(std::span<const double> sample, const TWReference& ref);

double mean(std::span<const double> xs);
double standard_error(std::span<const double> xs);
// Linear-interpolated quantile (type 7).
double quantile(std::vector<double> xs, double q);
double median(std::vector<double> xs);

}  // namespace lpp

#endif  // LPPLAB_STATS_HPP_
