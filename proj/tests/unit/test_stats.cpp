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
#include <random>
#include <vector>

#include "doctest.h"
#include "lpplab/errors.hpp"
#include "lpplab/stats.hpp"

using doctest::Approx;

TEST_CASE("shipped Tracy-Widom table") {
  const auto ref = lpp::TWReference::shipped();
  CHECK(ref.z().front() <= -5.0);
  CHECK(ref.z().back() >= 3.0);
  for (std::size_t i = 1; i < ref.z().size(); ++i) {
    CHECK(ref.z()[i] - ref.z()[i - 1] <= 0.02 + 1e-12);
    CHECK(ref.f()[i] > ref.f()[i - 1]);
  }
  CHECK(ref.cdf(-5.0) < 0.001);
  CHECK(ref.cdf(3.0) > 0.999);
  CHECK(ref.mean() == Approx(-1.7711).epsilon(1e-4));
  CHECK(ref.variance() == Approx(0.8132).epsilon(1e-3));
  // Mean from the table itself: -5 + integral of (1 - F) minus integral of F
  // below -5, which is negligible.
  double m = ref.z().front();
  for (std::size_t i = 1; i < ref.z().size(); ++i) {
    const double dz = ref.z()[i] - ref.z()[i - 1];
    m += dz * (1.0 - 0.5 * (ref.f()[i] + ref.f()[i - 1]));
  }
  CHECK(m == Approx(ref.mean()).epsilon(1e-3));
  CHECK(ref.quantile(ref.cdf(-1.3)) == Approx(-1.3).epsilon(1e-9));
}

TEST_CASE("exact power laws and exponentials") {
  const std::vector<double> xs{1, 10, 100, 1000, 1e4, 1e5};
  std::vector<double> ys, flat(xs.size(), 3.5), scaled;
  for (double x : xs) ys.push_back(std::pow(x, -2.0 / 3.0));
  const auto f = lpp::fit_loglog(xs, ys, 200);
  CHECK(std::abs(f.slope + 2.0 / 3.0) < 1e-12);
  CHECK(f.ci_low <= f.slope);
  CHECK(f.ci_high >= f.slope);
  CHECK(std::abs(lpp::fit_loglog(xs, flat, 50).slope) < 1e-12);
  for (double y : ys) scaled.push_back(7.0 * y);
  const auto g = lpp::fit_loglog(xs, scaled, 50);
  CHECK(std::abs(g.slope - f.slope) < 1e-12);
  CHECK(g.intercept == Approx(f.intercept + std::log(7.0)));

  const std::vector<double> ts{0.5, 1, 1.5, 2, 3};
  std::vector<double> ps, qs;
  for (double t : ts) ps.push_back(std::exp(-2 * t));
  for (double t : ts) qs.push_back(std::exp(-3 * t * t));
  CHECK(std::abs(lpp::fit_semilog(ts, ps, 50).slope + 2.0) < 1e-12);
  CHECK(std::abs(lpp::fit_semilog(ts, qs, 50, lpp::Abscissa::kSquare).slope + 3.0) <
        1e-12);
}

TEST_CASE("zero probabilities are dropped and counted") {
  const std::vector<double> ts{1, 2, 3, 4, 5, 6};
  const std::vector<double> ps{0.5, 0.25, 0.0, 0.0625, 0.0, 0.015625};
  const auto f = lpp::fit_semilog(ts, ps, 50);
  CHECK(f.dropped == 2);
  CHECK(f.points == 4);
  CHECK(f.slope == Approx(-std::log(2.0)));
  const std::vector<double> zeros(6, 0.0);
  CHECK_THROWS_AS(lpp::fit_semilog(ts, zeros, 10), lpp::DegenerateFitError);
  const std::vector<double> bad{1, -1, 2};
  CHECK_THROWS_AS(lpp::fit_loglog(bad, bad, 10), lpp::ContractError);
  const std::vector<double> two{1, 2};
  CHECK_THROWS_AS(lpp::fit_loglog(two, two, 10), lpp::DegenerateFitError);
}

TEST_CASE("bootstrap interval calibration on noisy power laws") {
  std::mt19937_64 gen(2024);
  std::normal_distribution<double> noise(0.0, 0.05);
  const std::vector<double> xs{1, 10, 100, 1e3, 1e4, 1e5};
  int covered = 0;
  const int runs = 1000;
  for (int r = 0; r < runs; ++r) {
    std::vector<double> ys;
    for (double x : xs) ys.push_back(std::pow(x, 2.0 / 3.0) * (1.0 + noise(gen)));
    const auto f = lpp::fit_loglog(xs, ys, 400, r + 1);
    covered += (f.ci_low <= 2.0 / 3.0 && 2.0 / 3.0 <= f.ci_high);
  }
  MESSAGE("coverage ", covered, " / ", runs);
  CHECK(covered >= 900);
}

TEST_CASE("bootstrap intervals narrow as points double") {
  std::mt19937_64 gen(99);
  std::normal_distribution<double> noise(0.0, 0.05);
  double widths[2] = {0.0, 0.0};
  for (int r = 0; r < 200; ++r) {
    for (int k = 0; k < 2; ++k) {
      const int n = 6 << k;
      std::vector<double> xs, ys;
      for (int i = 0; i < n; ++i) {
        const double x = std::pow(10.0, 5.0 * i / (n - 1));
        xs.push_back(x);
        ys.push_back(std::pow(x, 2.0 / 3.0) * (1.0 + noise(gen)));
      }
      const auto f = lpp::fit_loglog(xs, ys, 200, r + 7);
      widths[k] += f.ci_high - f.ci_low;
    }
  }
  CHECK(widths[1] < widths[0]);
}

TEST_CASE("Kolmogorov-Smirnov distance") {
  const auto ref = lpp::TWReference::shipped();
  const double med = ref.quantile(0.5);
  const std::vector<double> one{med};
  CHECK(lpp::ks_distance(one, ref) == Approx(0.5).epsilon(1e-9));
  CHECK_THROWS_AS(lpp::ks_distance(std::vector<double>{}, ref), lpp::ContractError);

  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int ok = 0;
  const int runs = 100;
  for (int r = 0; r < runs; ++r) {
    std::vector<double> s;
    for (int i = 0; i < 10000; ++i) s.push_back(ref.quantile(u(gen)));
    const double d = lpp::ks_distance(s, ref);
    CHECK(d >= 0.0);
    CHECK(d <= 1.0);
    ok += d < 0.027;
    if (r == 0) {
      std::vector<double> rev(s.rbegin(), s.rend());
      CHECK(lpp::ks_distance(rev, ref) == d);
    }
  }
  CHECK(ok >= 95);
}
