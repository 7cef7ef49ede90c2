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

#ifndef LPPLAB_APP_SELFTEST_HPP_
#define LPPLAB_APP_SELFTEST_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace lpp::app {

struct SelftestOptions {
  int max_size = 7;  // largest grid side; at most 7
  int cases = 200;   // random fields per suite
  std::uint64_t seed = 1;
  // Mutation fixture: swap the passage-time DP for a copy that shifts the
  // summed window by one vertex. The suite must then fail.
  bool off_by_one_dp = false;
};

struct SuiteReport {
  std::string name;
  int cases = 0;
  std::int64_t checks = 0;
  std::int64_t mismatches = 0;
  std::optional<std::uint64_t> failing_seed;  // first field seed that failed
  std::string first_failure;
};

struct SelftestReport {
  std::vector<SuiteReport> suites;
  bool ok() const;
};

// DP-versus-enumeration and greedy-versus-exhaustive suites.
SelftestReport run_selftest(const SelftestOptions& options);
void print_report(std::ostream& out, const SelftestReport& report);

}  // namespace lpp::app

#endif  // LPPLAB_APP_SELFTEST_HPP_
