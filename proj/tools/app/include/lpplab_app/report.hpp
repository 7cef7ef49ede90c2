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

#ifndef LPPLAB_APP_REPORT_HPP_
#define LPPLAB_APP_REPORT_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "lpplab/experiments.hpp"
#include "lpplab_app/run_file.hpp"

namespace lpp::app {

// Identifies the run in every artifact.
struct Manifest {
  std::string config_hash;
  std::uint64_t master_seed = 0;
  std::string version;
};

// Long-format table: one row per estimate, curve point and sample value.
// Columns: config_hash, master_seed, experiment, kind, n, variant, record,
// name, x, x_unit, value, value_unit, se.
std::string results_csv(const ExperimentResult& result, const Manifest& manifest);

// Estimates, exponent and tail-rate fits, and (for the Tracy-Widom kind) the
// KS comparison. Contains no wall-clock data.
nlohmann::ordered_json experiment_summary(const ExperimentResult& result);

// Log-log plot of the scaling fits and semi-log plots of the tail curves.
std::string scaling_svg(const ExperimentResult& result, const Manifest& manifest);
std::string tails_svg(const ExperimentResult& result, const Manifest& manifest);

// Writes <name>.csv, <name>_scaling.svg, <name>_tails.svg, summary.json and
// timing.json into `out`. Returns the files written.
std::vector<std::filesystem::path> write_outputs(
    const RunFile& run, const std::vector<ExperimentResult>& results,
    const std::filesystem::path& out);

// RFC 4180 quoting of one field.
std::string csv_field(const std::string& text);
// Shortest round-trip decimal text; "nan", "inf", "-inf" otherwise.
std::string number_text(double x);

}  // namespace lpp::app

#endif  // LPPLAB_APP_REPORT_HPP_
