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

#ifndef LPPLAB_APP_RUN_FILE_HPP_
#define LPPLAB_APP_RUN_FILE_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lpplab/experiments.hpp"

namespace lpp::app {

// A run file is INI text. The optional [run] section holds `seed` and
// `workers`; every other section is one experiment, named after its kind
// with an optional ".label" suffix (e.g. [tf.steep]). Experiment sections
// take `n`, `trials`, an optional `seed`, and the kind's parameters.
//
//   [run]
//   seed = 2024
//
//   [midpoint]
//   n = 16, 32, 64
//   trials = 50
struct RunFile {
  std::uint64_t master_seed = 1;
  int workers = 1;
  std::vector<ExperimentConfig> experiments;
};

RunFile parse_run_file(std::istream& in, const std::string& origin = "<config>");
RunFile load_run_file(const std::filesystem::path& path);

// --seed-override replaces every experiment seed; --workers the pool size.
void apply_overrides(RunFile& run, std::optional<std::uint64_t> seed,
                     std::optional<int> workers);

// Normalised text of everything that affects results (not `workers`).
std::string canonical_text(const RunFile& run);
// Hex SHA-256 of canonical_text.
std::string config_hash(const RunFile& run);

}  // namespace lpp::app

#endif  // LPPLAB_APP_RUN_FILE_HPP_
