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

// lpplab: run experiment configs, the oracle self-test, and Tracy-Widom
// table checks.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lpplab/errors.hpp"
#include "lpplab/experiments.hpp"
#include "lpplab/stats.hpp"
#include "lpplab_app/report.hpp"
#include "lpplab_app/run_file.hpp"
#include "lpplab_app/selftest.hpp"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitCapacity = 3;

int run_command(const std::string& config, const std::string& out,
                std::optional<std::uint64_t> seed, std::optional<int> workers) {
  auto run = lpp::app::load_run_file(config);
  lpp::app::apply_overrides(run, seed, workers);
  std::cerr << "config " << lpp::app::config_hash(run).substr(0, 12) << ", seed "
            << run.master_seed << ", " << run.experiments.size() << " experiment(s)\n";
  std::vector<lpp::ExperimentResult> results;
  for (const auto& c : run.experiments) {
    std::cerr << "  " << c.name << " ..." << std::flush;
    results.push_back(lpp::run_experiment(c));
    std::cerr << " " << results.back().wall_seconds << " s\n";
  }
  for (const auto& path : lpp::app::write_outputs(run, results, out)) {
    std::cout << path.string() << "\n";
  }
  return 0;
}

// Splits one RFC 4180 record (no embedded newlines).
std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else if (c != '\r') {
      fields.back() += c;
    }
  }
  return fields;
}

// Values of sample `name` from a results CSV, or whitespace-separated
// numbers from any other file.
std::vector<double> read_sample(const std::string& path, const std::string& name) {
  std::ifstream in(path);
  if (!in) throw lpp::ConfigError("cannot open sample file '" + path + "'");
  std::string first;
  std::getline(in, first);
  std::vector<double> out;
  if (first.rfind("config_hash,", 0) == 0) {
    const auto header = split_csv(first);
    auto col = [&](const std::string& key) {
      for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == key) return i;
      }
      throw lpp::ConfigError("results CSV lacks column '" + key + "'");
    };
    const auto rec = col("record"), nm = col("name"), val = col("value");
    std::string line;
    while (std::getline(in, line)) {
      const auto f = split_csv(line);
      if (f.size() > val && f[rec] == "sample" && f[nm] == name) out.push_back(std::stod(f[val]));
    }
  } else {
    std::istringstream head(first);
    double v;
    while (head >> v) out.push_back(v);
    while (in >> v) out.push_back(v);
  }
  if (out.empty()) throw lpp::ConfigError("no sample values named '" + name + "' in " + path);
  return out;
}

int tw_check(const std::string& table, const std::string& sample, const std::string& name,
             double max_ks) {
  const lpp::TWReference ref = table.empty() ? lpp::TWReference::shipped()
                                             : lpp::TWReference::load(table);
  const auto& z = ref.z();
  const auto& f = ref.f();
  double step = 0.0, m1 = 0.0, m2 = 0.0;
  bool increasing = true;
  for (std::size_t i = 1; i < z.size(); ++i) {
    step = std::max(step, z[i] - z[i - 1]);
    increasing = increasing && f[i] > f[i - 1];
    const double zm = 0.5 * (z[i] + z[i - 1]), df = f[i] - f[i - 1];
    m1 += zm * df;
    m2 += zm * zm * df;
  }
  const double var = m2 - m1 * m1;
  bool ok = increasing && step <= 0.02 + 1e-12 && z.front() <= -5.0 && z.back() >= 3.0 &&
            f.front() < 0.001 && f.back() > 0.999;
  std::cout << "table: " << z.size() << " points on [" << z.front() << ", " << z.back()
            << "], max step " << step << (increasing ? ", increasing" : ", NOT increasing")
            << "\n";
  std::cout << "F(" << z.front() << ") = " << f.front() << ", F(" << z.back()
            << ") = " << f.back() << "\n";
  std::cout << "mean " << ref.mean() << " (grid " << m1 << "), variance " << ref.variance()
            << " (grid " << var << ")\n";
  ok = ok && std::abs(m1 - ref.mean()) < 0.01 && std::abs(var - ref.variance()) < 0.02;
  if (!sample.empty()) {
    const auto xs = read_sample(sample, name);
    const double d = lpp::ks_distance(xs, ref);
    const double sd = lpp::standard_error(xs) * std::sqrt(static_cast<double>(xs.size()));
    std::cout << "sample '" << name << "': " << xs.size() << " values, KS " << d << ", mean "
              << lpp::mean(xs) << " (reference " << ref.mean() << "), sd " << sd
              << " (reference " << std::sqrt(ref.variance()) << ", ratio "
              << sd / std::sqrt(ref.variance()) << ")\n";
    ok = ok && d <= max_ks;
  }
  std::cout << (ok ? "tw-check passed" : "tw-check FAILED") << "\n";
  return ok ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lpplab: Monte Carlo experiments for exponential last passage percolation"};
  app.set_version_flag("--version", std::string(lpp::library_version()));
  app.require_subcommand(1);
  app.footer("Environment: LPPLAB_MEMORY_BUDGET_MB caps the memory of any single field "
             "allocation (default 2048).");

  std::string config, out = "lpplab-out";
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  auto* run = app.add_subcommand("run", "Run every experiment of a config file");
  run->add_option("--config", config, "INI run file")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out, "Output directory")->capture_default_str();
  run->add_option("--seed-override", seed, "Replace every master seed");
  run->add_option("--workers", workers, "Worker threads per experiment")
      ->check(CLI::PositiveNumber);

  lpp::app::SelftestOptions st;
  std::string mutant;
  auto* self = app.add_subcommand("selftest", "Check the kernels against enumeration");
  self->add_option("--max-size", st.max_size, "Largest grid side (1..7)")
      ->check(CLI::Range(1, 7))
      ->capture_default_str();
  self->add_option("--cases", st.cases, "Random fields per suite")->capture_default_str();
  self->add_option("--seed", st.seed, "Base seed")->capture_default_str();
  self->add_option("--mutant", mutant, "Inject a known bug to confirm the suite fails")
      ->check(CLI::IsMember({"off-by-one"}));

  std::string table, sample, sample_name = "z";
  double max_ks = 0.08;
  auto* tw = app.add_subcommand("tw-check", "Validate the Tracy-Widom table, optionally "
                                            "against a sample");
  tw->add_option("--table", table, "Table file (default: the shipped table)");
  tw->add_option("--sample", sample, "Results CSV or a file of numbers");
  tw->add_option("--name", sample_name, "Sample name inside a results CSV")
      ->capture_default_str();
  tw->add_option("--max-ks", max_ks, "Largest acceptable KS distance")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return run_command(config, out, seed, workers);
    if (*self) {
      st.off_by_one_dp = mutant == "off-by-one";
      const auto report = lpp::app::run_selftest(st);
      lpp::app::print_report(std::cout, report);
      return report.ok() ? 0 : kExitFailure;
    }
    if (*tw) return tw_check(table, sample, sample_name, max_ks);
  } catch (const lpp::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const lpp::CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return 0;
}
