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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "lpplab/errors.hpp"
#include "lpplab_app/report.hpp"
#include "lpplab_app/run_file.hpp"
#include "lpplab_app/selftest.hpp"

namespace fs = std::filesystem;
using lpp::app::parse_run_file;

namespace {

lpp::app::RunFile parse(const std::string& text) {
  std::istringstream in(text);
  return parse_run_file(in);
}

std::string message_of(const std::string& text) {
  try {
    parse(text);
  } catch (const std::exception& e) {
    return e.what();
  }
  return {};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

const char* kSmall = R"(
# comment
[run]
seed = 11

[midpoint]
n = 8, 12
trials = 10

[tf.steep]
n = 40
trials = 5
mode = local_steep
eps_list = 0.1 0.3
L = 10
)";

}  // namespace

TEST_CASE("run files: sections, labels and typed keys") {
  const auto run = parse(kSmall);
  CHECK(run.master_seed == 11);
  REQUIRE(run.experiments.size() == 2);
  CHECK(run.experiments[0].name == "midpoint");
  CHECK(run.experiments[0].n_list == std::vector<int>{8, 12});
  CHECK(run.experiments[0].master_seed == 11);
  CHECK(run.experiments[1].name == "tf.steep");
  CHECK(run.experiments[1].kind == lpp::ExperimentKind::kTf);
  CHECK(run.experiments[1].params.mode == "local_steep");
  CHECK(run.experiments[1].params.eps_list == std::vector<double>{0.1, 0.3});
  CHECK(run.experiments[1].params.L == 10);
}

TEST_CASE("run files: errors name the offending key") {
  CHECK(message_of("[midpoint]\nn = 8\ntrails = 10\n").find("trails") != std::string::npos);
  CHECK(message_of("[midpoint]\nn = 8\ntrials = 10\nbogus = 1\n").find("bogus") !=
        std::string::npos);
  CHECK(message_of("[run]\nsede = 3\n[midpoint]\nn=8\ntrials=1\n").find("sede") !=
        std::string::npos);
  CHECK(message_of("[midpont]\nn = 8\ntrials = 1\n").find("midpont") != std::string::npos);
  CHECK(message_of("[midpoint]\ntrials = 1\n").find("n") != std::string::npos);
  CHECK(message_of("[midpoint]\nn = 8, x\ntrials = 1\n").find("n") != std::string::npos);
  CHECK(message_of("[midpoint]\nn = 9\ntrials = 1\n").find("n") != std::string::npos);
  CHECK(message_of("[tf]\nn = 8\ntrials = 1\nmode = sideways\n").find("mode") !=
        std::string::npos);
  CHECK_THROWS_AS(parse("[midpoint]\nn = 8\nn = 8\ntrials = 1\n"), lpp::ConfigError);
  CHECK_THROWS_AS(parse("# nothing\n"), lpp::ConfigError);
}

TEST_CASE("config hash tracks result-relevant content only") {
  auto a = parse(kSmall);
  auto b = parse(kSmall);
  CHECK(lpp::app::config_hash(a) == lpp::app::config_hash(b));
  CHECK(lpp::app::config_hash(a).size() == 64);
  lpp::app::apply_overrides(b, std::nullopt, 4);
  CHECK(lpp::app::config_hash(a) == lpp::app::config_hash(b));
  lpp::app::apply_overrides(b, 12, std::nullopt);
  CHECK(b.experiments[1].master_seed == 12);
  CHECK(lpp::app::config_hash(a) != lpp::app::config_hash(b));
}

TEST_CASE("csv quoting and number text") {
  CHECK(lpp::app::csv_field("plain") == "plain");
  CHECK(lpp::app::csv_field("a,b") == "\"a,b\"");
  CHECK(lpp::app::csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(lpp::app::number_text(0.1) == "0.1");
  CHECK(lpp::app::number_text(2.0 / 3.0) == "0.6666666666666666");
  CHECK(lpp::app::number_text(-1.0 / 0.0) == "-inf");
}

TEST_CASE("outputs are byte-identical across reruns and worker counts") {
  const fs::path root = fs::temp_directory_path() / "lpplab_test_app";
  fs::remove_all(root);
  auto run = parse(kSmall);
  std::vector<lpp::ExperimentResult> r1, r2;
  for (const auto& c : run.experiments) r1.push_back(lpp::run_experiment(c));
  const auto files = lpp::app::write_outputs(run, r1, root / "a");
  lpp::app::apply_overrides(run, std::nullopt, 3);
  for (const auto& c : run.experiments) r2.push_back(lpp::run_experiment(c));
  lpp::app::write_outputs(run, r2, root / "b");
  int compared = 0;
  for (const auto& f : files) {
    if (f.filename() == "timing.json") continue;
    CHECK(slurp(f) == slurp(root / "b" / f.filename()));
    ++compared;
  }
  CHECK(compared == 7);
  const std::string hash = lpp::app::config_hash(run);
  for (const auto& f : files) {
    CAPTURE(f.string());
    CHECK(slurp(f).find(hash.substr(0, 12)) != std::string::npos);
  }
  const std::string csv = slurp(root / "a" / "midpoint.csv");
  CHECK(csv.rfind("config_hash,master_seed,experiment,kind,n,variant,record,name,x,x_unit,"
                  "value,value_unit,se\r\n", 0) == 0);
  CHECK(csv.find("estimate,p_midpoint,,,") != std::string::npos);
  fs::remove_all(root);
}

TEST_CASE("selftest passes and catches the injected DP bug") {
  lpp::app::SelftestOptions o;
  o.cases = 30;
  CHECK(lpp::app::run_selftest(o).ok());
  o.max_size = 1;
  CHECK(lpp::app::run_selftest(o).ok());
  o.max_size = 5;
  o.off_by_one_dp = true;
  const auto bad = lpp::app::run_selftest(o);
  CHECK_FALSE(bad.ok());
  REQUIRE(bad.suites[0].failing_seed.has_value());
  o.max_size = 8;
  CHECK_THROWS_AS(lpp::app::run_selftest(o), lpp::ContractError);
}
