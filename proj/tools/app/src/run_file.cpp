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

#include "lpplab_app/run_file.hpp"

#include <openssl/sha.h>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <fstream>
#include <sstream>

#include "lpplab/errors.hpp"

namespace lpp::app {
namespace {

namespace pt = boost::property_tree;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

template <class T>
T parse_number(const std::string& where, const std::string& text) {
  const std::string t = trim(text);
  T value{};
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
    throw ConfigError(where + ": cannot parse '" + text + "'");
  }
  return value;
}

std::vector<int> parse_int_list(const std::string& where, const std::string& text) {
  std::vector<int> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    std::istringstream words(item);
    std::string w;
    while (words >> w) out.push_back(parse_number<int>(where, w));
  }
  if (out.empty()) throw ConfigError(where + ": empty list");
  return out;
}

ExperimentConfig parse_experiment(const std::string& section, const pt::ptree& body,
                                  const RunFile& run) {
  const std::string kind_text = section.substr(0, section.find('.'));
  const auto kind = parse_kind(kind_text);
  if (!kind) {
    throw ConfigError("unknown section '" + section +
                      "': not an experiment kind and not [run]");
  }
  ExperimentConfig c;
  c.name = section;
  c.kind = *kind;
  c.master_seed = run.master_seed;
  c.workers = run.workers;
  c.params = default_params(*kind);
  c.n_list.clear();
  c.trials = 0;
  bool have_n = false, have_trials = false;
  for (const auto& [key, node] : body) {
    const std::string where = "[" + section + "] " + key;
    const std::string value = node.data();
    if (!node.empty()) throw ConfigError(where + ": nested keys are not allowed");
    if (key == "n") {
      c.n_list = parse_int_list(where, value);
      have_n = true;
    } else if (key == "trials") {
      c.trials = parse_number<int>(where, value);
      have_trials = true;
    } else if (key == "seed") {
      c.master_seed = parse_number<std::uint64_t>(where, value);
    } else {
      try {
        set_param(*kind, c.params, key, value);
      } catch (const ConfigError& e) {
        throw ConfigError("[" + section + "] " + e.what());
      }
    }
  }
  if (!have_n) throw ConfigError("[" + section + "] n: missing");
  if (!have_trials) throw ConfigError("[" + section + "] trials: missing");
  return c;
}

}  // namespace

RunFile parse_run_file(std::istream& in, const std::string& origin) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(origin + ": " + e.message() + " (line " +
                      std::to_string(e.line()) + ")");
  }
  RunFile run;
  for (const auto& [name, body] : tree) {
    if (body.empty() && !body.data().empty()) {
      throw ConfigError(origin + ": key '" + name + "' outside any section");
    }
  }
  if (const auto r = tree.get_child_optional("run")) {
    for (const auto& [key, node] : *r) {
      const std::string where = "[run] " + key;
      if (key == "seed") {
        run.master_seed = parse_number<std::uint64_t>(where, node.data());
      } else if (key == "workers") {
        run.workers = parse_number<int>(where, node.data());
      } else {
        throw ConfigError("unknown key '" + key + "' in [run]");
      }
    }
  }
  for (const auto& [name, body] : tree) {
    if (name == "run") continue;
    run.experiments.push_back(parse_experiment(name, body, run));
  }
  if (run.experiments.empty()) throw ConfigError(origin + ": no experiment sections");
  for (const auto& c : run.experiments) {
    try {
      validate(c);
    } catch (const ConfigError& e) {
      throw ConfigError("[" + c.name + "] " + e.what());
    } catch (const CapacityError& e) {
      throw CapacityError("[" + c.name + "] " + e.what());
    }
  }
  return run;
}

RunFile load_run_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  return parse_run_file(in, path.string());
}

void apply_overrides(RunFile& run, std::optional<std::uint64_t> seed,
                     std::optional<int> workers) {
  if (seed) {
    run.master_seed = *seed;
    for (auto& c : run.experiments) c.master_seed = *seed;
  }
  if (workers) {
    if (*workers < 1) throw ConfigError("workers: must be at least 1");
    run.workers = *workers;
    for (auto& c : run.experiments) c.workers = *workers;
  }
}

std::string canonical_text(const RunFile& run) {
  std::ostringstream out;
  out << "lpplab " << library_version() << "\n";
  for (const auto& c : run.experiments) {
    out << "[" << c.name << "]\nkind=" << kind_name(c.kind) << "\nn=";
    for (std::size_t i = 0; i < c.n_list.size(); ++i) {
      out << (i ? "," : "") << c.n_list[i];
    }
    out << "\ntrials=" << c.trials << "\nseed=" << c.master_seed << "\n";
    for (const auto& [k, v] : param_values(c.kind, c.params)) out << k << "=" << v << "\n";
  }
  return out.str();
}

std::string config_hash(const RunFile& run) {
  const std::string text = canonical_text(run);
  unsigned char digest[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char*>(text.data()), text.size(), digest);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned char b : digest) {
    hex.push_back(kHex[b >> 4]);
    hex.push_back(kHex[b & 15]);
  }
  return hex;
}

}  // namespace lpp::app
