// Copyright 2026 The entangled-baseline Authors
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

#include "ebl/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "ebl/format.hpp"

namespace ebl {
namespace {

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& p : v) s += (s.empty() ? "" : "\n  ") + p;
  return s;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

template <typename T>
bool parse_number(const std::string& s, T& out) {
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

const std::set<std::string>& allowed(const std::string& command) {
  static const std::set<std::string> common = {"delta", "sigma", "r", "beta", "K", "seed",
                                               "threads", "out"};
  static const std::map<std::string, std::set<std::string>> extra = {
      {"fisher", {"N", "Ks", "rs", "thetas", "svg"}},
      {"simulate", {"M", "epsilon", "theta_over_sigma", "N", "trials", "detections_out"}},
      {"estimate",
       {"M", "epsilon", "theta_over_sigma", "N", "trials", "counts", "replicates", "detections",
        "interval_lo", "interval_hi"}},
      {"compile", {"M", "unitary", "random_dim", "n", "tolerance", "report"}},
      {"oracle", {"M", "epsilon", "theta_over_sigma", "N", "tolerance"}},
  };
  static std::map<std::string, std::set<std::string>> merged;
  auto it = merged.find(command);
  if (it == merged.end()) {
    std::set<std::string> s = common;
    if (auto e = extra.find(command); e != extra.end()) s.insert(e->second.begin(), e->second.end());
    it = merged.emplace(command, std::move(s)).first;
  }
  return it->second;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error("invalid configuration:\n  " + join(problems)),
      problems_(std::move(problems)) {}

KeyValues parse_key_values(std::string_view text) {
  KeyValues kv;
  std::vector<std::string> problems;
  std::istringstream in{std::string(text)};
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      problems.push_back("line " + std::to_string(lineno) + ": expected key = value");
      continue;
    }
    const std::string key = trim(std::string_view(t).substr(0, eq));
    if (key.empty()) {
      problems.push_back("line " + std::to_string(lineno) + ": empty key");
      continue;
    }
    kv[key] = trim(std::string_view(t).substr(eq + 1));
  }
  if (!problems.empty()) throw ConfigError(problems);
  return kv;
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "delta",   "sigma",       "r",           "beta",       "K",         "M",
      "epsilon", "theta_over_sigma", "N",      "trials",     "seed",      "threads",
      "out",     "Ks",          "rs",          "thetas",     "svg",       "detections_out",
      "counts",  "replicates",  "detections",  "interval_lo", "interval_hi", "unitary",
      "random_dim", "n",        "tolerance",   "report"};
  return keys;
}

ApertureGeometry RunConfig::geometry() const {
  const double s = sigma ? *sigma : delta ? 2.0 * std::numbers::pi / *delta : 1.0;
  const double ratio = r ? *r : beta ? *beta * s / std::numbers::pi : 1.0;
  return ApertureGeometry::from_sigma_ratio(s, ratio);
}

ModalBasis RunConfig::basis() const { return ModalBasis::sinc_bessel(K, geometry().sigma); }

TwoPointScene RunConfig::scene() const {
  return TwoPointScene::make(theta_over_sigma * geometry().sigma, eps(), M, N);
}

std::string RunConfig::dump() const {
  std::map<std::string, std::string> m;
  const auto g = geometry();
  m["command"] = command;
  m["sigma"] = num(g.sigma);
  m["delta"] = num(g.delta);
  m["r"] = num(g.ratio);
  m["beta"] = num(g.beta);
  m["K"] = std::to_string(K);
  m["seed"] = std::to_string(seed);
  m["threads"] = std::to_string(threads);
  m["out"] = out.empty() ? "-" : out;
  auto list = [](const auto& v) {
    std::string s;
    for (const auto& x : v) {
      if (!s.empty()) s += ',';
      if constexpr (std::is_same_v<std::decay_t<decltype(x)>, int>) {
        s += std::to_string(x);
      } else {
        s += num(x);
      }
    }
    return s;
  };
  if (command == "fisher") {
    m["N"] = num(N);
    m["Ks"] = list(Ks);
    m["rs"] = list(rs);
    m["thetas"] = list(thetas);
    m["svg"] = svg.empty() ? "-" : svg;
  } else {
    m["M"] = std::to_string(M);
  }
  if (command == "simulate" || command == "estimate" || command == "oracle") {
    m["epsilon"] = num(eps());
    m["theta_over_sigma"] = num(theta_over_sigma);
    m["N"] = num(N);
  }
  if (command == "simulate") {
    m["trials"] = std::to_string(trials);
    m["detections_out"] = detections_out.empty() ? "-" : detections_out;
  }
  if (command == "estimate") {
    m["counts"] = counts.empty() ? "-" : counts;
    m["trials"] = std::to_string(trials);
    m["replicates"] = std::to_string(replicates);
    m["detections"] = std::to_string(detections);
    m["interval_lo"] = interval_lo ? num(*interval_lo) : "default";
    m["interval_hi"] = interval_hi ? num(*interval_hi) : "default";
  }
  if (command == "compile") {
    m["unitary"] = unitary.empty() ? "-" : unitary;
    m["random_dim"] = std::to_string(random_dim);
    m["n"] = std::to_string(n);
    m["report"] = report.empty() ? "-" : report;
  }
  if (command == "compile" || command == "oracle") m["tolerance"] = num(tolerance);
  std::string s;
  for (const auto& [k, v] : m) s += k + "=" + v + "\n";
  return s;
}

RunConfig resolve_config(const std::string& command, const KeyValues& kv) {
  static const std::set<std::string> commands = {"fisher", "simulate", "estimate", "compile",
                                                 "oracle"};
  std::vector<std::string> problems;
  if (!commands.count(command)) throw ConfigError({"unknown command '" + command + "'"});
  const auto& ok = allowed(command);
  for (const auto& [k, v] : kv) {
    if (!ok.count(k)) problems.push_back("unknown key '" + k + "' for " + command);
  }

  RunConfig c;
  c.command = command;
  auto get = [&](const char* key) -> const std::string* {
    auto it = kv.find(key);
    return it != kv.end() && ok.count(key) ? &it->second : nullptr;
  };
  auto number = [&](const char* key, auto& target) {
    if (const auto* v = get(key)) {
      std::decay_t<decltype(target)> x{};
      if (parse_number(*v, x)) {
        target = x;
      } else {
        problems.push_back(std::string(key) + ": cannot parse '" + *v + "'");
      }
    }
  };
  auto optional = [&](const char* key, std::optional<double>& target) {
    double x = 0.0;
    if (const auto* v = get(key)) {
      if (parse_number(*v, x)) {
        target = x;
      } else {
        problems.push_back(std::string(key) + ": cannot parse '" + *v + "'");
      }
    }
  };
  auto text = [&](const char* key, std::string& target) {
    if (const auto* v = get(key)) target = *v;
  };
  auto list = [&](const char* key, auto& target) {
    const auto* v = get(key);
    if (!v) return;
    target.clear();
    std::istringstream in(*v);
    std::string item;
    while (std::getline(in, item, ',')) {
      typename std::decay_t<decltype(target)>::value_type x{};
      if (parse_number(trim(item), x)) {
        target.push_back(x);
      } else {
        problems.push_back(std::string(key) + ": cannot parse item '" + trim(item) + "'");
      }
    }
    if (target.empty()) problems.push_back(std::string(key) + ": empty list");
  };

  optional("delta", c.delta);
  optional("sigma", c.sigma);
  optional("r", c.r);
  optional("beta", c.beta);
  number("K", c.K);
  number("M", c.M);
  optional("epsilon", c.epsilon);
  number("theta_over_sigma", c.theta_over_sigma);
  number("N", c.N);
  number("trials", c.trials);
  number("seed", c.seed);
  number("threads", c.threads);
  text("out", c.out);
  list("Ks", c.Ks);
  list("rs", c.rs);
  list("thetas", c.thetas);
  text("svg", c.svg);
  text("detections_out", c.detections_out);
  text("counts", c.counts);
  number("replicates", c.replicates);
  number("detections", c.detections);
  optional("interval_lo", c.interval_lo);
  optional("interval_hi", c.interval_hi);
  text("unitary", c.unitary);
  number("random_dim", c.random_dim);
  number("n", c.n);
  number("tolerance", c.tolerance);
  text("report", c.report);

  if (c.delta && c.sigma) problems.push_back("give only one of delta and sigma");
  if (c.r && c.beta) problems.push_back("give only one of r and beta");
  if (c.delta && !(*c.delta > 0)) problems.push_back("delta must be positive");
  if (c.sigma && !(*c.sigma > 0)) problems.push_back("sigma must be positive");
  if (c.r && !(*c.r >= 0)) problems.push_back("r must be non-negative");
  if (c.beta && !(*c.beta >= 0)) problems.push_back("beta must be non-negative");
  if (c.K < 1 || c.K > 200) problems.push_back("K must be in [1, 200]");
  if (c.M < 1) problems.push_back("M must be at least 1");
  if (c.epsilon && !(*c.epsilon >= 0 && *c.epsilon * c.M <= 1.0)) {
    problems.push_back("epsilon must satisfy 0 <= epsilon and epsilon * M <= 1");
  }
  if (!(c.theta_over_sigma >= 0)) problems.push_back("theta_over_sigma must be non-negative");
  if (!(c.N > 0)) problems.push_back("N must be positive");
  if (c.trials < 1) problems.push_back("trials must be at least 1");
  if (c.threads < 0) problems.push_back("threads must be non-negative");

  if (command == "fisher") {
    if (c.thetas.empty()) {
      constexpr int kPoints = 40;
      for (int i = 0; i < kPoints; ++i) {
        c.thetas.push_back(1e-3 * std::pow(500.0, static_cast<double>(i) / (kPoints - 1)));
      }
    }
    for (int k : c.Ks) {
      if (k < 1 || k > 200) problems.push_back("Ks entries must be in [1, 200]");
    }
    for (double x : c.rs) {
      if (!(x >= 0)) problems.push_back("rs entries must be non-negative");
    }
    for (double x : c.thetas) {
      if (!(x > 0)) problems.push_back("thetas entries must be positive");
    }
  }
  if (command == "estimate") {
    if (!c.counts.empty() && c.replicates > 0) {
      problems.push_back("replicates cannot be combined with a counts file");
    }
    if (c.replicates == 1) problems.push_back("replicates must be 0 or at least 2");
    if (c.replicates > 0 && c.detections < 100) problems.push_back("detections must be at least 100");
    if (c.interval_lo && !(*c.interval_lo >= 0)) problems.push_back("interval_lo must be non-negative");
    if (c.interval_lo && c.interval_hi && !(*c.interval_hi > *c.interval_lo)) {
      problems.push_back("interval_hi must exceed interval_lo");
    }
  }
  if (command == "compile") {
    if (c.unitary.empty() == (c.random_dim == 0)) {
      problems.push_back("give exactly one of unitary and random_dim");
    }
    if (c.random_dim < 0) problems.push_back("random_dim must be positive");
    if (c.n < 1) problems.push_back("n must be at least 1");
    if (c.random_dim > 0 && c.random_dim != c.n * c.K) {
      problems.push_back("random_dim must equal n * K");
    }
  }
  if (command == "oracle" && !get("tolerance")) c.tolerance = 1e-10;
  if (command == "compile" || command == "oracle") {
    if (!(c.tolerance > 0)) problems.push_back("tolerance must be positive");
  }
  if (command == "oracle" && 2L * c.K * c.M > 12) {
    problems.push_back("oracle needs 2 * K * M <= 12");
  }
  if (!problems.empty()) throw ConfigError(problems);
  return c;
}

}  // namespace ebl
