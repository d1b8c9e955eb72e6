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

#include "ebl/commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "ebl/compiler.hpp"
#include "ebl/execution.hpp"
#include "ebl/fisher.hpp"
#include "ebl/format.hpp"
#include "ebl/io.hpp"
#include "ebl/montecarlo.hpp"
#include "ebl/oracle.hpp"

namespace ebl {
namespace {

// Sends `text` to cfg.out, or to `out` when no path is set.
void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out.empty()) {
    out << text;
  } else {
    write_text(cfg.out, text);
  }
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

void cmd_fisher(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  const auto g = cfg.geometry();
  const auto points = fig3_grid(cfg.Ks, cfg.rs, cfg.thetas, g.sigma, cfg.N);
  std::ostringstream csv;
  write_fisher_csv(csv, points);
  emit(cfg, csv.str(), out);
  if (!cfg.svg.empty()) {
    std::ostringstream svg;
    write_fisher_svg(svg, points);
    write_text(cfg.svg, svg.str());
  }
  double worst = 0.0;
  for (const auto& p : points) worst = std::max(worst, p.ratio);
  log << "# fisher: " << points.size() << " points, max ratio " << num(worst) << '\n';
}

void cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  const auto model = ProtocolModel::make(cfg.scene(), cfg.geometry(), cfg.basis());
  std::vector<DetectionLine> lines;
  const CountTable counts = run_batch(model, cfg.trials, cfg.seed, Execution::Parallel,
                                      cfg.detections_out.empty() ? nullptr : &lines);
  const CellProbabilities p = cell_probabilities(model);
  const ChiSquare chi = chi_square(counts, p);
  const double z = max_binomial_z(counts, p);
  std::uint64_t plus = 0;
  for (auto n : counts.plus) plus += n;
  json j = {{"counts", counts_to_json(counts)},
            {"model", cells_to_json(p)},
            {"max_binomial_z", z},
            {"chi_square", {{"statistic", chi.statistic}, {"dof", chi.dof}, {"p_value", chi.p_value}}},
            {"phi_plus_total", plus}};
  emit(cfg, dump_json(j), out);
  if (!cfg.detections_out.empty()) {
    std::ostringstream os;
    os << "trial,m,q,sign,seed\n";
    for (const auto& d : lines) write_detection(os, d);
    write_text(cfg.detections_out, os.str());
  }
  log << "# simulate: " << counts.trials << " trials, " << counts.detections()
      << " detections, max |z| " << num(z) << ", chi-square p " << num(chi.p_value) << '\n';
}

void cmd_estimate(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  const auto g = cfg.geometry();
  const auto basis = cfg.basis();
  SearchInterval iv = default_interval(g);
  if (cfg.interval_lo) iv.lo = *cfg.interval_lo;
  if (cfg.interval_hi) iv.hi = *cfg.interval_hi;
  if (!(iv.hi > iv.lo)) throw std::invalid_argument("search interval is empty");
  log << "# search interval (" << num(iv.lo) << ", " << num(iv.hi) << "]\n";

  if (cfg.replicates > 0) {
    const auto model = ProtocolModel::make(cfg.scene(), g, basis);
    const auto study = replicate_study(model, g, basis, cfg.replicates, cfg.detections, cfg.seed, iv);
    std::ostringstream csv;
    write_study_csv(csv, study);
    emit(cfg, csv.str(), out);
    log << "# study: " << study_to_json(study).dump() << '\n';
    return;
  }

  CountTable counts;
  json j;
  if (!cfg.counts.empty()) {
    if (std::filesystem::path(cfg.counts).extension() == ".json") {
      counts = counts_from_json(read_json(cfg.counts));
    } else {
      std::istringstream in(read_text(cfg.counts));
      counts = counts_from_detections(read_detections(in), cfg.K);
    }
    if (counts.K != cfg.K) throw std::invalid_argument("counts file K differs from configured K");
  } else {
    const auto model = ProtocolModel::make(cfg.scene(), g, basis);
    counts = run_batch(model, cfg.trials, cfg.seed);
    j["theta_true"] = model.scene.theta;
  }
  const EstimationResult e = estimate_theta(counts, g, basis, iv);
  j["estimate"] = estimation_to_json(e);
  j["counts"] = counts_to_json(counts);
  emit(cfg, dump_json(j), out);
  log << "# estimate: theta_hat " << num(e.theta_hat) << " +- " << num(e.ci_half_width)
      << (e.at_boundary ? " (at interval boundary)" : "") << '\n';
}

void cmd_compile(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  Matrix U;
  if (!cfg.unitary.empty()) {
    U = unitary_from_json(read_json(cfg.unitary));
  } else {
    Rng rng = make_stream(cfg.seed, 0);
    U = random_unitary(cfg.random_dim, rng);
  }
  const CompileResult res = compile_nonlocal(U, cfg.n, cfg.K, cfg.M, cfg.seed);
  const TeleportVerification tele = verify_teleported_cnot();
  json j = {{"mesh", mesh_to_json(res.mesh)},
            {"budget", budget_to_json(res.budget)},
            {"verification", report_to_json(res.report)},
            {"teleported_cnot",
             {{"max_product_deviation", tele.max_product_deviation},
              {"max_choi_deviation", tele.max_choi_deviation},
              {"max_branch_probability_error", tele.max_branch_probability_error},
              {"pairs_per_run", tele.pairs_per_run}}}};
  if (cfg.random_dim > 0) j["unitary"] = unitary_to_json(U)["matrix"];
  emit(cfg, dump_json(j), out);
  const std::string text = res.report.text();
  if (cfg.report.empty()) {
    log << text;
  } else {
    write_text(cfg.report, text);
  }
  std::vector<std::string> failed;
  if (!(res.report.single_excitation_deviation <= cfg.tolerance)) failed.push_back("mesh action");
  if (!(res.report.gadget_block_deviation <= cfg.tolerance)) failed.push_back("gadget block");
  if (!(tele.max_choi_deviation <= cfg.tolerance)) failed.push_back("teleported CNOT");
  if (res.report.bell_pairs_consumed != static_cast<std::size_t>(res.budget.teleport_bell_pairs)) {
    failed.push_back("Bell-pair count");
  }
  if (!failed.empty()) {
    std::string msg = "verification failed:";
    for (const auto& f : failed) msg += " " + f;
    throw VerificationFailure(msg);
  }
}

void cmd_oracle(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  const auto g = cfg.geometry();
  const auto basis = cfg.basis();
  const auto scene = cfg.scene();
  const Distribution oracle = oracle_statevector(scene, g, basis);
  const Distribution branch = exact_distribution(ProtocolModel::make(scene, g, basis));
  std::set<std::string> keys;
  for (const auto& [k, v] : oracle) keys.insert(k);
  for (const auto& [k, v] : branch) keys.insert(k);
  std::ostringstream os;
  os << "outcome\toracle\tbranch\tabs_diff\n";
  for (const auto& k : keys) {
    const double a = oracle.count(k) ? oracle.at(k) : 0.0;
    const double b = branch.count(k) ? branch.at(k) : 0.0;
    os << k << '\t' << num(a) << '\t' << num(b) << '\t' << num(std::abs(a - b)) << '\n';
  }
  const double tv = total_variation(oracle, branch);
  os << "# total_variation=" << num(tv) << '\n';
  emit(cfg, os.str(), out);
  log << "# oracle: " << keys.size() << " outcomes, total variation " << num(tv) << '\n';
  if (!(tv <= cfg.tolerance)) {
    throw VerificationFailure("oracle and branch simulator differ: total variation " + num(tv));
  }
}

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  if (cfg.threads > 0) set_max_threads(cfg.threads);
  log << "# ebl " << cfg.command << '\n';
  std::istringstream lines(cfg.dump());
  for (std::string line; std::getline(lines, line);) log << "# " << line << '\n';
  try {
    if (cfg.command == "fisher") cmd_fisher(cfg, out, log);
    else if (cfg.command == "simulate") cmd_simulate(cfg, out, log);
    else if (cfg.command == "estimate") cmd_estimate(cfg, out, log);
    else if (cfg.command == "compile") cmd_compile(cfg, out, log);
    else if (cfg.command == "oracle") cmd_oracle(cfg, out, log);
    else throw ConfigError({"unknown command '" + cfg.command + "'"});
  } catch (const VerificationFailure& e) {
    log << "error: " << e.what() << '\n';
    return kExitVerification;
  } catch (const IoError& e) {
    log << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ConfigError& e) {
    log << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    log << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NonIdentifiable& e) {
    log << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::length_error& e) {
    log << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitOk;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entanglement-assisted long-baseline imaging toolkit", "ebl"};
  app.require_subcommand(1);
  static const std::map<std::string, std::string> about = {
      {"fisher", "CFI/QFI grid over K, r and theta (CSV, optional SVG)"},
      {"simulate", "Monte Carlo protocol batch with counts and model comparison (JSON)"},
      {"estimate", "Maximum-likelihood separation estimate or replicate study"},
      {"compile", "Clements mesh, resource budget and nonlocal verification for a unitary"},
      {"oracle", "State-vector oracle against the branch simulator on tiny instances"}};
  std::map<std::string, std::map<std::string, std::string>> flags;
  std::map<std::string, std::string> config_paths;
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, text] : about) {
    CLI::App* sub = app.add_subcommand(name, text);
    sub->add_option("--config", config_paths[name], "flat key = value file");
    for (const auto& key : config_keys()) sub->add_option("--" + key, flags[name][key]);
    subs[name] = sub;
  }

  std::vector<const char*> argv{"ebl"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  std::string command;
  for (const auto& [name, sub] : subs) {
    if (sub->parsed()) command = name;
  }
  RunConfig cfg;
  try {
    KeyValues kv;
    if (!config_paths[command].empty()) kv = parse_key_values(read_text(config_paths[command]));
    for (const auto& key : config_keys()) {
      if (subs[command]->count("--" + key) > 0) kv[key] = flags[command][key];
    }
    cfg = resolve_config(command, kv);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return run_command(cfg, out, err);
}

}  // namespace ebl
