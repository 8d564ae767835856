// Command-line front end: run scenarios, evaluate named bounds, run the
// verification suites, search for witnesses, and export plot-ready CSV.
//
// Exit codes: 0 pass, 1 fail, 2 inconclusive, 3 configuration error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "resmeta/config.hpp"
#include "resmeta/registry.hpp"
#include "resmeta/suites.hpp"

namespace {

using nlohmann::json;
using namespace resmeta;

json nat_json(const Nat& v) {
  json j;
  if (v.exact())
    j["value"] = v.value().get_str();
  else
    j["value"] = "top";
  j["lower_bound"] = v.lb().get_str();
  return j;
}

json results_json(const suites::Results& rs) {
  json arr = json::array();
  for (const auto& r : rs)
    arr.push_back({{"name", r.name},
                   {"verdict", oracle::verdict_name(r.verdict)},
                   {"detail", r.detail}});
  return arr;
}

config::Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  return config::parse_config(in);
}

int cmd_run(const std::string& config_path, const std::string& out_override) {
  config::Config cfg = load_config(config_path);
  if (!out_override.empty()) cfg.out_dir = out_override;
  auto scenario = config::build_scenario(cfg);
  Trajectory traj(scenario, config::parse_iter_tag(cfg.iteration));
  Vec ref = oracle::projection_reference(*scenario);

  std::filesystem::create_directories(cfg.out_dir);
  std::string csv_path = cfg.out_dir + "/trajectory.csv";
  {
    std::ofstream csv(csv_path, std::ios::binary);
    config::write_trajectory_csv(csv, traj, cfg.steps, ref);
  }

  auto [ra, rb] = traj.residuals(scenario->bundle.R, cfg.steps);
  json report;
  report["scenario"] = scenario->name;
  report["iteration"] = cfg.iteration;
  report["steps"] = cfg.steps;
  report["seed"] = cfg.seed;
  report["N"] = scenario->N;
  report["final_dist_to_ref"] = (traj.at(cfg.steps) - ref).norm();
  report["final_residual_A"] = ra;
  report["final_residual_B"] = rb;
  report["csv"] = csv_path;

  // witness table on the configured grid
  json witnesses = json::array();
  for (unsigned long k = 0; k <= cfg.kmax; ++k)
    for (const auto& fname : cfg.fgrid) {
      oracle::WitnessQuery q;
      q.k = Nat(k);
      q.f = scenarios::parse_family(fname);
      q.cap = cfg.cap;
      q.R = scenario->bundle.R;
      auto w = oracle::find_meta_witness(traj, q);
      witnesses.push_back({{"k", k},
                           {"f", fname},
                           {"found", w.found},
                           {"n_star", w.n_star},
                           {"checked_upto", w.checked_upto}});
    }
  report["witnesses"] = witnesses;

  std::string report_path = cfg.out_dir + "/report.json";
  std::ofstream(report_path) << report.dump(2) << "\n";
  std::cout << report.dump(2) << std::endl;
  return 0;
}

int cmd_verify(const std::string& suite, unsigned long cap, unsigned seed,
               const std::string& out_dir) {
  suites::Results rs = suites::run_suite(suite, cap, seed);
  json out;
  out["suite"] = suite;
  out["seed"] = seed;
  out["cap"] = cap;
  out["verdict"] = oracle::verdict_name(suites::worst(rs));
  out["checks"] = results_json(rs);
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    std::ofstream(out_dir + "/verdicts.json") << out.dump(2) << "\n";
  }
  std::cout << out.dump(2) << std::endl;
  return suites::exit_code(rs);
}

int cmd_bound(const std::string& name, unsigned long k, unsigned long n,
              const std::string& family) {
  auto rep = registry::eval_bound(name, Nat(k), Nat(n),
                                  scenarios::parse_family(family));
  json out = nat_json(rep.value);
  out["name"] = rep.name;
  out["k"] = k;
  out["n"] = n;
  out["f"] = family;
  out["provenance"] = rep.provenance;
  std::cout << out.dump(2) << std::endl;
  return 0;
}

int cmd_witness(const std::string& config_path, unsigned long k,
                const std::string& family, const std::string& metric,
                long stride, unsigned long cap) {
  config::Config cfg = load_config(config_path);
  auto scenario = config::build_scenario(cfg);
  Trajectory traj(scenario, config::parse_iter_tag(cfg.iteration));
  oracle::WitnessQuery q;
  q.k = Nat(k);
  q.f = scenarios::parse_family(family);
  q.cap = cap ? cap : cfg.cap;
  q.stride = stride;
  q.R = scenario->bundle.R;
  if (metric == "cauchy")
    q.metric = oracle::Metric::CauchyPair;
  else if (metric == "residual_a")
    q.metric = oracle::Metric::ResidualA;
  else if (metric == "residual_b")
    q.metric = oracle::Metric::ResidualB;
  else if (metric == "residual_both")
    q.metric = oracle::Metric::ResidualBoth;
  else
    throw std::invalid_argument("unknown metric: " + metric);
  auto w = oracle::find_meta_witness(traj, q);
  json out = {{"scenario", scenario->name}, {"k", k},
              {"f", family},               {"metric", metric},
              {"stride", stride},          {"found", w.found},
              {"n_star", w.n_star},        {"checked_upto", w.checked_upto}};
  std::cout << out.dump(2) << std::endl;
  return w.found ? 0 : 2;
}

int cmd_export(const std::string& config_path) {
  config::Config cfg = load_config(config_path);
  auto scenario = config::build_scenario(cfg);
  Trajectory traj(scenario, config::parse_iter_tag(cfg.iteration));
  Vec ref = oracle::projection_reference(*scenario);
  config::write_trajectory_csv(std::cout, traj, cfg.steps, ref);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Alternating-resolvent iteration toolkit"};
  app.require_subcommand(1);

  std::string config_path, out_dir, suite, bound_name, family = "identity",
                                           metric = "cauchy";
  unsigned long k = 0, n = 0, cap = 100000;
  unsigned seed = 42;
  long stride = 1;

  auto* run = app.add_subcommand("run", "simulate a scenario and write artifacts");
  run->add_option("--config", config_path, "scenario config path")->required();
  run->add_option("--out", out_dir, "output directory override");

  auto* verify = app.add_subcommand("verify", "run a named verification suite");
  verify->add_option("--suite", suite, "suite name")->required();
  verify->add_option("--config", config_path, "unused for builtin suites");
  verify->add_option("--cap", cap, "witness search cap");
  verify->add_option("--seed", seed, "random fixture seed");
  verify->add_option("--out", out_dir, "write verdicts.json here");

  auto* bound = app.add_subcommand("bound", "evaluate a named bound");
  bound->add_option("--name", bound_name, "bound name")->required();
  bound->add_option("--k", k, "precision argument");
  bound->add_option("--n", n, "start index argument (where applicable)");
  bound->add_option("--f", family, "counterfunction family");

  auto* witness = app.add_subcommand("witness", "search for a witness index");
  witness->add_option("--config", config_path, "scenario config path")->required();
  witness->add_option("--k", k, "precision argument");
  witness->add_option("--f", family, "counterfunction family");
  witness->add_option("--metric", metric,
                      "cauchy | residual_a | residual_b | residual_both");
  witness->add_option("--stride", stride, "orbit index stride");
  witness->add_option("--cap", cap, "witness search cap");

  auto* exp = app.add_subcommand("export", "print the trajectory CSV to stdout");
  exp->add_option("--config", config_path, "scenario config path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    if (run->parsed()) return cmd_run(config_path, out_dir);
    if (verify->parsed()) return cmd_verify(suite, cap, seed, out_dir);
    if (bound->parsed()) return cmd_bound(bound_name, k, n, family);
    if (witness->parsed())
      return cmd_witness(config_path, k, family, metric, stride, cap);
    if (exp->parsed()) return cmd_export(config_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 3;
  }
  return 3;
}
