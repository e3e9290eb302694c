#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ranctl/error.hpp"
#include "ranctl/harness/commands.hpp"
#include "ranctl/xapp/selector.hpp"

using namespace ranctl;
using namespace ranctl::harness;

namespace {

struct SpecArgs {
  std::string spec;
  std::string out;
};

void add_spec_args(CLI::App* cmd, SpecArgs& a) {
  cmd->add_option("--spec", a.spec, "experiment spec (JSON)")->required();
  cmd->add_option("--out", a.out, "output directory (overrides the spec)");
}

ExperimentSpec load(const SpecArgs& a) {
  auto spec = load_experiment(a.spec);
  if (!a.out.empty()) spec.output_dir = a.out;
  return spec;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  for (std::string f; std::getline(ss, f, ',');) {
    try {
      out.push_back(std::stod(f));
    } catch (const std::exception&) {
      throw ValidationError("not a number: '" + f + "'");
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tunable proportional-fair scheduling testbed with a RIC control loop"};
  app.require_subcommand(1);

  SpecArgs sweep_args;
  unsigned threads = 0;
  auto* sweep = app.add_subcommand("sweep", "simulate every beta vector of the grid");
  add_spec_args(sweep, sweep_args);
  sweep->add_option("--threads", threads, "worker threads (0 = all cores)");

  SpecArgs build_args;
  auto* build = app.add_subcommand("build-table", "extract level sets and write the policy table");
  add_spec_args(build, build_args);

  SpecArgs run_args;
  std::uint64_t seed = 0;
  bool socket = false, force_ones = false;
  auto* run = app.add_subcommand("run", "closed loop on the requirement schedule plus baseline");
  add_spec_args(run, run_args);
  auto* seed_opt = run->add_option("--seed", seed, "simulation seed (overrides the spec)");
  run->add_flag("--socket", socket, "DU and RIC on separate threads over a socket pair");
  run->add_flag("--force-ones", force_ones, "send beta = 1 regardless of the selection");

  std::string eval_dir;
  auto* eval = app.add_subcommand("eval", "success rate per episode from a run directory");
  eval->add_option("--dir", eval_dir, "run output directory")->required();

  std::string bs_text = "-1,-0.8,-0.6,-0.4,-0.2,0.2,0.4,0.6,0.8,1";
  int points = 100;
  std::string curves_out;
  auto* curves = app.add_subcommand("curves", "F1 versus bitrate for a family of b values");
  curves->add_option("--b", bs_text, "comma-separated b values");
  curves->add_option("--points", points, "samples per curve");
  curves->add_option("--out", curves_out, "CSV file (default stdout)");

  std::string table_path, req_text;
  std::uint64_t query_seed = 0;
  auto* query = app.add_subcommand("query", "select betas for one requirement vector");
  query->add_option("--table", table_path, "policy table JSON")->required();
  query->add_option("--req", req_text, "comma-separated Mbit/s per UE")->required();
  query->add_option("--seed", query_seed, "selection seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*sweep) {
      auto spec = load(sweep_args);
      if (threads) spec.sweep.threads = threads;
      return cmd_sweep(spec, std::cerr);
    }
    if (*build) return cmd_build(load(build_args), std::cerr);
    if (*run) {
      auto spec = load(run_args);
      if (*seed_opt) spec.run.seed = seed;
      RunFlags flags;
      flags.force_ones = force_ones;
      if (socket) flags.mode = LoopMode::kSocket;
      return cmd_run(spec, flags, std::cerr);
    }
    if (*eval) return cmd_eval(eval_dir, std::cout);
    if (*curves) {
      const auto bs = parse_list(bs_text);
      if (curves_out.empty()) return cmd_curves(bs, points, std::cout);
      std::ofstream out(curves_out);
      if (!out) throw ValidationError("cannot write " + curves_out);
      return cmd_curves(bs, points, out);
    }
    if (*query) {
      const auto table = xapp::load_policy_table(table_path);
      const auto r = xapp::select_betas(table, {parse_list(req_text), query_seed});
      std::cout << xapp::query_result_to_json(r) << '\n';
      return kExitOk;
    }
  } catch (const xapp::InfeasibleRequirement& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kExitOk;
}
