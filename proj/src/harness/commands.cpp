#include "ranctl/harness/commands.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "ranctl/error.hpp"
#include "ranctl/format.hpp"
#include "ranctl/harness/f1_eval.hpp"
#include "ranctl/rapp/f1_model.hpp"
#include "ranctl/ransim/csv.hpp"
#include "ranctl/xapp/policy_table.hpp"

namespace ranctl::harness {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path.string());
  return out;
}

std::ifstream open_in(const std::filesystem::path& path, const std::string& hint) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string() + hint);
  return in;
}

void write_matrix_csv(const std::filesystem::path& path, const xapp::SampleMatrix& m) {
  auto out = open_out(path);
  ransim::write_throughput_header(out);
  for (std::size_t w = 0; w < m.rows(); ++w) {
    for (std::size_t u = 0; u < m.cols(); ++u) {
      out << w << ',' << u << ',' << format_double(m.at(w, u)) << '\n';
    }
  }
}

xapp::SampleMatrix read_matrix_csv(const std::filesystem::path& path) {
  auto in = open_in(path, "");
  const auto samples = ransim::read_throughput_csv(in);
  std::size_t n = 0;
  for (const auto& s : samples) n = std::max<std::size_t>(n, s.ue + 1);
  std::map<std::int64_t, std::vector<double>> rows;
  for (const auto& s : samples) {
    auto& r = rows[s.window_index];
    r.resize(n);
    r[s.ue] = s.value_mbps;
  }
  xapp::SampleMatrix m(n);
  std::int64_t expect = 0;
  for (const auto& [w, r] : rows) {
    if (w != expect++) throw ValidationError(path.string() + ": window indices are not contiguous");
    m.append_row(r);
  }
  return m;
}

std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

std::vector<double> split_doubles(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  for (std::string f; std::getline(ss, f, ';');) out.push_back(std::stod(f));
  return out;
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

}  // namespace

int cmd_sweep(const ExperimentSpec& spec, std::ostream& log) {
  const xapp::BetaGrid grid(spec.beta_grid);
  log << "sweeping " << grid.cardinality(spec.sim.n_ues) << " beta vectors, "
      << spec.sweep.windows << " windows each\n";
  const auto data = xapp::run_sweep(grid, spec.sim, spec.sweep);
  auto out = open_out(spec.sweep_path());
  xapp::write_sweep_csv(out, data);
  log << "wrote " << spec.sweep_path().string() << '\n';
  return kExitOk;
}

int cmd_build(const ExperimentSpec& spec, std::ostream& log) {
  auto in = open_in(spec.sweep_path(), " (run the sweep first)");
  const auto data = xapp::read_sweep_csv(in, spec.sim.measurement_window_ms);
  if (data.n_ues != spec.sim.n_ues) throw ValidationError("sweep UE count differs from the spec");
  const auto table = xapp::build_policy_table(data, spec.q, spec.delta_mbps, spec.config_hash());
  xapp::save_policy_table(table, spec.table_path());
  log << "policy table: " << table.size() << " keys -> " << spec.table_path().string() << '\n';
  return kExitOk;
}

int cmd_run(const ExperimentSpec& spec, const RunFlags& flags, std::ostream& log,
            RunResult* result_out) {
  const auto table = xapp::load_policy_table(spec.table_path());
  if (table.meta.config_hash != spec.config_hash()) {
    throw ValidationError("policy table " + spec.table_path().string() + " was built for config " +
                          table.meta.config_hash + " but the spec describes " +
                          spec.config_hash() + "; rebuild it with sweep + build-table");
  }
  LoopOptions loop = spec.loop;
  loop.force_ones = flags.force_ones;
  if (flags.mode) loop.mode = *flags.mode;

  ransim::SimConfig cfg = spec.sim;
  cfg.rng_seed = spec.run.seed;
  const auto run = run_closed_loop(cfg, table, spec.resolved_requirements(), spec.total_windows(), loop);

  const auto& dir = spec.output_dir;
  write_matrix_csv(dir / "throughput.csv", run.throughput);
  write_matrix_csv(dir / "baseline_throughput.csv", run.baseline);
  {
    auto out = open_out(dir / "episodes.csv");
    out << "episode,start_window,end_window,first_eval_window,requirement,betas,survivors,"
           "infeasible,p_success,baseline,delta_p_success,xapp_processing_ms,control_loop_ms,"
           "control_latency_ms\n";
    for (const auto& e : run.episodes) {
      out << e.index << ',' << e.start_window << ',' << e.end_window << ',' << e.first_eval_window
          << ',' << join_doubles(e.requirement, ';') << ','
          << (e.betas ? join_doubles(*e.betas, ';') : "") << ',' << e.survivors << ','
          << (e.infeasible ? 1 : 0) << ',' << format_double(e.success.p_success) << ','
          << format_double(e.success.baseline) << ',' << format_double(e.success.delta) << ','
          << (e.kpis ? format_double(e.kpis->xapp_processing_ms) : "") << ','
          << (e.kpis ? format_double(e.kpis->control_loop_ms) : "") << ','
          << (e.kpis ? opt(e.kpis->control_latency_ms) : "") << '\n';
    }
  }
  {
    auto out = open_out(dir / "beta_history.csv");
    out << "applied_at_ms,betas\n";
    for (const auto& h : run.beta_history) {
      out << format_double(h.applied_at_ms) << ',' << join_doubles(h.betas, ';') << '\n';
    }
  }

  nlohmann::ordered_json report;
  report["scenario"] = spec.scenario;
  report["config_hash"] = spec.config_hash();
  report["seed"] = spec.run.seed;
  report["episodes"] = run.episodes.size();
  report["mean_p_success"] = run.mean_p_success();
  report["mean_delta_p_success"] = run.mean_delta();
  std::vector<double> proc, loop_ms, latency;
  std::size_t unsatisfied = 0;
  for (const auto& e : run.episodes) {
    if (!e.kpis) continue;
    proc.push_back(e.kpis->xapp_processing_ms);
    loop_ms.push_back(e.kpis->control_loop_ms);
    if (e.kpis->control_latency_ms) {
      latency.push_back(*e.kpis->control_latency_ms);
    } else {
      ++unsatisfied;
    }
  }
  report["sim_clock_kpis"] = {{"xapp_processing_ms", mean_of(proc)},
                              {"control_loop_ms", mean_of(loop_ms)},
                              {"control_latency_ms", mean_of(latency)},
                              {"episodes_never_satisfied", unsatisfied}};
  if (run.wall) {
    report["wall_clock_kpis"] = {{"xapp_processing_ms", mean_of(run.wall->xapp_processing_ms)},
                                 {"control_loop_ms", mean_of(run.wall->control_loop_ms)}};
  }
  report["output_files"] = {"throughput.csv", "baseline_throughput.csv", "episodes.csv",
                            "beta_history.csv"};

  const auto f1 = compare_f1(spec, run);
  if (!f1.empty()) {
    auto out = open_out(dir / "f1.csv");
    out << "b,episode,framing_ue,far_ue,prioritized_f1,prioritized_baseline_f1,far_f1,"
           "far_baseline_f1\n";
    for (const auto& c : f1) {
      out << format_double(c.b) << ',' << c.episode << ',' << c.framing_ue << ','
          << (c.far_ue ? std::to_string(*c.far_ue) : "") << ',' << format_double(c.prioritized_run)
          << ',' << format_double(c.prioritized_baseline) << ',' << format_double(c.far_run) << ','
          << format_double(c.far_baseline) << '\n';
    }
    report["output_files"].push_back("f1.csv");
  }
  open_out(dir / "report.json") << report.dump(2) << '\n';

  log << "episodes: " << run.episodes.size() << ", mean P_S " << format_double(run.mean_p_success())
      << "%, mean delta " << format_double(run.mean_delta()) << " points\n";
  for (const auto& e : run.episodes) {
    if (e.infeasible) log << "episode " << e.index << " infeasible, betas kept: " << e.note << '\n';
  }
  const bool infeasible = run.any_infeasible();
  if (result_out) *result_out = run;
  return infeasible ? kExitInfeasible : kExitOk;
}

int cmd_eval(const std::filesystem::path& run_dir, std::ostream& out) {
  const auto run = read_matrix_csv(run_dir / "throughput.csv");
  const auto base = read_matrix_csv(run_dir / "baseline_throughput.csv");
  if (run.rows() != base.rows() || run.cols() != base.cols()) {
    throw ValidationError("run and baseline traces differ in shape");
  }
  auto in = open_in(run_dir / "episodes.csv", "");
  std::string line;
  std::getline(in, line);
  out << "episode,requirement,p_success,baseline,delta_p_success\n";
  double sum_p = 0.0, sum_d = 0.0;
  int n = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (f.size() < 5) throw ValidationError("episodes.csv: short row");
    const auto from = std::stoll(f[3]);
    const auto to = std::stoll(f[2]);
    if (from < 0 || to > static_cast<std::int64_t>(run.rows()) || from >= to) {
      throw ValidationError("episodes.csv: window range outside the trace");
    }
    const auto req = split_doubles(f[4]);
    xapp::SampleMatrix r(run.cols()), b(run.cols());
    for (auto w = from; w < to; ++w) {
      r.append_row(run.row(static_cast<std::size_t>(w)));
      b.append_row(base.row(static_cast<std::size_t>(w)));
    }
    const auto s = xapp::evaluate_success(req, r, b);
    out << f[0] << ',' << f[4] << ',' << format_double(s.p_success) << ','
        << format_double(s.baseline) << ',' << format_double(s.delta) << '\n';
    sum_p += s.p_success;
    sum_d += s.delta;
    ++n;
  }
  if (n == 0) throw ValidationError("episodes.csv has no episodes");
  out << "mean,," << format_double(sum_p / n) << ",," << format_double(sum_d / n) << '\n';
  return kExitOk;
}

int cmd_curves(const std::vector<double>& bs, int points, std::ostream& out) {
  rapp::write_curves_csv(out, bs, points);
  return kExitOk;
}

}  // namespace ranctl::harness
