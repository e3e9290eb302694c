#include "ranctl/xapp/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <sstream>
#include <thread>

#include "ranctl/error.hpp"
#include "ranctl/format.hpp"
#include "ranctl/ransim/simulator.hpp"

namespace ranctl::xapp {

namespace {

std::string describe(const BetaVector& b) { return "(" + join_doubles(b, ',') + ")"; }

}  // namespace

SweepError::SweepError(BetaVector betas, const std::string& what)
    : std::runtime_error("sweep failed at beta " + describe(betas) + ": " + what),
      betas_(std::move(betas)) {}

SampleMatrix simulate_windows(const ransim::SimConfig& base, const BetaVector& betas,
                              std::int64_t warmup_windows, std::int64_t windows) {
  ransim::SimConfig cfg = base;
  cfg.initial_betas = betas;
  cfg.sim_duration_ms = static_cast<double>(warmup_windows + windows) * cfg.measurement_window_ms;
  ransim::Simulator sim(std::move(cfg));

  SampleMatrix out(sim.config().n_ues);
  const std::int64_t total_ttis = sim.config().total_ttis();
  std::vector<double> row(sim.config().n_ues);
  for (std::int64_t t = 0; t < total_ttis; ++t) {
    sim.step_tti();
    const std::int64_t done = sim.completed_windows();
    if (sim.tti_index() % sim.config().ttis_per_window() == 0 && done > warmup_windows) {
      for (const auto& s : sim.measure_window(done - 1)) row[s.ue] = s.value_mbps;
      out.append_row(row);
    }
  }
  return out;
}

SweepDataset run_sweep(const BetaGrid& grid, const ransim::SimConfig& base,
                       const SweepOptions& options) {
  base.validate();
  if (options.windows < 1 || options.warmup_windows < 0) {
    throw ValidationError("sweep needs windows >= 1 and warmup_windows >= 0");
  }
  SweepDataset data;
  data.grid = grid.values();
  data.n_ues = base.n_ues;
  data.window_ms = base.measurement_window_ms;

  const auto vectors = grid.enumerate(base.n_ues);
  data.entries.resize(vectors.size());
  std::vector<std::exception_ptr> errors(vectors.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < vectors.size(); i = next++) {
      try {
        data.entries[i] = {vectors[i], simulate_windows(base, vectors[i], options.warmup_windows,
                                                        options.windows)};
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  unsigned n_threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  n_threads = std::max(1u, std::min<unsigned>(n_threads, static_cast<unsigned>(vectors.size())));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const std::exception& e) {
      throw SweepError(vectors[i], e.what());
    }
  }
  return data;
}

void write_sweep_csv(std::ostream& out, const SweepDataset& data) {
  out << "beta_vec,window,ue,throughput\n";
  for (const auto& e : data.entries) {
    const std::string key = join_doubles(e.betas, ';');
    for (std::size_t w = 0; w < e.samples.rows(); ++w) {
      for (std::size_t u = 0; u < e.samples.cols(); ++u) {
        out << key << ',' << w << ',' << u << ',' << format_double(e.samples.at(w, u)) << '\n';
      }
    }
  }
}

SweepDataset read_sweep_csv(std::istream& in, double window_ms) {
  std::string line;
  if (!std::getline(in, line) || line != "beta_vec,window,ue,throughput") {
    throw ValidationError("sweep csv: expected header 'beta_vec,window,ue,throughput'");
  }
  struct Rows {
    BetaVector betas;
    std::map<std::size_t, std::map<std::size_t, double>> cells;
  };
  std::vector<Rows> groups;
  std::map<std::string, std::size_t> index;
  std::size_t max_ue = 0;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (f.size() != 4) throw ValidationError("sweep csv line " + std::to_string(line_no) + ": expected 4 fields");
    auto [it, fresh] = index.emplace(f[0], groups.size());
    if (fresh) {
      Rows g;
      std::stringstream bs(f[0]);
      for (std::string b; std::getline(bs, b, ';');) g.betas.push_back(std::stod(b));
      groups.push_back(std::move(g));
    }
    const auto w = static_cast<std::size_t>(std::stoull(f[1]));
    const auto u = static_cast<std::size_t>(std::stoull(f[2]));
    max_ue = std::max(max_ue, u);
    groups[it->second].cells[w][u] = std::stod(f[3]);
  }

  SweepDataset data;
  data.window_ms = window_ms;
  data.n_ues = groups.empty() ? 0 : max_ue + 1;
  std::vector<double> grid;
  for (auto& g : groups) {
    if (g.betas.size() != data.n_ues) throw ValidationError("sweep csv: beta vector length != UE count");
    grid.insert(grid.end(), g.betas.begin(), g.betas.end());
    SampleMatrix m(data.n_ues);
    std::vector<double> row(data.n_ues);
    for (auto& [w, cells] : g.cells) {
      if (cells.size() != data.n_ues) {
        throw ValidationError("sweep csv: window " + std::to_string(w) + " misses a UE");
      }
      for (auto& [u, v] : cells) row[u] = v;
      m.append_row(row);
    }
    data.entries.push_back({g.betas, std::move(m)});
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  data.grid = grid;
  return data;
}

}  // namespace ranctl::xapp
