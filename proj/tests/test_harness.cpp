#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "ranctl/error.hpp"
#include "ranctl/format.hpp"
#include "ranctl/harness/commands.hpp"
#include "ranctl/harness/f1_eval.hpp"
#include "ranctl/xapp/policy_table.hpp"
#include "ranctl/xapp/selector.hpp"

using namespace ranctl;
using namespace ranctl::harness;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("ranctl_test_" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

const char* kCell = R"(n_ues = 2
n_rbs = 10
window_ms = 10
bits_per_rb = 200
traffic = saturated
channel = lognormal
channel_sigma = 0.1
seed = 5
)";

std::string small_spec(const std::string& requirements, const std::string& extra = "") {
  return R"({"scenario": "small", "sim_config": "cell.conf", "beta_grid": [0.8, 0.9, 1.0],
    "q": 0.9, "delta_mbps": 0.05,
    "sweep": {"warmup_windows": 20, "windows": 60, "threads": 1},
    "run": {"seed": 9, "warmup_windows": 10, "episode_windows": 30},
    "loop": {"xapp_processing_ms": 1, "e2_delay_ms": 5},
    "requirements": )" + requirements + extra + "}";
}

ExperimentSpec prepared(const TempDir& dir, const std::string& reqs, const std::string& extra = "") {
  write(dir.path / "cell.conf", kCell);
  auto spec = parse_experiment(small_spec(reqs, extra), dir.path);
  spec.output_dir = dir.path / "out";
  std::ostringstream log;
  REQUIRE(cmd_sweep(spec, log) == kExitOk);
  REQUIRE(cmd_build(spec, log) == kExitOk);
  return spec;
}

}  // namespace

TEST_CASE("experiment spec parsing") {
  TempDir dir;
  write(dir.path / "cell.conf", kCell);
  const auto s = parse_experiment(small_spec(R"([{"mbps": [1.2, 0.4]}, {"window": 50, "mbps": [0.4, 1.2]}])"),
                                  dir.path);
  REQUIRE(s.requirements.size() == 2);
  CHECK(s.requirements[0].window == 10);
  CHECK(s.requirements[1].window == 50);
  CHECK(s.total_windows() == 80);
  CHECK(s.sim.n_ues == 2);
  CHECK(s.sim.sim_duration_ms == 800);
  CHECK(s.q == 0.9);
  CHECK(s.config_hash().size() == 16);

  auto other = s;
  other.beta_grid = {0.5, 1.0};
  CHECK(other.config_hash() != s.config_hash());
  auto reseeded = s;
  reseeded.sim.rng_seed = 77;
  CHECK(reseeded.config_hash() == s.config_hash());

  auto bad = [&](const std::string& reqs, const std::string& extra = "") {
    CHECK_THROWS_AS(parse_experiment(small_spec(reqs, extra), dir.path), ValidationError);
  };
  bad(R"([{"mbps": [1, 1, 1]}])");
  bad(R"([{"window": 30, "mbps": [1, 1]}, {"window": 30, "mbps": [1, 1]}])");
  bad(R"([{"mbps": [1, -1]}])");
  bad(R"([{"mbps": [1, 1], "framing": "cam1"}])");
  bad(R"([{"window": 0, "mbps": [1, 1]}])");
  bad(R"([])", R"(, "bogus": 1)");
  bad(R"([])", R"(, "q": 1.5)");
  CHECK_THROWS_AS(parse_experiment("{", dir.path), ValidationError);
  CHECK_THROWS_AS(parse_experiment(R"({"sim_config": "missing.conf", "beta_grid": [1]})", dir.path),
                  ValidationError);
}

TEST_CASE("camera requirements resolve through the rApp") {
  TempDir dir;
  write(dir.path / "cell.conf", std::string(kCell) + "");
  std::string cell4 = kCell;
  cell4.replace(cell4.find("n_ues = 2"), 9, "n_ues = 4");
  write(dir.path / "cell.conf", cell4);
  const auto s = parse_experiment(
      small_spec(R"([{"framing": "cam2"}])", R"(, "requirement_scale": 0.5)"), dir.path);
  const auto r = s.resolved_requirements();
  REQUIRE(r.size() == 1);
  CHECK(r[0].mbps == std::vector<double>{0.5, 1.0, 0.5, 0.0});
  CHECK_THROWS_AS(parse_experiment(small_spec(R"([{"framing": "cam7"}])"), dir.path), ValidationError);
}

TEST_CASE("sliding samples match a direct recount") {
  std::mt19937_64 rng(8);
  std::vector<std::vector<std::uint64_t>> bits(200, std::vector<std::uint64_t>(3));
  for (auto& row : bits)
    for (auto& b : row) b = rng() % 3000;
  const std::vector<double> req{1.0, 1.4, 0.9};
  const auto s = sliding_samples(bits, 10, 1.0, req, 3, 150);
  REQUIRE(s.size() == 141);  // first full window ends at TTI 10
  for (const auto& k : s) {
    const auto end = static_cast<std::size_t>(k.time_ms);
    bool ok = true;
    for (std::size_t u = 0; u < 3; ++u) {
      std::uint64_t total = 0;
      for (std::size_t t = end - 10; t < end; ++t) total += bits[t][u];
      ok = ok && double(total) / 10.0 / 1000.0 >= req[u];
    }
    CHECK(k.satisfied == ok);
  }
}

TEST_CASE("closed loop end to end") {
  TempDir dir;
  const auto spec = prepared(dir, R"([{"mbps": [1.0, 0.4]}, {"mbps": [0.4, 1.0]}, {"mbps": [0.7, 0.7]}])");
  std::ostringstream log;
  RunResult run;
  REQUIRE(cmd_run(spec, {}, log, &run) == kExitOk);
  REQUIRE(run.episodes.size() == 3);
  CHECK(run.throughput.rows() == 100);
  CHECK(run.baseline.rows() == 100);
  for (const auto& e : run.episodes) {
    REQUIRE(e.betas);
    CHECK(xapp::satisfies_equality_rule(e.requirement, *e.betas));
    CHECK(xapp::satisfies_ordering_rule(e.requirement, *e.betas));
    REQUIRE(e.kpis);
    CHECK(e.kpis->xapp_processing_ms == 1.0);
    CHECK(e.kpis->control_loop_ms == 6.0);
    CHECK(e.applied_at_ms == e.requirement_at_ms + 6.0);
    if (e.kpis->control_latency_ms) CHECK(*e.kpis->control_latency_ms >= e.kpis->control_loop_ms);
    CHECK(e.first_eval_window == e.start_window + 1);
  }
  CHECK(run.episodes[0].betas->at(0) < run.episodes[0].betas->at(1));
  CHECK(run.episodes[2].betas->at(0) == run.episodes[2].betas->at(1));
  CHECK(run.beta_history.size() == 4);

  SUBCASE("outputs are deterministic and eval agrees") {
    const auto first = spec.output_dir / "first";
    fs::create_directories(first);
    for (const char* f : {"throughput.csv", "episodes.csv", "beta_history.csv"}) {
      fs::copy_file(spec.output_dir / f, first / f);
    }
    REQUIRE(cmd_run(spec, {}, log) == kExitOk);
    for (const char* f : {"throughput.csv", "episodes.csv", "beta_history.csv"}) {
      std::ifstream a(first / f), b(spec.output_dir / f);
      std::stringstream sa, sb;
      sa << a.rdbuf();
      sb << b.rdbuf();
      CHECK(sa.str() == sb.str());
    }
    std::ostringstream table;
    REQUIRE(cmd_eval(spec.output_dir, table) == kExitOk);
    CHECK(table.str().find("mean,," + format_double(run.mean_p_success())) != std::string::npos);
  }

  SUBCASE("socket mode matches in-process mode") {
    RunResult sock;
    REQUIRE(cmd_run(spec, {false, LoopMode::kSocket}, log, &sock) == kExitOk);
    CHECK(sock.beta_history.size() == run.beta_history.size());
    for (std::size_t w = 0; w < run.throughput.rows(); ++w) {
      CHECK(sock.throughput.at(w, 0) == run.throughput.at(w, 0));
      CHECK(sock.throughput.at(w, 1) == run.throughput.at(w, 1));
    }
    REQUIRE(sock.wall);
    CHECK(sock.wall->control_loop_ms.size() == 3);
  }

  SUBCASE("forcing beta = 1 reproduces the baseline trace") {
    RunResult ones;
    REQUIRE(cmd_run(spec, {true, std::nullopt}, log, &ones) == kExitOk);
    for (std::size_t w = 0; w < ones.throughput.rows(); ++w) {
      CHECK(ones.throughput.at(w, 0) == ones.baseline.at(w, 0));
      CHECK(ones.throughput.at(w, 1) == ones.baseline.at(w, 1));
    }
    for (const auto& e : ones.episodes) CHECK(e.success.delta == 0.0);
  }
}

TEST_CASE("infeasible requirement keeps the previous betas") {
  TempDir dir;
  const auto spec = prepared(dir, R"([{"mbps": [1.0, 0.4]}, {"mbps": [5.0, 5.0]}])");
  std::ostringstream log;
  RunResult run;
  CHECK(cmd_run(spec, {}, log, &run) == kExitInfeasible);
  REQUIRE(run.episodes.size() == 2);
  CHECK(run.episodes[1].infeasible);
  CHECK_FALSE(run.episodes[1].kpis);
  CHECK(run.beta_history.size() == 2);
  CHECK(run.beta_history.back().betas == *run.episodes[0].betas);
  CHECK(log.str().find("infeasible") != std::string::npos);
}

TEST_CASE("stale policy table is refused") {
  TempDir dir;
  auto spec = prepared(dir, R"([{"mbps": [1.0, 0.4]}])");
  spec.sim.n_rbs_per_tti = 12;
  std::ostringstream log;
  CHECK_THROWS_WITH_AS(cmd_run(spec, {}, log), doctest::Contains("rebuild"), ValidationError);
}

TEST_CASE("cmd_eval when every window meets the requirement") {
  TempDir dir;
  const auto d = dir.path;
  write(d / "throughput.csv", "window,ue,value_mbps\n0,0,2\n0,1,2\n1,0,2\n1,1,2\n2,0,2\n2,1,2\n");
  write(d / "baseline_throughput.csv",
        "window,ue,value_mbps\n0,0,2\n0,1,2\n1,0,0.5\n1,1,2\n2,0,2\n2,1,0.1\n");
  write(d / "episodes.csv", "episode,start_window,end_window,first_eval_window,requirement\n0,0,3,0,1;1\n");
  std::ostringstream out;
  REQUIRE(cmd_eval(d, out) == kExitOk);
  const double base = 100.0 / 3.0;
  CHECK(out.str().find("0,1;1,100," + format_double(base) + "," + format_double(100.0 - base)) !=
        std::string::npos);
  write(d / "episodes.csv", "episode,start_window,end_window,first_eval_window,requirement\n0,0,9,0,1;1\n");
  CHECK_THROWS_AS(cmd_eval(d, out), ValidationError);
}

TEST_CASE("cmd_curves") {
  std::ostringstream out;
  const std::vector<double> bs{-1, -0.8, -0.6, -0.4, -0.2, 0.2, 0.4, 0.6, 0.8, 1};
  REQUIRE(cmd_curves(bs, 20, out) == kExitOk);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  int first = 0, last = 0;
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    std::string b, x, f1;
    std::getline(ss, b, ',');
    std::getline(ss, x, ',');
    std::getline(ss, f1, ',');
    if (std::stod(x) == 0.1) {
      CHECK(std::abs(std::stod(f1)) <= 1e-12);
      ++first;
    }
    if (std::stod(x) == 10.0) {
      CHECK(std::abs(std::stod(f1) - 0.95) <= 1e-12);
      ++last;
    }
  }
  CHECK(first == 10);
  CHECK(last == 10);
}
