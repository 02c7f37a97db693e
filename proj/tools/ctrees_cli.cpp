// Command-line front end: single-scene planning, closed-loop episodes,
// batch experiments, and the solver scalability benchmark. Data CSVs are
// byte-reproducible for identical run specs; wall-time measurements go to
// *_timing.csv sidecars.

#include <omp.h>

#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ctrees/acc/joint.hpp"
#include "ctrees/acc/planner.hpp"
#include "ctrees/sim/episode.hpp"
#include "ctrees/slalom/planner.hpp"
#include "ctrees/util/csv.hpp"

namespace fs = std::filesystem;
using namespace ctrees;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitSolve = 2;

struct CommonOpts {
  std::string config;
  std::string out = ".";
  long seed = -1;  // -1 = keep the config's seed
  int workers = 1;
  std::string controller = "tree";
};

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
}

// ---------------------------------------------------------------- plan ----

int cmd_plan(const CommonOpts& opt) {
  const ConfigFile cfg = ConfigFile::parse_file(opt.config);
  const std::string kind = cfg.get_string("kind", "pedestrian-acc");
  const HorizonSpec horizon(static_cast<int>(cfg.get_int("trunk_steps", 4)),
                            static_cast<int>(cfg.get_int("total_steps", 20)),
                            cfg.get_double("dt", 0.25));
  dal::SolverConfig solver_base;
  if (kind == "slalom") solver_base = slalom::default_solver_config();
  const dal::SolverConfig solver = dal::SolverConfig::from_config(cfg, "solver.", solver_base);
  const int cap = static_cast<int>(cfg.get_int("cap", 0));

  std::ostringstream tree_csv;
  std::ostringstream report_csv;
  std::ostringstream timing_csv;
  dal::SolveReport report;

  if (kind == "pedestrian-acc") {
    acc::CarState car{cfg.get_double("x", 0.0), cfg.get_double("v", 13.4)};
    acc::AccCostParams params;
    params.k_v = cfg.get_double("k_v", params.k_v);
    params.k_u = cfg.get_double("k_u", params.k_u);
    params.v_desired = cfg.get_double("v_desired", params.v_desired);
    params.d_safety = cfg.get_double("d_safety", params.d_safety);
    params.u_min = cfg.get_double("u_min", params.u_min);
    params.u_max = cfg.get_double("u_max", params.u_max);

    std::vector<acc::PedestrianObs> peds;
    int id = 0;
    for (const std::string& sec : cfg.sections_with_prefix("pedestrian")) {
      acc::PedestrianObs p;
      p.id = id++;
      p.position = cfg.get_double(sec + ".position");
      p.crossing_prob = cfg.get_double(sec + ".prob");
      peds.push_back(p);
    }
    std::sort(peds.begin(), peds.end(),
              [](const auto& a, const auto& b) { return a.position < b.position; });

    const acc::AccPlan plan =
        acc::plan_acc(car, peds, params, horizon, solver, opt.workers, cap);
    report = plan.report;
    acc::write_tree_csv(tree_csv, plan.tree, car);
  } else if (kind == "slalom") {
    const slalom::Pose2 q0(cfg.get_double("x", 0.0), cfg.get_double("y", 0.0),
                           cfg.get_double("theta", 0.0));
    slalom::SlalomCostParams params;
    params.w_acc = cfg.get_double("w_acc", params.w_acc);
    params.w_center = cfg.get_double("w_center", params.w_center);
    params.w_speed = cfg.get_double("w_speed", params.w_speed);
    params.v_desired = cfg.get_double("v_desired", params.v_desired);
    params.d_avoid = cfg.get_double("d_avoid", params.d_avoid);
    const double v0 = cfg.get_double("v", params.v_desired);
    const slalom::Pose2 q_prev(q0.x - v0 * horizon.dt * std::cos(q0.theta),
                               q0.y - v0 * horizon.dt * std::sin(q0.theta), q0.theta);

    std::vector<slalom::ObstacleHyp> obstacles;
    int id = 0;
    for (const std::string& sec : cfg.sections_with_prefix("obstacle")) {
      slalom::ObstacleHyp o;
      o.id = id++;
      o.cx = cfg.get_double(sec + ".x");
      o.cy = cfg.get_double(sec + ".y");
      o.radius = cfg.get_double(sec + ".radius", 1.0);
      o.existence_prob = cfg.get_double(sec + ".prob");
      obstacles.push_back(o);
    }

    const slalom::SlalomPlan plan =
        slalom::plan_slalom(q0, q_prev, obstacles, params, horizon, solver, opt.workers);
    report = plan.report;
    slalom::write_tree_csv(tree_csv, plan.tree);
  } else {
    throw std::runtime_error("plan: unknown scene kind '" + kind + "'");
  }

  report.write_csv(report_csv, false);
  {
    std::ostringstream t;
    report.write_csv(t, true);
    timing_csv << t.str();
  }

  fs::create_directories(opt.out);
  write_text(fs::path(opt.out) / "tree.csv", tree_csv.str());
  write_text(fs::path(opt.out) / "report.csv", report_csv.str());
  write_text(fs::path(opt.out) / "report_timing.csv", timing_csv.str());
  std::cout << "plan: " << report.iterations << " iterations, "
            << (report.converged ? "converged" : "NOT converged") << "\n";
  return report.converged ? 0 : kExitSolve;
}

// ------------------------------------------------------------- episode ----

void metrics_row(CsvWriter& csv, long seed, const std::string& controller,
                 const std::string& cell, const sim::EpisodeMetrics& m) {
  csv.add_row(CsvWriter::Row()
                  .integer(seed)
                  .str(controller)
                  .str(cell)
                  .num(m.avg_cost)
                  .num(m.avg_speed)
                  .integer(m.violation_count)
                  .integer(m.collision_count)
                  .integer(m.solver_failures)
                  .integer(m.cycles)
                  .take());
}

std::vector<std::string> metrics_header() {
  return {"seed",          "controller",      "cell",
          "avg_cost[cost/step]", "avg_speed[m/s]",  "violations[count]",
          "collisions[count]",   "failures[count]", "cycles[count]"};
}

int cmd_episode(const CommonOpts& opt, bool with_trace) {
  sim::ScenarioConfig cfg = sim::ScenarioConfig::from_file(opt.config);
  if (opt.seed >= 0) cfg.seed = static_cast<std::uint64_t>(opt.seed);
  const sim::ControllerSpec ctrl = sim::ControllerSpec::parse(opt.controller);

  sim::EpisodeTrace trace;
  const sim::EpisodeMetrics m =
      sim::run_episode(cfg, ctrl, opt.workers, with_trace ? &trace : nullptr);

  CsvWriter csv(metrics_header());
  metrics_row(csv, static_cast<long>(cfg.seed), ctrl.name(), "-", m);
  CsvWriter timing({"seed", "controller", "mean_plan[ms]", "p95_plan[ms]"});
  timing.add_row(CsvWriter::Row()
                     .integer(static_cast<long>(cfg.seed))
                     .str(ctrl.name())
                     .num(m.mean_plan_ms)
                     .num(m.p95_plan_ms)
                     .take());

  fs::create_directories(opt.out);
  csv.write_file((fs::path(opt.out) / "metrics.csv").string());
  timing.write_file((fs::path(opt.out) / "metrics_timing.csv").string());
  if (with_trace) {
    CsvWriter tcsv(trace.header);
    for (const auto& row : trace.rows) {
      CsvWriter::Row r;
      for (double x : row) r.num(x);
      tcsv.add_row(r.take());
    }
    tcsv.write_file((fs::path(opt.out) / "trace.csv").string());
  }
  std::cout << "episode: avg_cost " << m.avg_cost << ", avg_speed " << m.avg_speed
            << ", collisions " << m.collision_count << ", violations "
            << m.violation_count << " (nonconv " << m.nonconverged_cycles << ", soft "
            << m.soft_stop_cycles << ", overshoot " << m.overshoot_count
            << "), failures " << m.solver_failures << "\n";
  return m.solver_failures == 0 ? 0 : kExitSolve;
}

// --------------------------------------------------------------- batch ----

// Merges the base config with one [cell.N] section's overrides.
sim::ScenarioConfig cell_config(const ConfigFile& base, const std::string& cell) {
  std::ostringstream text;
  for (const auto& [key, value] : base.entries()) {
    if (key.rfind("cell.", 0) == 0) continue;
    if (key == "seeds" || key == "controllers") continue;
    text << key << " = " << value << "\n";
  }
  if (!cell.empty()) {
    for (const auto& [key, value] : base.entries()) {
      if (key.rfind(cell + ".", 0) != 0) continue;
      text << key.substr(cell.size() + 1) << " = " << value << "\n";
    }
  }
  return sim::ScenarioConfig::from_config(ConfigFile::parse_string(text.str()));
}

int cmd_batch(const CommonOpts& opt) {
  const ConfigFile base = ConfigFile::parse_file(opt.config);
  const long n_seeds = base.get_int("seeds", 20);
  std::vector<std::string> controllers = base.get_list("controllers");
  if (controllers.empty()) throw std::runtime_error("batch: controllers list required");
  std::vector<std::string> cells = base.sections_with_prefix("cell");
  if (cells.empty()) cells.push_back("");

  struct Job {
    std::string cell;
    std::string controller;
    long seed;
  };
  std::vector<Job> jobs;
  for (const auto& cell : cells) {
    for (const auto& c : controllers) {
      for (long s = 1; s <= n_seeds; ++s) jobs.push_back({cell, c, s});
    }
  }

  std::vector<sim::EpisodeMetrics> results(jobs.size());
  std::vector<std::string> errors(jobs.size());
  // Episodes run concurrently; the solver inside each runs single-threaded.
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, opt.workers))
  for (size_t j = 0; j < jobs.size(); ++j) {
    try {
      sim::ScenarioConfig cfg = cell_config(base, jobs[j].cell);
      cfg.seed = static_cast<std::uint64_t>(jobs[j].seed);
      results[j] =
          sim::run_episode(cfg, sim::ControllerSpec::parse(jobs[j].controller), 1);
    } catch (const std::exception& e) {
      errors[j] = e.what();
    }
  }

  CsvWriter csv(metrics_header());
  CsvWriter timing({"seed", "controller", "cell", "mean_plan[ms]", "p95_plan[ms]"});
  CsvWriter errs({"seed", "controller", "cell", "error"});
  long n_errors = 0;
  for (size_t j = 0; j < jobs.size(); ++j) {
    const std::string cell = jobs[j].cell.empty() ? "-" : jobs[j].cell;
    if (!errors[j].empty()) {
      ++n_errors;
      errs.add_row(CsvWriter::Row()
                       .integer(jobs[j].seed)
                       .str(jobs[j].controller)
                       .str(cell)
                       .str(errors[j])
                       .take());
      continue;
    }
    metrics_row(csv, jobs[j].seed, jobs[j].controller, cell, results[j]);
    timing.add_row(CsvWriter::Row()
                       .integer(jobs[j].seed)
                       .str(jobs[j].controller)
                       .str(cell)
                       .num(results[j].mean_plan_ms)
                       .num(results[j].p95_plan_ms)
                       .take());
  }

  // Aggregate means per (cell, controller), in job order.
  CsvWriter summary({"cell", "controller", "seeds[count]", "mean_avg_cost[cost/step]",
                     "mean_avg_speed[m/s]", "violations[count]", "collisions[count]"});
  for (const auto& cell : cells) {
    for (const auto& c : controllers) {
      double cost = 0.0, speed = 0.0;
      long viol = 0, coll = 0, n = 0;
      for (size_t j = 0; j < jobs.size(); ++j) {
        if (jobs[j].cell != cell || jobs[j].controller != c || !errors[j].empty()) continue;
        cost += results[j].avg_cost;
        speed += results[j].avg_speed;
        viol += results[j].violation_count;
        coll += results[j].collision_count;
        ++n;
      }
      if (n == 0) continue;
      summary.add_row(CsvWriter::Row()
                          .str(cell.empty() ? "-" : cell)
                          .str(c)
                          .integer(n)
                          .num(cost / n)
                          .num(speed / n)
                          .integer(viol)
                          .integer(coll)
                          .take());
    }
  }

  fs::create_directories(opt.out);
  csv.write_file((fs::path(opt.out) / "batch.csv").string());
  summary.write_file((fs::path(opt.out) / "summary.csv").string());
  timing.write_file((fs::path(opt.out) / "batch_timing.csv").string());
  if (n_errors > 0) errs.write_file((fs::path(opt.out) / "batch_errors.csv").string());
  std::cout << "batch: " << jobs.size() - n_errors << "/" << jobs.size()
            << " episodes ok\n";
  return n_errors == 0 ? 0 : kExitSolve;
}

// --------------------------------------------------------- scale-bench ----

struct ScaleRow {
  int branches;
  double decomposed_ms;
  double decomposed_per_iter_ms;
  int decomposed_iters;
  double undecomposed_ms;
  double trunk_diff;
};

ScaleRow bench_one(int N, int reps, int workers, const dal::SolverConfig& solver) {
  const HorizonSpec horizon(4, 20, 0.25);
  acc::AccCostParams params;
  const acc::CarState car{0.0, params.v_desired};

  std::vector<std::shared_ptr<const QuadraticBranch>> qps;
  std::vector<std::shared_ptr<const BranchProblem>> branches;
  const double w = 1.0 / N;
  for (int s = 0; s < N; ++s) {
    std::optional<double> stop;
    if (s + 1 < N) stop = 40.0 + 6.0 * s;  // the last branch is the free road
    auto cb = acc::condense_branch(car, params, stop, horizon, w);
    qps.push_back(cb.qp);
    branches.push_back(cb.qp);
  }
  TreeProblem problem = build_tree_problem(std::move(branches), horizon, 1);

  using Clock = std::chrono::steady_clock;
  ScaleRow row{};
  row.branches = N;

  dal::SolveResult dec;
  double dec_ms = 0.0;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = Clock::now();
    dec = dal::solve(problem, dal::zero_branch_init(problem), dal::zero_trunk_init(problem),
                     solver, workers);
    dec_ms += std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  }
  row.decomposed_ms = dec_ms / reps;
  row.decomposed_iters = dec.report.iterations;
  row.decomposed_per_iter_ms = row.decomposed_ms / std::max(1, dec.report.iterations);

  // Undecomposed baseline: the identical problem as one joint KKT system.
  const acc::JointQp joint = acc::assemble_joint_qp(qps, horizon, 1);
  const int nw = joint.qp->num_vars();
  TreeProblem joint_problem = build_tree_problem({joint.qp}, HorizonSpec(1, nw, horizon.dt), 1);
  const auto t0 = Clock::now();
  const auto undec =
      dal::solve(joint_problem, dal::zero_branch_init(joint_problem),
                 dal::zero_trunk_init(joint_problem), solver, 1);
  row.undecomposed_ms =
      std::chrono::duration<double, std::milli>(Clock::now() - t0).count();

  row.trunk_diff = (undec.tree.branch_vars[0].head(joint.trunk_size) -
                    dec.tree.consensus)
                       .lpNorm<Eigen::Infinity>();
  return row;
}

int cmd_scale_bench(const CommonOpts& opt, const std::string& branches_arg, int reps) {
  std::vector<int> Ns;
  {
    std::istringstream in(branches_arg);
    std::string tok;
    while (std::getline(in, tok, ',')) {
      if (!tok.empty()) Ns.push_back(std::stoi(tok));
    }
  }
  if (Ns.empty()) throw std::runtime_error("scale-bench: empty branch list");
  for (int n : Ns) {
    if (n < 1) throw std::runtime_error("scale-bench: branch counts must be >= 1");
  }

  dal::SolverConfig solver;
  if (!opt.config.empty()) solver = dal::SolverConfig::from_file(opt.config, "solver.");

  CsvWriter csv({"branches", "reps", "decomposed[ms]", "decomposed_per_iter[ms]",
                 "decomposed_iters", "undecomposed[ms]", "trunk_diff[m/s2]"});
  for (int N : Ns) {
    const ScaleRow row = bench_one(N, reps, opt.workers, solver);
    csv.add_row(CsvWriter::Row()
                    .integer(row.branches)
                    .integer(reps)
                    .num(row.decomposed_ms)
                    .num(row.decomposed_per_iter_ms)
                    .integer(row.decomposed_iters)
                    .num(row.undecomposed_ms)
                    .num(row.trunk_diff)
                    .take());
    std::cout << "N=" << N << ": decomposed " << row.decomposed_ms << " ms ("
              << row.decomposed_per_iter_ms << " ms/iter), undecomposed "
              << row.undecomposed_ms << " ms, trunk diff " << row.trunk_diff << "\n";
  }
  fs::create_directories(opt.out);
  csv.write_file((fs::path(opt.out) / "scale.csv").string());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"control-tree MPC: planning, closed-loop simulation, benchmarks"};
  app.require_subcommand(1);

  CommonOpts opt;
  bool with_trace = false;
  std::string branches_arg = "2,5,10,25,50,100";
  int reps = 5;

  auto add_common = [&](CLI::App* sub, bool need_config) {
    auto* c = sub->add_option("--config", opt.config, "config / scene file");
    if (need_config) c->required();
    sub->add_option("--out", opt.out, "output directory");
    sub->add_option("--seed", opt.seed, "seed override");
    sub->add_option("--workers", opt.workers, "worker threads")
        ->check(CLI::PositiveNumber);
    sub->add_option("--controller", opt.controller,
                    "tree | tree-N | single | oracle");
  };

  CLI::App* plan = app.add_subcommand("plan", "plan one scene, dump the tree");
  add_common(plan, true);
  CLI::App* episode = app.add_subcommand("episode", "closed-loop episode");
  add_common(episode, true);
  episode->add_flag("--trace", with_trace, "write per-cycle trace.csv");
  CLI::App* batch = app.add_subcommand("batch", "seeds x controllers x cells grid");
  add_common(batch, true);
  CLI::App* bench = app.add_subcommand("scale-bench", "decomposed vs joint solve times");
  add_common(bench, false);
  bench->add_option("--branches", branches_arg, "comma-separated branch counts");
  bench->add_option("--reps", reps, "repetitions per size")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : kExitUsage;
  }

  try {
    if (plan->parsed()) return cmd_plan(opt);
    if (episode->parsed()) return cmd_episode(opt, with_trace);
    if (batch->parsed()) return cmd_batch(opt);
    if (bench->parsed()) return cmd_scale_bench(opt, branches_arg, reps);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolve;
  }
  return kExitUsage;
}
