// Compares the serial reference path (workers=1) against the OpenMP path on
// synthetic N-branch pedestrian trees and checks that both produce identical
// iterates. Smoke sizes by default; pass larger counts for real timing.

#include <omp.h>

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <vector>

#include "ctrees/acc/planner.hpp"
#include "ctrees/solver/solve.hpp"

using namespace ctrees;
using Clock = std::chrono::steady_clock;

namespace {

TreeProblem make_tree(int N, const HorizonSpec& horizon) {
  acc::AccCostParams params;
  const acc::CarState car{0.0, params.v_desired};
  std::vector<std::shared_ptr<const BranchProblem>> branches;
  const double w = 1.0 / N;
  for (int s = 0; s < N; ++s) {
    std::optional<double> stop;
    if (s + 1 < N) stop = 40.0 + 6.0 * s;
    branches.push_back(acc::condense_branch(car, params, stop, horizon, w).qp);
  }
  return build_tree_problem(std::move(branches), horizon, 1);
}

double run_once(const TreeProblem& problem, const dal::SolverConfig& cfg, int workers,
                dal::SolveResult* out) {
  const auto t0 = Clock::now();
  auto result = dal::solve(problem, dal::zero_branch_init(problem),
                           dal::zero_trunk_init(problem), cfg, workers);
  const double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  if (out) *out = std::move(result);
  return ms;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> sizes = {2, 8, 32};
  if (argc > 1) {
    sizes.clear();
    for (int i = 1; i < argc; ++i) sizes.push_back(std::atoi(argv[i]));
  }
  const HorizonSpec horizon(4, 20, 0.25);
  dal::SolverConfig cfg;
  const int threads = omp_get_max_threads();

  std::cout << "branches,serial[ms],parallel[ms](threads=" << threads
            << "),speedup,identical\n";
  bool all_identical = true;
  for (int N : sizes) {
    const TreeProblem problem = make_tree(N, horizon);
    dal::SolveResult serial, parallel;
    const double t_serial = run_once(problem, cfg, 1, &serial);
    const double t_parallel = run_once(problem, cfg, threads, &parallel);

    bool identical = (serial.tree.consensus - parallel.tree.consensus).norm() == 0.0;
    for (int s = 0; s < N && identical; ++s) {
      identical = (serial.tree.branch_vars[s] - parallel.tree.branch_vars[s]).norm() == 0.0;
    }
    all_identical = all_identical && identical;
    std::cout << N << "," << t_serial << "," << t_parallel << ","
              << (t_parallel > 0 ? t_serial / t_parallel : 0.0) << ","
              << (identical ? "yes" : "NO") << "\n";
  }
  return all_identical ? 0 : 1;
}
