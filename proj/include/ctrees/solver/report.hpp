#pragma once

#include <ostream>
#include <vector>

namespace ctrees::dal {

// Residuals and bookkeeping for one outer iteration. The four residuals are
// infinity norms; wall times are measurements and are excluded from any
// determinism guarantee.
struct IterationStats {
  double aula_pri = 0.0;   // worst constraint violation: max(pos(g), |h|)
  double aula_dual = 0.0;  // max branch-variable move
  double admm_pri = 0.0;   // worst trunk disagreement with the consensus
  double admm_dual = 0.0;  // consensus move
  double phase1_ms = 0.0;
  double phase2_ms = 0.0;
  long newton_iters = 0;   // inner iterations summed over branches
  long cost_evals = 0;     // Lagrangian evaluations summed over branches
};

struct SolveReport {
  int iterations = 0;
  bool converged = false;
  std::vector<IterationStats> history;
  double phase1_ms_total = 0.0;
  double phase2_ms_total = 0.0;
  long newton_iters_total = 0;
  long cost_evals_total = 0;

  // CSV rows (iteration, four residuals[, phase wall-times]). Timing columns
  // are optional so callers can keep their data files byte-reproducible.
  void write_csv(std::ostream& out, bool include_times = false) const;
};

}  // namespace ctrees::dal
