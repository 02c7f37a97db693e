#pragma once

#include <stdexcept>
#include <string>

#include "ctrees/util/config_file.hpp"

namespace ctrees::dal {

// Inner (per-branch) Newton settings.
struct NewtonConfig {
  int max_inner_iters = 100;
  double grad_tol = 1e-8;            // infinity norm of the Lagrangian gradient
  double backtrack_factor = 0.5;     // step shrink per line-search trial
  double sufficient_decrease = 1e-4; // Armijo coefficient
  double damping_floor = 1e-9;       // Levenberg diagonal added to the curvature

  void validate() const {
    if (max_inner_iters < 1) throw std::invalid_argument("newton: max_inner_iters >= 1");
    if (!(grad_tol > 0)) throw std::invalid_argument("newton: grad_tol > 0");
    if (!(backtrack_factor > 0 && backtrack_factor < 1)) {
      throw std::invalid_argument("newton: backtrack_factor in (0,1)");
    }
    if (!(sufficient_decrease > 0)) throw std::invalid_argument("newton: sufficient_decrease > 0");
    if (!(damping_floor > 0)) throw std::invalid_argument("newton: damping_floor > 0");
  }
};

struct SolverConfig {
  // Fixed penalty constants of the augmented terms.
  double mu = 100.0;  // inequality penalty
  double nu = 100.0;  // equality penalty
  double rho = 5.0;   // consensus penalty

  // Termination thresholds (infinity norms, problem units).
  double eps_pri = 1e-3;
  double eps_dual = 1e-3;
  double xi_pri = 1e-3;
  double xi_dual = 1e-3;

  int max_outer_iters = 100;
  NewtonConfig newton;

  // Literal reading of the inequality activation: penalize row i only while
  // g_i > 0, ignoring positive multipliers. Off by default; kept for study.
  bool literal_indicator = false;

  // Experimental probability-weighted consensus average. Off by default:
  // the published update is the unweighted mean.
  bool weighted_consensus = false;

  // Cost weight floor for (near-)zero-probability branches, keeping their
  // Newton systems well conditioned. Constraints are never weighted.
  double weight_floor = 1e-6;

  void validate() const {
    if (!(mu > 0 && nu > 0 && rho > 0)) throw std::invalid_argument("solver: penalties > 0");
    if (!(eps_pri > 0 && eps_dual > 0 && xi_pri > 0 && xi_dual > 0)) {
      throw std::invalid_argument("solver: thresholds > 0");
    }
    if (max_outer_iters < 1) throw std::invalid_argument("solver: max_outer_iters >= 1");
    newton.validate();
  }

  // Reads keys (optionally under a "solver." prefix handled by the caller
  // via `prefix`): mu, nu, rho, eps_pri, eps_dual, xi_pri, xi_dual,
  // max_outer_iters, literal_indicator, weighted_consensus, weight_floor,
  // newton_max_iters, newton_grad_tol. Unset keys keep the values in `base`
  // (defaults when no base is given).
  static SolverConfig from_config(const ConfigFile& cfg, const std::string& prefix,
                                  SolverConfig base);
  static SolverConfig from_config(const ConfigFile& cfg, const std::string& prefix = "");
  static SolverConfig from_file(const std::string& path, const std::string& prefix,
                                SolverConfig base);
  static SolverConfig from_file(const std::string& path, const std::string& prefix = "");
};

}  // namespace ctrees::dal
