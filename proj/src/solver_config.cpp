#include "ctrees/solver/config.hpp"

namespace ctrees::dal {

SolverConfig SolverConfig::from_config(const ConfigFile& cfg, const std::string& prefix,
                                       SolverConfig base) {
  SolverConfig out = base;
  const auto key = [&prefix](const char* k) { return prefix + k; };
  out.mu = cfg.get_double(key("mu"), out.mu);
  out.nu = cfg.get_double(key("nu"), out.nu);
  out.rho = cfg.get_double(key("rho"), out.rho);
  out.eps_pri = cfg.get_double(key("eps_pri"), out.eps_pri);
  out.eps_dual = cfg.get_double(key("eps_dual"), out.eps_dual);
  out.xi_pri = cfg.get_double(key("xi_pri"), out.xi_pri);
  out.xi_dual = cfg.get_double(key("xi_dual"), out.xi_dual);
  out.max_outer_iters = static_cast<int>(cfg.get_int(key("max_outer_iters"), out.max_outer_iters));
  out.literal_indicator = cfg.get_bool(key("literal_indicator"), out.literal_indicator);
  out.weighted_consensus = cfg.get_bool(key("weighted_consensus"), out.weighted_consensus);
  out.weight_floor = cfg.get_double(key("weight_floor"), out.weight_floor);
  out.newton.max_inner_iters =
      static_cast<int>(cfg.get_int(key("newton_max_iters"), out.newton.max_inner_iters));
  out.newton.grad_tol = cfg.get_double(key("newton_grad_tol"), out.newton.grad_tol);
  out.validate();
  return out;
}

SolverConfig SolverConfig::from_config(const ConfigFile& cfg, const std::string& prefix) {
  return from_config(cfg, prefix, SolverConfig{});
}

SolverConfig SolverConfig::from_file(const std::string& path, const std::string& prefix,
                                     SolverConfig base) {
  return from_config(ConfigFile::parse_file(path), prefix, base);
}

SolverConfig SolverConfig::from_file(const std::string& path, const std::string& prefix) {
  return from_file(path, prefix, SolverConfig{});
}

}  // namespace ctrees::dal
