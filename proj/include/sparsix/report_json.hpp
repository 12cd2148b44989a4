#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "sparsix/diagnostics.hpp"
#include "sparsix/errors.hpp"

namespace sparsix {

namespace detail {

template <class T>
nlohmann::json opt_json(const std::optional<T>& v) {
  if (v) return *v;
  return nullptr;
}

}  // namespace detail

/// Stable flat JSON schema for a Report. Not-applicable fields are null.
inline nlohmann::json report_to_json(const Report& rep) {
  nlohmann::json j;
  j["m"] = rep.m;
  j["n"] = rep.n;
  j["rank"] = rep.rank;
  j["kappa_a"] = detail::opt_json(rep.kappa_a);
  j["nnz_a"] = rep.nnz_a;
  j["nnz_x"] = rep.nnz_x;
  j["density_x"] = rep.density_x;
  j["j_min"] = rep.j_min;
  j["cond_x"] = detail::opt_json(rep.cond_x);
  j["cond_pinva_x"] = detail::opt_json(rep.cond_pinva_x);
  j["cond_x_pinva"] = detail::opt_json(rep.cond_x_pinva);
  j["cluster_radius"] = rep.cluster_radius;
  j["max_eig_distance"] = rep.max_eig_distance;
  j["clustering_ok"] = rep.clustering_ok;
  j["cond_bound"] = detail::opt_json(rep.cond_bound);
  j["cond_bound_ok"] = detail::opt_json(rep.cond_bound_ok);
  j["apriori_lhs"] = detail::opt_json(rep.apriori_lhs);
  j["apriori_rhs"] = detail::opt_json(rep.apriori_rhs);
  j["apriori_bound_ok"] = detail::opt_json(rep.apriori_bound_ok);
  j["misfit_bound"] = detail::opt_json(rep.misfit_bound);
  j["misfit_bound_ok"] = detail::opt_json(rep.misfit_bound_ok);
  j["rel_inv_diff"] = detail::opt_json(rep.rel_inv_diff);
  j["subspace_residuals"] = rep.subspace_residuals;
  return j;
}

inline void write_report(const Report& rep, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open " + path + " for writing");
  out << report_to_json(rep).dump(2) << "\n";
  if (!out) throw io_error("write failed for " + path);
}

}  // namespace sparsix
