#pragma once

// Error norms, observed orders, and fine-to-coarse restriction.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gravdg/field.hpp"
#include "gravdg/mesh.hpp"
#include "gravdg/sbp.hpp"

namespace gravdg::harness {

struct ErrorNorms {
  double l1 = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
};

/// Norms of per-node errors: L1 = sum vol * avg_w * |e|, L2 likewise with squares, Linf = max |e|.
ErrorNorms norms_of(std::span<const double> err, int nodes_per_cell, std::span<const double> avg_weights,
                    double cell_volume);

/// Norms of component `var` of u - ref. Throws DomainError on a mesh mismatch.
template <int D>
ErrorNorms error_norms(const NodalField<D>& u, const NodalField<D>& ref, int var,
                       std::span<const double> avg_weights, double cell_volume) {
  if (!u.same_shape(ref)) throw DomainError("error norms: fields live on different meshes");
  std::vector<double> err(u.size());
  for (size_t i = 0; i < u.size(); ++i) err[i] = u.values[i].q[var] - ref.values[i].q[var];
  return norms_of(err, u.nodes_per_cell, avg_weights, cell_volume);
}

constexpr double kOrderFloor = 1e-13;

/// log2(coarse / fine); empty when either error is below the machine floor.
std::optional<double> convergence_order(double coarse, double fine);

struct ErrorReport {
  std::vector<int> meshes;
  std::vector<ErrorNorms> errors;
  /// Order between meshes[i-1] and meshes[i]; entry 0 always empty.
  std::vector<std::optional<double>> order_l1, order_l2, order_linf;
};

/// Fills observed orders between consecutive meshes related by 2:1 refinement.
ErrorReport make_report(std::vector<int> meshes, std::vector<ErrorNorms> errors);

/// Table in the `N  L1  order  L2  order  Linf  order` layout, "--" for undefined orders.
std::string format_report(const ErrorReport& rep);

/// CSV form: `N,L1,order_L1,L2,order_L2,Linf,order_Linf` with empty undefined orders.
std::string report_csv(const ErrorReport& rep);

/// Evaluates the fine field at every coarse node by in-cell Lagrange interpolation.
NodalField<1> restrict_field(const NodalField<1>& fine, const Mesh1D& fine_mesh, const LobattoOperators& fine_ops,
                             const Mesh1D& coarse_mesh, const LobattoOperators& coarse_ops);

}  // namespace gravdg::harness
