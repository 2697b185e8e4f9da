#include "gravdg/harness/norms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "gravdg/errors.hpp"

namespace gravdg::harness {

ErrorNorms norms_of(std::span<const double> err, int nodes_per_cell, std::span<const double> avg_weights,
                    double cell_volume) {
  ErrorNorms n;
  const size_t cells = err.size() / nodes_per_cell;
  for (size_t c = 0; c < cells; ++c) {
    double l1 = 0.0, l2 = 0.0;
    for (int a = 0; a < nodes_per_cell; ++a) {
      const double e = err[c * nodes_per_cell + a];
      l1 += avg_weights[a] * std::abs(e);
      l2 += avg_weights[a] * e * e;
      n.linf = std::max(n.linf, std::abs(e));
    }
    n.l1 += cell_volume * l1;
    n.l2 += cell_volume * l2;
  }
  n.l2 = std::sqrt(n.l2);
  return n;
}

std::optional<double> convergence_order(double coarse, double fine) {
  if (!(coarse >= kOrderFloor) || !(fine >= kOrderFloor)) return std::nullopt;
  return std::log2(coarse / fine);
}

ErrorReport make_report(std::vector<int> meshes, std::vector<ErrorNorms> errors) {
  ErrorReport r;
  r.meshes = std::move(meshes);
  r.errors = std::move(errors);
  const size_t n = r.meshes.size();
  r.order_l1.assign(n, std::nullopt);
  r.order_l2.assign(n, std::nullopt);
  r.order_linf.assign(n, std::nullopt);
  for (size_t i = 1; i < n; ++i) {
    if (r.meshes[i] != 2 * r.meshes[i - 1]) continue;
    r.order_l1[i] = convergence_order(r.errors[i - 1].l1, r.errors[i].l1);
    r.order_l2[i] = convergence_order(r.errors[i - 1].l2, r.errors[i].l2);
    r.order_linf[i] = convergence_order(r.errors[i - 1].linf, r.errors[i].linf);
  }
  return r;
}

namespace {

std::string order_text(const std::optional<double>& o, bool table) {
  if (!o) return table ? "--" : "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", *o);
  return buf;
}

}  // namespace

std::string format_report(const ErrorReport& rep) {
  std::ostringstream os;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%6s %11s %6s %11s %6s %11s %6s\n", "N", "L1", "order", "L2", "order", "Linf",
                "order");
  os << buf;
  for (size_t i = 0; i < rep.meshes.size(); ++i) {
    const auto& e = rep.errors[i];
    std::snprintf(buf, sizeof buf, "%6d %11.2e %6s %11.2e %6s %11.2e %6s\n", rep.meshes[i], e.l1,
                  order_text(rep.order_l1[i], true).c_str(), e.l2, order_text(rep.order_l2[i], true).c_str(),
                  e.linf, order_text(rep.order_linf[i], true).c_str());
    os << buf;
  }
  return os.str();
}

std::string report_csv(const ErrorReport& rep) {
  std::ostringstream os;
  os << "N,L1,order_L1,L2,order_L2,Linf,order_Linf\n";
  char buf[200];
  for (size_t i = 0; i < rep.meshes.size(); ++i) {
    const auto& e = rep.errors[i];
    std::snprintf(buf, sizeof buf, "%d,%.17g,%s,%.17g,%s,%.17g,%s\n", rep.meshes[i], e.l1,
                  order_text(rep.order_l1[i], false).c_str(), e.l2, order_text(rep.order_l2[i], false).c_str(),
                  e.linf, order_text(rep.order_linf[i], false).c_str());
    os << buf;
  }
  return os.str();
}

NodalField<1> restrict_field(const NodalField<1>& fine, const Mesh1D& fine_mesh, const LobattoOperators& fine_ops,
                             const Mesh1D& coarse_mesh, const LobattoOperators& coarse_ops) {
  if (fine.n_cells != fine_mesh.n_cells || fine.k != fine_ops.k) throw DomainError("fine field does not match its mesh");
  NodalField<1> out(coarse_mesh.n_cells, coarse_ops.k);
  for (int c = 0; c < coarse_mesh.n_cells; ++c) {
    const double mid = coarse_mesh.center(c);
    for (int a = 0; a < coarse_ops.size(); ++a) {
      const double x = coarse_mesh.node_x(c, coarse_ops.nodes[a]);
      // Nudge toward the coarse center so nodes on shared faces pick a fine cell inside this coarse cell.
      const double xs = x + 1e-9 * (mid - x);
      const int f = std::clamp(static_cast<int>(std::floor((xs - fine_mesh.a) / fine_mesh.dx)), 0,
                               fine_mesh.n_cells - 1);
      const double X = 2.0 * (x - fine_mesh.center(f)) / fine_mesh.dx;
      const std::vector<double> basis = lagrange_basis(fine_ops, X);
      State<1> s;
      for (int b = 0; b < fine_ops.size(); ++b) s += basis[b] * fine.at(f, b);
      out.at(c, a) = s;
    }
  }
  return out;
}

}  // namespace gravdg::harness
