#pragma once

// Quadrature integrals and extrema of nodal fields.

#include <algorithm>
#include <limits>
#include <span>

#include "gravdg/euler.hpp"
#include "gravdg/field.hpp"

namespace gravdg {

/// sum_cells volume * sum_nodes avg_w * fn(U), cells summed in index order.
template <int D, class Fn>
double integrate(const NodalField<D>& u, std::span<const double> avg_weights, double cell_volume, Fn&& fn) {
  double total = 0.0;
  for (int c = 0; c < u.n_cells; ++c) {
    double cell = 0.0;
    for (int a = 0; a < u.nodes_per_cell; ++a) cell += avg_weights[a] * fn(u.at(c, a));
    total += cell_volume * cell;
  }
  return total;
}

template <int D>
double total_mass(const NodalField<D>& u, std::span<const double> avg_weights, double cell_volume) {
  return integrate(u, avg_weights, cell_volume, [](const State<D>& s) { return s.q[0]; });
}

/// Total mathematical entropy; requires admissible nodes.
template <int D>
double total_entropy(const NodalField<D>& u, std::span<const double> avg_weights, double cell_volume,
                     const GasParams& gas) {
  return integrate(u, avg_weights, cell_volume, [&](const State<D>& s) { return entropy_unchecked(s, gas); });
}

struct Extrema {
  double min_rho = std::numeric_limits<double>::infinity();
  double min_p = std::numeric_limits<double>::infinity();
};

template <int D>
Extrema nodal_extrema(const NodalField<D>& u, const GasParams& gas) {
  Extrema e;
  for (const auto& s : u.values) {
    e.min_rho = std::min(e.min_rho, s.q[0]);
    e.min_p = std::min(e.min_p, pressure(s, gas));
  }
  return e;
}

}  // namespace gravdg
