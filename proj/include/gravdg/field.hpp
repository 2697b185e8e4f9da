#pragma once

// Nodal fields: (k+1)^Dim Gauss-Lobatto node values per cell, stored cell-major.
// In 2D the node index within a cell is j1*(k+1) + i1.

#include <span>
#include <vector>

#include "gravdg/euler.hpp"

namespace gravdg {

template <int Dim>
struct NodalField {
  int k = 0;
  int n_cells = 0;
  int nodes_per_cell = 0;
  std::vector<State<Dim>> values;

  NodalField() = default;
  NodalField(int n_cells_, int k_)
      : k(k_), n_cells(n_cells_), nodes_per_cell(Dim == 1 ? k_ + 1 : (k_ + 1) * (k_ + 1)),
        values(static_cast<size_t>(n_cells_) * nodes_per_cell) {}

  State<Dim>& at(int cell, int node) { return values[static_cast<size_t>(cell) * nodes_per_cell + node]; }
  const State<Dim>& at(int cell, int node) const {
    return values[static_cast<size_t>(cell) * nodes_per_cell + node];
  }
  std::span<State<Dim>> cell(int c) {
    return {values.data() + static_cast<size_t>(c) * nodes_per_cell, static_cast<size_t>(nodes_per_cell)};
  }
  std::span<const State<Dim>> cell(int c) const {
    return {values.data() + static_cast<size_t>(c) * nodes_per_cell, static_cast<size_t>(nodes_per_cell)};
  }
  size_t size() const { return values.size(); }
  bool same_shape(const NodalField& o) const { return k == o.k && n_cells == o.n_cells; }
};

/// y += a x
template <int D>
void axpy(double a, const NodalField<D>& x, NodalField<D>& y) {
  const size_t n = x.values.size();
  for (size_t i = 0; i < n; ++i)
    for (int c = 0; c < State<D>::kSize; ++c) y.values[i].q[c] += a * x.values[i].q[c];
}

/// z = a x + b y
template <int D>
void lincomb(double a, const NodalField<D>& x, double b, const NodalField<D>& y, NodalField<D>& z) {
  const size_t n = x.values.size();
  for (size_t i = 0; i < n; ++i)
    for (int c = 0; c < State<D>::kSize; ++c)
      z.values[i].q[c] = a * x.values[i].q[c] + b * y.values[i].q[c];
}

}  // namespace gravdg
