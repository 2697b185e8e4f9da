#pragma once

// Flux-differencing kernels along one line of k+1 nodes (a 1D cell, or a row or
// column of a 2D cell). Results are added to `out` with the given node stride.

#include "gravdg/fluxes.hpp"
#include "gravdg/sbp.hpp"

namespace gravdg {

/// out[a] += scale * sum_b 2 D_ab F^S(U_a, U_b). Pairs are evaluated once and used twice;
/// the diagonal uses the physical flux of `u[a]` along `axis`. N > 0 fixes the node count.
template <int D, int N>
inline void split_line_n(const FluxNode<D>* nodes, const State<D>* u, int stride, const LobattoOperators& ops,
                         double scale, double gamma, int axis, State<D>* out) {
  constexpr int kN = N > 0 ? N : kMaxDegree + 1;
  const int n = N > 0 ? N : ops.size();
  State<D> acc[kN];
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      const State<D> fs = ec_flux(nodes[a * stride], nodes[b * stride], gamma, axis);
      const double dab = 2.0 * ops.diff(a, b);
      const double dba = 2.0 * ops.diff(b, a);
      for (int c = 0; c < State<D>::kSize; ++c) {
        acc[a].q[c] += dab * fs.q[c];
        acc[b].q[c] += dba * fs.q[c];
      }
    }
    const State<D> f = node_flux(u[a * stride], nodes[a * stride], axis);
    const double daa = 2.0 * ops.diff(a, a);
    for (int c = 0; c < State<D>::kSize; ++c) out[a * stride].q[c] += scale * (acc[a].q[c] + daa * f.q[c]);
  }
}

template <int D>
inline void split_line(const FluxNode<D>* nodes, const State<D>* u, int stride, const LobattoOperators& ops,
                       double scale, double gamma, int axis, State<D>* out) {
  switch (ops.size()) {
    case 2: return split_line_n<D, 2>(nodes, u, stride, ops, scale, gamma, axis, out);
    case 3: return split_line_n<D, 3>(nodes, u, stride, ops, scale, gamma, axis, out);
    case 4: return split_line_n<D, 4>(nodes, u, stride, ops, scale, gamma, axis, out);
    default: return split_line_n<D, 0>(nodes, u, stride, ops, scale, gamma, axis, out);
  }
}

/// out[a] += scale * sum_b D_ab F(U_b), F given per node.
template <int D>
inline void nonsplit_line(const State<D>* flux, int stride, const LobattoOperators& ops, double scale,
                          State<D>* out) {
  const int n = ops.size();
  for (int a = 0; a < n; ++a) {
    State<D> acc;
    const double* row = ops.diff.row(a);
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < State<D>::kSize; ++c) acc.q[c] += row[b] * flux[b * stride].q[c];
    for (int c = 0; c < State<D>::kSize; ++c) out[a * stride].q[c] += scale * acc.q[c];
  }
}

}  // namespace gravdg
