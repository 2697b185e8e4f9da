#include "gravdg/sbp.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gravdg/errors.hpp"

namespace gravdg {

void legendre(int n, double x, double& p, double& dp) {
  if (n == 0) {
    p = 1.0;
    dp = 0.0;
    return;
  }
  double p0 = 1.0, p1 = x;
  double d0 = 0.0, d1 = 1.0;
  for (int m = 2; m <= n; ++m) {
    const double p2 = ((2.0 * m - 1.0) * x * p1 - (m - 1.0) * p0) / m;
    const double d2 = d0 + (2.0 * m - 1.0) * p1;
    p0 = p1;
    p1 = p2;
    d0 = d1;
    d1 = d2;
  }
  p = p1;
  dp = d1;
}

namespace {

// Interior roots of P_k' by Newton on q(x) = (1 - x^2) P_k'(x), q'(x) = -k(k+1) P_k(x).
double lobatto_root(int k, double x) {
  for (int it = 0; it < 100; ++it) {
    double p, dp;
    legendre(k, x, p, dp);
    const double dx = (1.0 - x * x) * dp / (k * (k + 1.0) * p);
    x += dx;
    if (std::abs(dx) < 1e-16) break;
  }
  return x;
}

}  // namespace

LobattoOperators build_operators(int k) {
  if (k < 1 || k > kMaxDegree)
    throw ConfigError("polynomial degree k must lie in [1, " + std::to_string(kMaxDegree) +
                      "], got " + std::to_string(k));
  LobattoOperators ops;
  ops.k = k;
  const int n = k + 1;
  ops.nodes.assign(n, 0.0);
  ops.weights.assign(n, 0.0);

  // Left half computed, right half mirrored so symmetry holds bitwise.
  for (int l = 0; l <= k / 2; ++l) {
    double x = -1.0;
    if (l > 0) x = lobatto_root(k, -std::cos(std::numbers::pi * l / k));
    if (2 * l == k) x = 0.0;
    double p, dp;
    legendre(k, x, p, dp);
    const double w = 2.0 / (k * (k + 1.0) * p * p);
    ops.nodes[l] = x;
    ops.nodes[k - l] = -x;
    ops.weights[l] = w;
    ops.weights[k - l] = w;
  }
  ops.nodes[0] = -1.0;
  ops.nodes[k] = 1.0;

  // Barycentric differentiation with negative-sum diagonal.
  std::vector<double> bw(n, 1.0);
  for (int j = 0; j < n; ++j)
    for (int m = 0; m < n; ++m)
      if (m != j) bw[j] /= (ops.nodes[j] - ops.nodes[m]);
  ops.diff = DenseMatrix(n, n);
  for (int i = 0; i < n; ++i) {
    double diag = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double v = (bw[j] / bw[i]) / (ops.nodes[i] - ops.nodes[j]);
      ops.diff(i, j) = v;
      diag -= v;
    }
    ops.diff(i, i) = diag;
  }

  ops.stiffness = DenseMatrix(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) ops.stiffness(i, j) = ops.weights[i] * ops.diff(i, j);

  ops.boundary.assign(n, 0.0);
  ops.boundary[0] = -1.0;
  ops.boundary[k] = 1.0;
  return ops;
}

std::vector<double> lagrange_basis(const LobattoOperators& ops, double X) {
  const int n = ops.size();
  std::vector<double> out(n, 1.0);
  for (int l = 0; l < n; ++l)
    for (int m = 0; m < n; ++m)
      if (m != l) out[l] *= (X - ops.nodes[m]) / (ops.nodes[l] - ops.nodes[m]);
  return out;
}

}  // namespace gravdg
