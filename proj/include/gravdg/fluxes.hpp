#pragma once

// Two-point numerical fluxes: entropy-conservative volume flux, Lax-Friedrichs
// interface flux with a two-rarefaction wave-speed bound.

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gravdg/euler.hpp"

namespace gravdg {

/// Per-node quantities reused by every flux pair touching the node.
template <int D>
struct FluxNode {
  double rho = 0.0;
  double p = 0.0;
  double beta = 0.0;  ///< rho / (2p)
  double c = 0.0;     ///< sound speed
  double vel_sq = 0.0;
  double log_rho = 0.0;
  double log_beta = 0.0;
  std::array<double, D> vel{};
};

template <int D>
inline FluxNode<D> make_flux_node(const State<D>& u, const GasParams& g) {
  FluxNode<D> n;
  n.rho = u.q[0];
  const double inv_rho = 1.0 / n.rho;
  for (int d = 0; d < D; ++d) {
    n.vel[d] = u.q[1 + d] * inv_rho;
    n.vel_sq += n.vel[d] * n.vel[d];
  }
  n.p = pressure(u, g);
  n.beta = 0.5 * n.rho / n.p;
  n.c = std::sqrt(g.gamma * n.p * inv_rho);
  n.log_rho = std::log(n.rho);
  n.log_beta = std::log(n.beta);
  return n;
}

/// Physical flux along `axis` from the cached node quantities.
template <int D>
inline State<D> node_flux(const State<D>& u, const FluxNode<D>& n, int axis) {
  const double un = n.vel[axis];
  State<D> f;
  f.q[0] = u.q[1 + axis];
  for (int d = 0; d < D; ++d) f.q[1 + d] = u.q[1 + d] * un;
  f.q[1 + axis] += n.p;
  f.q[D + 1] = (u.q[D + 1] + n.p) * un;
  return f;
}

/// Entropy variables from the stored logs: s = (1 - gamma) log rho - log beta - log 2.
template <int D>
inline State<D> entropy_variables(const FluxNode<D>& n, double gamma) {
  const double s = (1.0 - gamma) * n.log_rho - n.log_beta - std::numbers::ln2;
  State<D> v;
  v.q[0] = (gamma - s) / (gamma - 1.0) - n.beta * n.vel_sq;
  for (int d = 0; d < D; ++d) v.q[1 + d] = 2.0 * n.beta * n.vel[d];
  v.q[D + 1] = -2.0 * n.beta;
  return v;
}

constexpr double kLogMeanSeriesThreshold = 1e-4;

/// Logarithmic mean from precomputed logs. Bitwise symmetric in its arguments.
inline double log_mean(double a, double b, double log_a, double log_b) {
  const double diff = a - b;
  const double sum = a + b;
  if (diff * diff < kLogMeanSeriesThreshold * (sum * sum)) {
    const double f = (diff / sum) * (diff / sum);
    return 0.5 * sum / (1.0 + f * (1.0 / 3.0 + f * (1.0 / 5.0 + f * (1.0 / 7.0))));
  }
  return diff / (log_a - log_b);
}

/// 1 / log_mean(a, b) from precomputed logs. Bitwise symmetric in its arguments.
inline double inverse_log_mean(double a, double b, double log_a, double log_b) {
  const double diff = a - b;
  const double sum = a + b;
  if (diff * diff < kLogMeanSeriesThreshold * (sum * sum)) {
    const double f = (diff / sum) * (diff / sum);
    return 2.0 * (1.0 + f * (1.0 / 3.0 + f * (1.0 / 5.0 + f * (1.0 / 7.0)))) / sum;
  }
  return (log_a - log_b) / diff;
}

/// (a - b)/(ln a - ln b), (a + a)/2 on the diagonal. Throws DomainError unless a, b > 0.
double log_mean(double a, double b);

/// Entropy-conservative flux along `axis`. Symmetric in (l, r) bitwise.
template <int D>
inline State<D> ec_flux(const FluxNode<D>& l, const FluxNode<D>& r, double gamma, int axis) {
  // The logarithmic means inline the series branches of log_mean / inverse_log_mean and share
  // one reciprocal of the two sums.
  const double rho_sum = l.rho + r.rho, rho_diff = l.rho - r.rho;
  const double beta_sum = l.beta + r.beta, beta_diff = l.beta - r.beta;
  const double inv = 1.0 / (rho_sum * beta_sum);
  const double inv_rho_sum = beta_sum * inv, inv_beta_sum = rho_sum * inv;
  double rho_ln, inv_beta_ln;
  if (rho_diff * rho_diff < kLogMeanSeriesThreshold * (rho_sum * rho_sum)) {
    const double t = rho_diff * inv_rho_sum, f = t * t;
    rho_ln = 0.5 * rho_sum / (1.0 + f * (1.0 / 3.0 + f * (1.0 / 5.0 + f * (1.0 / 7.0))));
  } else {
    rho_ln = rho_diff / (l.log_rho - r.log_rho);
  }
  if (beta_diff * beta_diff < kLogMeanSeriesThreshold * (beta_sum * beta_sum)) {
    const double t = beta_diff * inv_beta_sum, f = t * t;
    inv_beta_ln = 2.0 * (1.0 + f * (1.0 / 3.0 + f * (1.0 / 5.0 + f * (1.0 / 7.0)))) * inv_beta_sum;
  } else {
    inv_beta_ln = (l.log_beta - r.log_beta) / beta_diff;
  }
  std::array<double, D> vel_avg;
  for (int d = 0; d < D; ++d) vel_avg[d] = 0.5 * (l.vel[d] + r.vel[d]);
  const double vel_sq_avg = 0.5 * (l.vel_sq + r.vel_sq);
  State<D> f;
  const double mass = rho_ln * vel_avg[axis];
  f.q[0] = mass;
  for (int d = 0; d < D; ++d) f.q[1 + d] = vel_avg[d] * mass;
  f.q[1 + axis] += 0.5 * rho_sum * inv_beta_sum;
  double e = (inv_beta_ln * (0.5 / (gamma - 1.0)) - 0.5 * vel_sq_avg) * mass;
  for (int d = 0; d < D; ++d) e += vel_avg[d] * f.q[1 + d];
  f.q[D + 1] = e;
  return f;
}

/// Checked entry point on conserved states.
template <int D>
State<D> ec_flux(const State<D>& left, const State<D>& right, const GasParams& g, int axis) {
  if (axis < 0 || axis >= D) throw DomainError("axis index out of range");
  require_admissible(left, g);
  require_admissible(right, g);
  return ec_flux(make_flux_node(left, g), make_flux_node(right, g), g.gamma, axis);
}

constexpr double kVacuumThreshold = 1e-12;

/// Upper bound on the maximal wave speed of the Riemann problem (left, right) along `axis`.
template <int D>
inline double two_rarefaction_speed(const FluxNode<D>& l, const FluxNode<D>& r, double gamma,
                                    int axis) {
  const double cl = l.c;
  const double cr = r.c;
  const double ul = l.vel[axis];
  const double ur = r.vel[axis];
  if (l.rho < kVacuumThreshold || r.rho < kVacuumThreshold || l.p < kVacuumThreshold ||
      r.p < kVacuumThreshold)
    return 2.0 * std::max(std::abs(ul) + cl, std::abs(ur) + cr);
  const double z = (gamma - 1.0) / (2.0 * gamma);
  const double num = cl + cr - 0.5 * (gamma - 1.0) * (ur - ul);
  const double qc = (gamma + 1.0) / (2.0 * gamma);
  // (p_star / p)^z on each side, via the pressure ratio (p_hi / p_lo)^-z <= 1.
  double ql = 1.0, qr = 1.0;
  if (!(num > 0.0)) return std::max(std::abs(ul) + cl, std::abs(ur) + cr);
  const double dlog = (r.log_rho - r.log_beta) - (l.log_rho - l.log_beta);  // log(p_r / p_l)
  const double ratio = dlog == 0.0 ? 1.0 : std::exp(-z * std::abs(dlog));
  const double el_over_er = dlog >= 0.0 ? 1.0 / ratio : ratio;
  const double er_over_el = dlog >= 0.0 ? ratio : 1.0 / ratio;
  // t^(1/z) by repeated multiplication when 1/z = 2 gamma / (gamma - 1) is a small integer.
  const double inv_z = 2.0 * gamma / (gamma - 1.0);
  const bool small = inv_z <= 16.0;
  const double inv_z_int = small ? static_cast<double>(static_cast<int>(inv_z + 0.5)) : inv_z;
  const bool integer_power = small && std::abs(inv_z - inv_z_int) < 1e-12;
  auto shock_factor = [&](double t) {
    if (!(t > 1.0)) return 1.0;
    double tp;
    if (integer_power) {
      tp = t;
      for (int i = 1; i < static_cast<int>(inv_z_int); ++i) tp *= t;
    } else {
      tp = std::exp(std::log(t) / z);
    }
    return std::sqrt(1.0 + qc * (tp - 1.0));
  };
  ql = shock_factor(num / (cl + cr * er_over_el));
  qr = shock_factor(num / (cl * el_over_er + cr));
  return std::max(std::abs(ul) + cl * ql, std::abs(ur) + cr * qr);
}

template <int D>
double two_rarefaction_speed(const State<D>& left, const State<D>& right, const GasParams& g,
                             int axis) {
  if (axis < 0 || axis >= D) throw DomainError("axis index out of range");
  require_admissible(left, g);
  require_admissible(right, g);
  return two_rarefaction_speed(make_flux_node(left, g), make_flux_node(right, g), g.gamma, axis);
}

/// Lax-Friedrichs flux with alpha = max(|u|+c on both sides, two-rarefaction bound), given the
/// physical fluxes fl, fr along `axis`. `alpha_out` receives the dissipation coefficient used.
template <int D>
inline State<D> lf_flux(const State<D>& ul, const State<D>& ur, const State<D>& fl, const State<D>& fr,
                        const FluxNode<D>& nl, const FluxNode<D>& nr, double gamma, int axis,
                        double* alpha_out = nullptr) {
  const double sl = std::abs(nl.vel[axis]) + nl.c;
  const double sr = std::abs(nr.vel[axis]) + nr.c;
  const double alpha = std::max({sl, sr, two_rarefaction_speed(nl, nr, gamma, axis)});
  if (alpha_out) *alpha_out = alpha;
  State<D> f;
  for (int i = 0; i < State<D>::kSize; ++i)
    f.q[i] = 0.5 * (fl.q[i] + fr.q[i]) - 0.5 * alpha * (ur.q[i] - ul.q[i]);
  return f;
}

template <int D>
inline State<D> lf_flux(const State<D>& ul, const State<D>& ur, const FluxNode<D>& nl, const FluxNode<D>& nr,
                        double gamma, int axis, double* alpha_out = nullptr) {
  return lf_flux(ul, ur, node_flux(ul, nl, axis), node_flux(ur, nr, axis), nl, nr, gamma, axis, alpha_out);
}

template <int D>
State<D> lf_flux(const State<D>& left, const State<D>& right, const GasParams& g, int axis) {
  if (axis < 0 || axis >= D) throw DomainError("axis index out of range");
  require_admissible(left, g);
  require_admissible(right, g);
  return lf_flux(left, right, make_flux_node(left, g), make_flux_node(right, g), g.gamma, axis);
}

}  // namespace gravdg
