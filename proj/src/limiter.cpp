#include "gravdg/limiter.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gravdg/errors.hpp"

namespace gravdg {

std::vector<double> average_weights(const LobattoOperators& ops, int dim) {
  const int n = ops.size();
  std::vector<double> w;
  if (dim == 1) {
    for (int i = 0; i < n; ++i) w.push_back(0.5 * ops.weights[i]);
  } else {
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) w.push_back(0.25 * ops.weights[i] * ops.weights[j]);
  }
  return w;
}

template <int D>
State<D> cell_average(std::span<const State<D>> nodes, std::span<const double> avg_weights) {
  State<D> avg;
  for (size_t a = 0; a < nodes.size(); ++a)
    for (int c = 0; c < State<D>::kSize; ++c) avg.q[c] += avg_weights[a] * nodes[a].q[c];
  return avg;
}

namespace {

template <int D>
State<D> along(const State<D>& avg, const State<D>& target, double t) {
  State<D> s;
  for (int c = 0; c < State<D>::kSize; ++c) s.q[c] = avg.q[c] + t * (target.q[c] - avg.q[c]);
  return s;
}

template <int D>
bool floor_ok(const State<D>& s, double eps, const GasParams& gas) {
  return s.q[0] > 0.0 && pressure(s, gas) >= eps;
}

// Largest t in [lo, hi] with floor_ok, assuming floor_ok(lo).
template <int D>
double bisect(const State<D>& avg, const State<D>& target, double eps, const GasParams& gas, double lo,
              double hi) {
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (floor_ok(along(avg, target, mid), eps, gas))
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

}  // namespace

template <int D>
double pressure_crossing(const State<D>& avg, const State<D>& target, double epsilon, const GasParams& gas) {
  const double gm1 = gas.gamma - 1.0;
  State<D> d = target - avg;
  double am2 = 0.0, dm2 = 0.0, amdm = 0.0;
  for (int k = 1; k <= D; ++k) {
    am2 += avg.q[k] * avg.q[k];
    dm2 += d.q[k] * d.q[k];
    amdm += avg.q[k] * d.q[k];
  }
  const double a0 = avg.q[0], d0 = d.q[0], aE = avg.q[D + 1], dE = d.q[D + 1];
  // g(t) = rho(t) (p(t) - epsilon) = A t^2 + B t + C
  const double A = gm1 * (dE * d0 - 0.5 * dm2);
  const double B = gm1 * (aE * d0 + dE * a0 - amdm) - epsilon * d0;
  const double C = gm1 * (aE * a0 - 0.5 * am2) - epsilon * a0;

  double t = -1.0;
  if (std::abs(A) >= 1e-14) {
    const double disc = std::sqrt(std::max(B * B - 4.0 * A * C, 0.0));
    const double q = -0.5 * (B + std::copysign(disc, B));
    const double r1 = q / A;
    const double r2 = q != 0.0 ? C / q : r1;
    for (double r : {r1, r2})
      if (r >= 0.0 && r <= 1.0 && (t < 0.0 || r < t)) t = r;
  } else if (B < 0.0) {
    t = std::clamp(-C / B, 0.0, 1.0);
  }
  if (t < 0.0) return bisect(avg, target, epsilon, gas, 0.0, 1.0);
  if (floor_ok(along(avg, target, t), epsilon, gas)) return t;
  // Rounding put the root just past the floor; refine from below.
  return bisect(avg, target, epsilon, gas, 0.0, t);
}

template <int D>
LimiterReport limit_cell(std::span<State<D>> nodes, std::span<const double> avg_weights,
                         const LimiterParams& params, const GasParams& gas) {
  const double eps = params.epsilon;
  // Admissible nodes imply an admissible average.
  if (std::all_of(nodes.begin(), nodes.end(),
                  [&](const State<D>& s) { return s.q[0] >= eps && pressure(s, gas) >= eps; }))
    return LimiterReport{};
  const State<D> avg = cell_average<D>(nodes, avg_weights);
  if (!(avg.q[0] > 0.0)) throw DomainError("cell average has non-positive density " + describe(avg));
  const double pavg = pressure(avg, gas);
  if (!(pavg > 0.0)) throw DomainError("cell average has non-positive pressure " + describe(avg));

  LimiterReport rep;
  double rho_min = nodes[0].q[0];
  for (const auto& s : nodes) rho_min = std::min(rho_min, s.q[0]);
  if (rho_min < eps) {
    rep.theta_density = avg.q[0] > eps ? std::clamp((avg.q[0] - eps) / (avg.q[0] - rho_min), 0.0, 1.0) : 0.0;
  }

  if (rho_min >= eps &&
      std::all_of(nodes.begin(), nodes.end(), [&](const State<D>& s) { return pressure(s, gas) >= eps; }))
    return rep;

  constexpr int kMaxNodes = (kMaxDegree + 1) * (kMaxDegree + 1);
  State<D> tilde[kMaxNodes];
  for (size_t a = 0; a < nodes.size(); ++a) {
    tilde[a] = nodes[a];
    if (rep.theta_density < 1.0) tilde[a].q[0] = avg.q[0] + rep.theta_density * (nodes[a].q[0] - avg.q[0]);
  }
  for (size_t a = 0; a < nodes.size(); ++a) {
    if (tilde[a].q[0] > 0.0 && pressure(tilde[a], gas) >= eps) continue;
    const double t = pavg > eps ? pressure_crossing(avg, tilde[a], eps, gas) : 0.0;
    rep.theta_pressure = std::min(rep.theta_pressure, t);
  }

  if (rep.theta_density == 1.0 && rep.theta_pressure == 1.0) return rep;
  rep.modified = true;
  for (size_t a = 0; a < nodes.size(); ++a) nodes[a] = along(avg, tilde[a], rep.theta_pressure);
  return rep;
}

template <int D>
FieldLimitReport limit_field(NodalField<D>& field, std::span<const double> avg_weights,
                             const LimiterParams& params, const GasParams& gas) {
  FieldLimitReport rep;
  for (int c = 0; c < field.n_cells; ++c) {
    try {
      if (limit_cell<D>(field.cell(c), avg_weights, params, gas).modified) ++rep.cells_modified;
    } catch (const DomainError& e) {
      throw EvaluationError(std::string("limiter at cell ") + std::to_string(c) + ": " + e.what(), c, -1);
    }
  }
  return rep;
}

template <int D>
double source_time_bound(const State<D>& u, const State<D>& theta, const std::type_identity_t<std::array<double, D>>& grad_phi,
                         const GasParams& gas) {
  const double gm1 = gas.gamma - 1.0;
  const double rho = u.q[0];
  const double p = pressure(u, gas);
  double m2 = 0.0, m_dot_g = 0.0, u_dot_theta = 0.0, a_num = 0.0;
  for (int d = 0; d < D; ++d) {
    const double m = u.q[1 + d];
    m2 += m * m;
    m_dot_g += m * grad_phi[d];
    u_dot_theta += m / rho * theta.q[1 + d];
    const double w = theta.q[1 + d] - rho * grad_phi[d];
    a_num += w * w;
  }
  const double kt = gm1 * m2 / (gm1 * m2 + rho * p);
  const double K = 0.5 * (1.0 + kt);
  const double A = a_num / (2.0 * K * rho);
  const double B = theta.q[D + 1] - m_dot_g - (u_dot_theta - m_dot_g) / K;
  const double C = p / gm1 - (1.0 - K) * m2 / (2.0 * K * rho);

  // Positive root of -A T^2 + B T + C with T = 2 dt.
  double root;
  if (A > 0.0) {
    const double disc = std::sqrt(B * B + 4.0 * A * C);
    root = B >= 0.0 ? (B + disc) / (2.0 * A) : 2.0 * C / (disc - B);
  } else {
    root = B >= 0.0 ? std::numeric_limits<double>::infinity() : C / -B;
  }
  if (theta.q[0] != 0.0) return 0.5 * std::min(root, (1.0 - K) * rho / std::abs(theta.q[0]));
  return 0.5 * root;
}

PPTimeBound pp_timestep_bound(const NodalField<1>& u, const std::vector<State<1>>& theta,
                              const std::vector<std::array<double, 1>>& grad_phi, const LobattoOperators& ops,
                              double dx, double alpha, const GasParams& gas) {
  PPTimeBound b;
  b.convective = alpha > 0.0 ? ops.weights[0] * dx / (4.0 * alpha) : std::numeric_limits<double>::infinity();
  const State<1> zero;
  for (size_t i = 0; i < u.size(); ++i)
    b.source = std::min(b.source, source_time_bound<1>(u.values[i], theta.empty() ? zero : theta[i], grad_phi[i], gas));
  return b;
}

PPTimeBound pp_timestep_bound(const NodalField<2>& u, const std::vector<State<2>>& theta,
                              const std::vector<std::array<double, 2>>& grad_phi, const LobattoOperators& ops,
                              double dx, double dy, std::array<double, 2> alpha, const GasParams& gas) {
  PPTimeBound b;
  const double inf = std::numeric_limits<double>::infinity();
  const double cx = alpha[0] > 0.0 ? ops.weights[0] * dx / (8.0 * alpha[0]) : inf;
  const double cy = alpha[1] > 0.0 ? ops.weights[0] * dy / (8.0 * alpha[1]) : inf;
  b.convective = std::min(cx, cy);
  const State<2> zero;
  for (size_t i = 0; i < u.size(); ++i)
    b.source = std::min(b.source, source_time_bound<2>(u.values[i], theta.empty() ? zero : theta[i], grad_phi[i], gas));
  return b;
}

template State<1> cell_average<1>(std::span<const State<1>>, std::span<const double>);
template State<2> cell_average<2>(std::span<const State<2>>, std::span<const double>);
template double pressure_crossing<1>(const State<1>&, const State<1>&, double, const GasParams&);
template double pressure_crossing<2>(const State<2>&, const State<2>&, double, const GasParams&);
template LimiterReport limit_cell<1>(std::span<State<1>>, std::span<const double>, const LimiterParams&,
                                     const GasParams&);
template LimiterReport limit_cell<2>(std::span<State<2>>, std::span<const double>, const LimiterParams&,
                                     const GasParams&);
template FieldLimitReport limit_field<1>(NodalField<1>&, std::span<const double>, const LimiterParams&,
                                         const GasParams&);
template FieldLimitReport limit_field<2>(NodalField<2>&, std::span<const double>, const LimiterParams&,
                                         const GasParams&);
template double source_time_bound<1>(const State<1>&, const State<1>&, const std::array<double, 1>&,
                                     const GasParams&);
template double source_time_bound<2>(const State<2>&, const State<2>&, const std::array<double, 2>&,
                                     const GasParams&);

}  // namespace gravdg
