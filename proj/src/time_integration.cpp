#include "gravdg/time_integration.hpp"

#include <cmath>

#include "gravdg/errors.hpp"

namespace gravdg {

std::string to_string(RKMethod m) { return m == RKMethod::kForwardEuler ? "euler" : "ssprk104"; }

RKMethod parse_method(const std::string& s) {
  if (s == "euler") return RKMethod::kForwardEuler;
  if (s == "ssprk104") return RKMethod::kSSPRK104;
  throw ConfigError("unknown time integrator '" + s + "' (euler, ssprk104)");
}

double ssp_coefficient(RKMethod m) { return m == RKMethod::kForwardEuler ? 1.0 : 6.0; }

template <int D>
void rk_step(NodalField<D>& u, double t, double dt, RKMethod method, const RhsFunction<D>& rhs,
             const StageLimiter<D>& limiter, StepWorkspace<D>& ws, const StageObserver<D>& observe) {
  int stage = 0;
  auto eval = [&](const NodalField<D>& q, double tq) {
    ++stage;
    if (observe) observe(q, tq);
    try {
      rhs(q, tq, ws.k);
    } catch (EvaluationError& e) {
      e.stage = stage;
      throw;
    }
  };
  auto limit = [&](NodalField<D>& q) {
    if (!limiter) return;
    try {
      limiter(q);
    } catch (EvaluationError& e) {
      e.stage = stage;
      throw;
    }
  };

  if (method == RKMethod::kForwardEuler) {
    eval(u, t);
    axpy(dt, ws.k, u);
    limit(u);
    return;
  }

  // Low-storage SSPRK(10,4); the time is carried as a scalar state with rate 1.
  const double h = dt / 6.0;
  ws.u0 = u;
  ws.q1 = u;
  double t1 = t;
  for (int s = 0; s < 5; ++s) {
    eval(ws.q1, t1);
    axpy(h, ws.k, ws.q1);
    t1 += h;
    limit(ws.q1);
  }
  ws.q2 = ws.u0;
  lincomb(1.0 / 25.0, ws.u0, 9.0 / 25.0, ws.q1, ws.q2);
  lincomb(3.0 / 5.0, ws.u0, 2.0 / 5.0, ws.q1, ws.q1);
  t1 = 3.0 / 5.0 * t + 2.0 / 5.0 * t1;
  limit(ws.q1);
  for (int s = 0; s < 4; ++s) {
    eval(ws.q1, t1);
    axpy(h, ws.k, ws.q1);
    t1 += h;
    limit(ws.q1);
  }
  eval(ws.q1, t1);
  const size_t n = u.values.size();
  for (size_t i = 0; i < n; ++i)
    for (int c = 0; c < State<D>::kSize; ++c)
      u.values[i].q[c] = ws.q2.values[i].q[c] + 3.0 / 5.0 * ws.q1.values[i].q[c] + dt / 10.0 * ws.k.values[i].q[c];
  limit(u);
}

template <int D>
StepChoice choose_dt(const StepController& ctl, double t, const std::array<double, D>& alpha,
                     const std::array<double, D>& spacing, double pp_bound) {
  if (!(ctl.cfl > 0.0)) throw ControllerError("CFL number must be positive");
  double rate = 0.0;
  for (int d = 0; d < D; ++d) rate += alpha[d] / spacing[d];
  if (!(rate > 0.0) || !std::isfinite(rate)) throw ControllerError("non-positive or non-finite wave speed");
  StepChoice ch;
  ch.dt = ctl.cfl / rate;
  ch.pp_bound = pp_bound;
  const double c = ssp_coefficient(ctl.method);
  // Equality is admissible up to rounding; the k=2, CFL 0.5 setting sits exactly on the bound.
  if (ch.dt / c > pp_bound * (1.0 + 1e-12)) {
    if (ctl.strict_pp)
      ch.dt = c * pp_bound;
    else
      ch.pp_bound_violated = true;
  }
  const double remaining = ctl.final_time - t;
  if (ch.dt >= remaining) ch.dt = remaining;
  if (!(ch.dt > 0.0) || !std::isfinite(ch.dt)) throw ControllerError("non-positive or non-finite time step");
  return ch;
}

template <int D>
std::array<double, D> max_nodal_speeds(const NodalField<D>& u, double gamma) {
  std::array<double, D> a{};
  const GasParams g{gamma};
  for (const auto& s : u.values) {
    const double c = sound_speed(s, g);
    for (int d = 0; d < D; ++d) a[d] = std::max(a[d], std::abs(s.q[1 + d] / s.q[0]) + c);
  }
  return a;
}

template void rk_step<1>(NodalField<1>&, double, double, RKMethod, const RhsFunction<1>&,
                         const StageLimiter<1>&, StepWorkspace<1>&, const StageObserver<1>&);
template void rk_step<2>(NodalField<2>&, double, double, RKMethod, const RhsFunction<2>&,
                         const StageLimiter<2>&, StepWorkspace<2>&, const StageObserver<2>&);
template StepChoice choose_dt<1>(const StepController&, double, const std::array<double, 1>&,
                                 const std::array<double, 1>&, double);
template StepChoice choose_dt<2>(const StepController&, double, const std::array<double, 2>&,
                                 const std::array<double, 2>&, double);
template std::array<double, 1> max_nodal_speeds<1>(const NodalField<1>&, double);
template std::array<double, 2> max_nodal_speeds<2>(const NodalField<2>&, double);

}  // namespace gravdg
