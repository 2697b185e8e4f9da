#pragma once

// Explicit SSP Runge-Kutta stepping with a stage limiter, and time-step control.

#include <array>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

#include "gravdg/field.hpp"

namespace gravdg {

enum class RKMethod { kForwardEuler, kSSPRK104 };

std::string to_string(RKMethod m);
RKMethod parse_method(const std::string& s);

/// Largest forward-Euler substep as a fraction of dt is dt/ssp_coefficient.
double ssp_coefficient(RKMethod m);

template <int D>
using RhsFunction = std::function<void(const NodalField<D>&, double, NodalField<D>&)>;

/// Applied after every stage; may be empty.
template <int D>
using StageLimiter = std::function<void(NodalField<D>&)>;

/// Called with every field the rhs is evaluated on, before evaluation (may be empty).
template <int D>
using StageObserver = std::function<void(const NodalField<D>&, double)>;

template <int D>
struct StepWorkspace {
  NodalField<D> u0, q1, q2, k;
};

/// Advances `u` from t to t + dt. EvaluationErrors from the rhs or limiter are rethrown
/// with the stage number (1-based) filled in.
template <int D>
void rk_step(NodalField<D>& u, double t, double dt, RKMethod method, const RhsFunction<D>& rhs,
             const StageLimiter<D>& limiter, StepWorkspace<D>& ws, const StageObserver<D>& observe = {});

class ControllerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct StepController {
  double cfl = 0.5;
  double final_time = 1.0;
  RKMethod method = RKMethod::kSSPRK104;
  /// Shrink dt to the positivity bound (times ssp_coefficient) when it is smaller.
  bool strict_pp = false;
};

struct StepChoice {
  double dt = 0.0;
  bool pp_bound_violated = false;  ///< dt / ssp_coefficient exceeded the positivity bound
  double pp_bound = std::numeric_limits<double>::infinity();
};

/// 1D: cfl dx / alpha; 2D: cfl / (alpha_x/dx + alpha_y/dy); truncated to land on final_time.
/// pp_bound is the forward-Euler positivity bound (infinity to skip the check).
/// Throws ControllerError on a non-positive or non-finite step.
template <int D>
StepChoice choose_dt(const StepController& ctl, double t, const std::array<double, D>& alpha,
                     const std::array<double, D>& spacing, double pp_bound);

/// Maximum nodal |u_axis| + c per axis.
template <int D>
std::array<double, D> max_nodal_speeds(const NodalField<D>& u, double gamma);

}  // namespace gravdg
