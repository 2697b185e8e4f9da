#pragma once

// Cell-wise scaling limiter enforcing rho, p >= epsilon at the nodes, and the
// time-step bound under which cell averages stay admissible.

#include <array>
#include <limits>
#include <span>
#include <vector>

#include "gravdg/euler.hpp"
#include "gravdg/field.hpp"
#include "gravdg/sbp.hpp"

namespace gravdg {

struct LimiterParams {
  double epsilon = 1e-13;
};

struct LimiterReport {
  double theta_density = 1.0;
  double theta_pressure = 1.0;
  bool modified = false;
};

/// Normalized quadrature weights for cell averages (omega/2 or omega_i omega_j/4).
std::vector<double> average_weights(const LobattoOperators& ops, int dim);

template <int D>
State<D> cell_average(std::span<const State<D>> nodes, std::span<const double> avg_weights);

/// Largest t in [0, 1] with p(avg + t (target - avg)) >= epsilon, given p(avg) > epsilon > p(target)
/// and positive density along the segment.
template <int D>
double pressure_crossing(const State<D>& avg, const State<D>& target, double epsilon, const GasParams& gas);

/// Limits one cell in place. Identity (bitwise) when every node already satisfies rho, p >= epsilon.
/// Throws DomainError when the cell average is not admissible.
template <int D>
LimiterReport limit_cell(std::span<State<D>> nodes, std::span<const double> avg_weights,
                         const LimiterParams& params, const GasParams& gas);

struct FieldLimitReport {
  int cells_modified = 0;
};

/// Limits every cell. Throws EvaluationError naming the cell on an inadmissible average.
template <int D>
FieldLimitReport limit_field(NodalField<D>& field, std::span<const double> avg_weights,
                             const LimiterParams& params, const GasParams& gas);

/// Time-step bound for the source part at one node, given the well-balancing source `theta`.
/// Returns +infinity when the source cannot drive the state out of the admissible set.
template <int D>
double source_time_bound(const State<D>& u, const State<D>& theta, const std::type_identity_t<std::array<double, D>>& grad_phi,
                         const GasParams& gas);

struct PPTimeBound {
  double convective = std::numeric_limits<double>::infinity();
  double source = std::numeric_limits<double>::infinity();
  double bound() const { return convective < source ? convective : source; }
};

/// theta may be empty (treated as zero). alpha is the convective speed bound per axis.
PPTimeBound pp_timestep_bound(const NodalField<1>& u, const std::vector<State<1>>& theta,
                              const std::vector<std::array<double, 1>>& grad_phi, const LobattoOperators& ops,
                              double dx, double alpha, const GasParams& gas);
PPTimeBound pp_timestep_bound(const NodalField<2>& u, const std::vector<State<2>>& theta,
                              const std::vector<std::array<double, 2>>& grad_phi, const LobattoOperators& ops,
                              double dx, double dy, std::array<double, 2> alpha, const GasParams& gas);

}  // namespace gravdg
