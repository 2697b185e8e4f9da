#pragma once

// Gravitational potentials and the reference equilibria sampled at solution nodes.

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gravdg/euler.hpp"
#include "gravdg/field.hpp"
#include "gravdg/mesh.hpp"
#include "gravdg/sbp.hpp"

namespace gravdg {

enum class PotentialKind { kZero, kLinearX, kLinearXY, kQuadraticRadial, kKeplerian };

struct GravityPotential {
  PotentialKind kind = PotentialKind::kZero;

  double value(double x, double y = 0.0) const;
  std::array<double, 2> gradient(double x, double y = 0.0) const;
};

/// rho = rho0 exp(-phi/RT0), p = RT0 rho, at rest.
struct IsothermalEquilibrium {
  double rho0 = 1.0;
  double RT0 = 1.0;
};

/// p = K0 rho^gamma, enthalpy + phi = C, at rest.
struct IsentropicEquilibrium {
  double K0 = 1.0;
  double C = 0.0;
};

/// p = K0 rho^nu, at rest; nu = 1 is the isothermal limit rho = exp((C - phi)/K0).
struct PolytropicEquilibrium {
  double nu = 2.0;
  double K0 = 1.0;
  double C = 0.0;
};

/// 1D isentropic flow with constant momentum -mach*sqrt(gamma) and p = rho^gamma,
/// normalized so rho = 1 where phi = 0. mach < 1 picks the subsonic branch.
struct MovingEquilibrium1D {
  double mach = 0.0;
};

/// Rotating disk about the origin in the potential -1/r; constant pressure 1.
struct KeplerianDisk {
  bool density_step = false;  ///< rho = 2 for r <= 1.4, else 1
  double step_radius = 1.4;
};

/// Nodal equilibrium read from a field CSV.
struct CustomNodalEquilibrium {
  std::string path;
};

using EquilibriumSpec = std::variant<IsothermalEquilibrium, IsentropicEquilibrium, PolytropicEquilibrium,
                                     MovingEquilibrium1D, KeplerianDisk, CustomNodalEquilibrium>;

/// Point evaluation of a static equilibrium in 1D or 2D. Throws DomainError when the
/// state is not admissible (e.g. C - phi <= 0 for the isentropic family).
template <int D>
State<D> evaluate_static_equilibrium(const EquilibriumSpec& spec, const GravityPotential& pot,
                                     const GasParams& gas, double x, double y);

/// Kepler disk state at (x, y).
State<2> keplerian_state(const KeplerianDisk& disk, const GasParams& gas, double x, double y);

/// Root of the moving-equilibrium Bernoulli relation at x. `guess` seeds Newton when it
/// lies on the requested branch. Throws DomainError naming the sonic density when no root exists.
State<1> solve_moving_equilibrium(const MovingEquilibrium1D& spec, const GravityPotential& pot,
                                  const GasParams& gas, double x, std::optional<double> guess = {});

/// Density at the sonic point, the branch boundary.
double sonic_density(const MovingEquilibrium1D& spec, const GasParams& gas);

/// Bernoulli residual gamma/(gamma-1) rho^(gamma-1) + m^2/(2 rho^2) + phi - H0.
double moving_equilibrium_residual(const MovingEquilibrium1D& spec, const GravityPotential& pot,
                                   const GasParams& gas, double x, double rho);

template <int D>
struct EquilibriumField {
  NodalField<D> state;                        ///< U^e at nodes
  std::vector<State<D>> source;               ///< gravity source of U^e at nodes
  std::vector<std::array<double, D>> grad_phi;  ///< potential gradient at nodes
};

EquilibriumField<1> sample_equilibrium(const Mesh1D& mesh, const LobattoOperators& ops,
                                       const EquilibriumSpec& spec, const GravityPotential& pot,
                                       const GasParams& gas);
EquilibriumField<2> sample_equilibrium(const Mesh2D& mesh, const LobattoOperators& ops,
                                       const EquilibriumSpec& spec, const GravityPotential& pot,
                                       const GasParams& gas);

/// Potential gradient at every node (no equilibrium needed).
std::vector<std::array<double, 1>> sample_gradient(const Mesh1D& mesh, const LobattoOperators& ops,
                                                   const GravityPotential& pot);
std::vector<std::array<double, 2>> sample_gradient(const Mesh2D& mesh, const LobattoOperators& ops,
                                                   const GravityPotential& pot);

}  // namespace gravdg
