#include "gravdg/equilibria.hpp"

#include <cmath>
#include <sstream>

#include "gravdg/errors.hpp"
#include "gravdg/field_io.hpp"

namespace gravdg {

double GravityPotential::value(double x, double y) const {
  switch (kind) {
    case PotentialKind::kZero: return 0.0;
    case PotentialKind::kLinearX: return x;
    case PotentialKind::kLinearXY: return x + y;
    case PotentialKind::kQuadraticRadial: return 0.5 * (x * x + y * y);
    case PotentialKind::kKeplerian: return -1.0 / std::hypot(x, y);
  }
  return 0.0;
}

std::array<double, 2> GravityPotential::gradient(double x, double y) const {
  switch (kind) {
    case PotentialKind::kZero: return {0.0, 0.0};
    case PotentialKind::kLinearX: return {1.0, 0.0};
    case PotentialKind::kLinearXY: return {1.0, 1.0};
    case PotentialKind::kQuadraticRadial: return {x, y};
    case PotentialKind::kKeplerian: {
      const double r = std::hypot(x, y);
      const double r3 = r * r * r;
      return {x / r3, y / r3};
    }
  }
  return {0.0, 0.0};
}

namespace {

template <int D>
State<D> at_rest(double rho, double p, const GasParams& gas) {
  Primitive<D> w;
  w.rho = rho;
  w.p = p;
  return conserved_from_primitive(w, gas);
}

std::string where(double x, double y) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << x << ", " << y << ")";
  return os.str();
}

}  // namespace

State<2> keplerian_state(const KeplerianDisk& disk, const GasParams& gas, double x, double y) {
  const double r = std::hypot(x, y);
  if (!(r > 0.0)) throw DomainError("Kepler disk undefined at the origin");
  Primitive<2> w;
  w.rho = disk.density_step && r <= disk.step_radius ? 2.0 : 1.0;
  const double speed = 1.0 / std::sqrt(r);
  w.vel = {-y / r * speed, x / r * speed};
  w.p = 1.0;
  return conserved_from_primitive(w, gas);
}

template <int D>
State<D> evaluate_static_equilibrium(const EquilibriumSpec& spec, const GravityPotential& pot,
                                     const GasParams& gas, double x, double y) {
  const double phi = pot.value(x, y);
  if (const auto* iso = std::get_if<IsothermalEquilibrium>(&spec)) {
    if (!(iso->rho0 > 0.0) || !(iso->RT0 > 0.0)) throw DomainError("isothermal equilibrium needs rho0, RT0 > 0");
    const double rho = iso->rho0 * std::exp(-phi / iso->RT0);
    return at_rest<D>(rho, iso->RT0 * rho, gas);
  }
  if (const auto* ise = std::get_if<IsentropicEquilibrium>(&spec)) {
    const double g = gas.gamma;
    const double base = (g - 1.0) * (ise->C - phi) / (ise->K0 * g);
    if (!(base > 0.0)) throw DomainError("isentropic equilibrium has no positive density at " + where(x, y));
    const double rho = std::pow(base, 1.0 / (g - 1.0));
    return at_rest<D>(rho, ise->K0 * std::pow(rho, g), gas);
  }
  if (const auto* pol = std::get_if<PolytropicEquilibrium>(&spec)) {
    double rho;
    if (pol->nu == 1.0) {
      rho = std::exp((pol->C - phi) / pol->K0);
    } else {
      const double base = (pol->nu - 1.0) * (pol->C - phi) / (pol->K0 * pol->nu);
      if (!(base > 0.0)) throw DomainError("polytropic equilibrium has no positive density at " + where(x, y));
      rho = std::pow(base, 1.0 / (pol->nu - 1.0));
    }
    return at_rest<D>(rho, pol->K0 * std::pow(rho, pol->nu), gas);
  }
  if (const auto* kep = std::get_if<KeplerianDisk>(&spec)) {
    if constexpr (D == 2) {
      return keplerian_state(*kep, gas, x, y);
    } else {
      throw ConfigError("Kepler disk equilibrium is two-dimensional");
    }
  }
  throw ConfigError("equilibrium kind has no point evaluator");
}

template State<1> evaluate_static_equilibrium<1>(const EquilibriumSpec&, const GravityPotential&,
                                                 const GasParams&, double, double);
template State<2> evaluate_static_equilibrium<2>(const EquilibriumSpec&, const GravityPotential&,
                                                 const GasParams&, double, double);

double sonic_density(const MovingEquilibrium1D& spec, const GasParams& gas) {
  return std::pow(spec.mach * spec.mach, 1.0 / (gas.gamma + 1.0));
}

double moving_equilibrium_residual(const MovingEquilibrium1D& spec, const GravityPotential& pot,
                                   const GasParams& gas, double x, double rho) {
  const double g = gas.gamma;
  const double m2 = spec.mach * spec.mach * g;
  const double h0 = g / (g - 1.0) + 0.5 * m2;
  return g / (g - 1.0) * std::pow(rho, g - 1.0) + 0.5 * m2 / (rho * rho) + pot.value(x) - h0;
}

State<1> solve_moving_equilibrium(const MovingEquilibrium1D& spec, const GravityPotential& pot,
                                  const GasParams& gas, double x, std::optional<double> guess) {
  if (!(spec.mach >= 0.0)) throw ConfigError("Mach number must be non-negative");
  const double g = gas.gamma;
  const double m2 = spec.mach * spec.mach * g;
  const bool subsonic = spec.mach < 1.0;
  const double rs = sonic_density(spec, gas);
  auto f = [&](double r) { return moving_equilibrium_residual(spec, pot, gas, x, r); };
  auto df = [&](double r) { return g * std::pow(r, g - 2.0) - m2 / (r * r * r); };

  if (spec.mach > 0.0 && f(rs) > 0.0) {
    std::ostringstream os;
    os.precision(17);
    os << "moving equilibrium has no root at x = " << x << " (sonic density " << rs
       << ", residual there " << f(rs) << ")";
    throw DomainError(os.str());
  }

  double lo, hi;
  if (subsonic) {
    lo = rs;
    hi = std::max(1.0, 2.0 * rs);
    for (int it = 0; f(hi) <= 0.0; ++it) {
      if (it > 2000) throw DomainError("moving equilibrium: cannot bracket subsonic root");
      hi *= 2.0;
    }
  } else {
    hi = rs;
    lo = 0.5 * rs;
    for (int it = 0; f(lo) <= 0.0; ++it) {
      if (it > 2000) throw DomainError("moving equilibrium: cannot bracket supersonic root");
      lo *= 0.5;
    }
  }

  double r = guess && *guess > lo && *guess < hi ? *guess : 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double fr = f(r);
    if (fr == 0.0) break;
    // f increases with rho on the subsonic branch and decreases on the supersonic one.
    if ((fr < 0.0) == subsonic)
      lo = r;
    else
      hi = r;
    const double d = df(r);
    double next = d != 0.0 ? r - fr / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const bool done = std::abs(next - r) <= 2e-16 * r || hi - lo <= 4e-16 * hi;
    r = next;
    if (done) break;
  }

  State<1> u;
  const double m0 = -spec.mach * std::sqrt(g);
  u.q[0] = r;
  u.q[1] = m0;
  u.q[2] = std::pow(r, g) / (g - 1.0) + 0.5 * m0 * m0 / r;
  return u;
}

namespace {

template <int D>
void fill_sources(EquilibriumField<D>& eq) {
  eq.source.resize(eq.state.size());
  for (size_t n = 0; n < eq.state.size(); ++n) eq.source[n] = gravity_source<D>(eq.state.values[n], eq.grad_phi[n]);
}

template <int D>
NodalField<D> load_custom(const CustomNodalEquilibrium& c, int n_cells, int k,
                          const std::vector<std::array<double, D>>& coords, const GasParams& gas) {
  FieldFile<D> file = read_field_csv<D>(c.path);
  if (file.field.n_cells != n_cells || file.field.k != k)
    throw ConfigError("custom equilibrium " + c.path + " does not match the mesh");
  for (size_t n = 0; n < coords.size(); ++n) {
    for (int d = 0; d < D; ++d)
      if (std::abs(file.coords[n][d] - coords[n][d]) > 1e-9 * (1.0 + std::abs(coords[n][d])))
        throw ConfigError("custom equilibrium " + c.path + " node coordinates do not match the mesh");
    require_admissible(file.field.values[n], gas);
  }
  return file.field;
}

}  // namespace

std::vector<std::array<double, 1>> sample_gradient(const Mesh1D& mesh, const LobattoOperators& ops,
                                                   const GravityPotential& pot) {
  std::vector<std::array<double, 1>> out;
  for (int c = 0; c < mesh.n_cells; ++c)
    for (int i = 0; i < ops.size(); ++i) out.push_back({pot.gradient(mesh.node_x(c, ops.nodes[i]))[0]});
  return out;
}

std::vector<std::array<double, 2>> sample_gradient(const Mesh2D& mesh, const LobattoOperators& ops,
                                                   const GravityPotential& pot) {
  std::vector<std::array<double, 2>> out;
  const int n = ops.size();
  for (int c = 0; c < mesh.n_cells(); ++c)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) out.push_back(pot.gradient(mesh.node_x(c, ops.nodes[i]), mesh.node_y(c, ops.nodes[j])));
  return out;
}

EquilibriumField<1> sample_equilibrium(const Mesh1D& mesh, const LobattoOperators& ops,
                                       const EquilibriumSpec& spec, const GravityPotential& pot,
                                       const GasParams& gas) {
  EquilibriumField<1> eq;
  eq.state = NodalField<1>(mesh.n_cells, ops.k);
  eq.grad_phi = sample_gradient(mesh, ops, pot);
  if (const auto* c = std::get_if<CustomNodalEquilibrium>(&spec)) {
    eq.state = load_custom<1>(*c, mesh.n_cells, ops.k, node_coordinates(mesh, ops), gas);
    fill_sources(eq);
    return eq;
  }
  const auto* moving = std::get_if<MovingEquilibrium1D>(&spec);
  std::optional<double> guess;
  for (int c = 0; c < mesh.n_cells; ++c) {
    for (int i = 0; i < ops.size(); ++i) {
      if (i == 0 && c > 0) {
        eq.state.at(c, 0) = eq.state.at(c - 1, ops.k);  // shared interface node
        continue;
      }
      const double x = mesh.node_x(c, ops.nodes[i]);
      try {
        if (moving) {
          eq.state.at(c, i) = solve_moving_equilibrium(*moving, pot, gas, x, guess);
          guess = eq.state.at(c, i)[0];
        } else {
          eq.state.at(c, i) = evaluate_static_equilibrium<1>(spec, pot, gas, x, 0.0);
        }
      } catch (const DomainError& e) {
        throw DomainError("equilibrium at cell " + std::to_string(c) + " node " + std::to_string(i) + ": " +
                          e.what());
      }
    }
  }
  fill_sources(eq);
  return eq;
}

EquilibriumField<2> sample_equilibrium(const Mesh2D& mesh, const LobattoOperators& ops,
                                       const EquilibriumSpec& spec, const GravityPotential& pot,
                                       const GasParams& gas) {
  EquilibriumField<2> eq;
  eq.state = NodalField<2>(mesh.n_cells(), ops.k);
  eq.grad_phi = sample_gradient(mesh, ops, pot);
  if (std::holds_alternative<MovingEquilibrium1D>(spec))
    throw ConfigError("moving equilibrium is one-dimensional");
  if (const auto* c = std::get_if<CustomNodalEquilibrium>(&spec)) {
    eq.state = load_custom<2>(*c, mesh.n_cells(), ops.k, node_coordinates(mesh, ops), gas);
    fill_sources(eq);
    return eq;
  }
  const int n = ops.size();
  for (int c = 0; c < mesh.n_cells(); ++c)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const double x = mesh.node_x(c, ops.nodes[i]);
        const double y = mesh.node_y(c, ops.nodes[j]);
        try {
          eq.state.at(c, j * n + i) = evaluate_static_equilibrium<2>(spec, pot, gas, x, y);
        } catch (const DomainError& e) {
          throw DomainError("equilibrium at cell " + std::to_string(c) + " node " + std::to_string(j * n + i) +
                            ": " + e.what());
        }
      }
  fill_sources(eq);
  return eq;
}

}  // namespace gravdg
