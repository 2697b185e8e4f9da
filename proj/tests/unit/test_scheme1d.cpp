#include <cmath>

#include "doctest.h"
#include "gravdg/scheme1d.hpp"
#include "test_support.hpp"

using namespace gravdg;
using namespace gravdg::testing;

namespace {

struct Case1D {
  Mesh1D mesh;
  LobattoOperators ops;
  GasParams gas;
  EquilibriumField<1> eq;
};

Case1D make_case(int n, int k, double gamma, const EquilibriumSpec& spec, PotentialKind pot, double a = 0.0,
                 double b = 2.0) {
  Case1D c{make_mesh_1d(a, b, n), build_operators(k), GasParams{gamma}, {}};
  c.eq = sample_equilibrium(c.mesh, c.ops, spec, GravityPotential{pot}, c.gas);
  return c;
}

Scheme1D make_scheme(const Case1D& c, SchemeVariant v, BoundaryKind bc,
                     InterfaceFluxKind flux = InterfaceFluxKind::kLaxFriedrichs) {
  Scheme1D s(c.mesh, c.ops, c.gas, c.eq, BoundaryCondition<1>{bc, {}}, v, flux);
  if (bc == BoundaryKind::kFixedToInitial) s.capture_boundary(c.eq.state);
  return s;
}

/// Equilibrium times a random nodal factor on density and pressure.
NodalField<1> perturbed(const Case1D& c, Rng& rng, double amount) {
  NodalField<1> u = c.eq.state;
  for (auto& s : u.values) {
    auto w = primitive_from_conserved(s, c.gas);
    w.rho *= 1.0 + uniform(rng, -amount, amount);
    w.p *= 1.0 + uniform(rng, -amount, amount);
    w.vel[0] += uniform(rng, -amount, amount);
    s = conserved_from_primitive(w, c.gas);
  }
  return u;
}

double weighted_sum(const Case1D& c, const NodalField<1>& f, int var) {
  double total = 0.0;
  for (int cell = 0; cell < f.n_cells; ++cell)
    for (int a = 0; a < f.nodes_per_cell; ++a) total += 0.5 * c.mesh.dx * c.ops.weights[a] * f.at(cell, a).q[var];
  return total;
}

/// Per-cell entropy rate: quadrature of V . dU/dt, and the same rate from interface fluxes and S0.
std::pair<double, double> cell_entropy_rates(const Case1D& c, const Scheme1D& s, const NodalField<1>& u,
                                             const NodalField<1>& rate, const std::vector<State<1>>& faces,
                                             int cell) {
  const int k = c.ops.k;
  const double h = 0.5 * c.mesh.dx;
  double lhs = 0.0, source = 0.0;
  for (int a = 0; a <= k; ++a) {
    const State<1> V = entropy_variables_unchecked(u.at(cell, a), c.gas);
    lhs += h * c.ops.weights[a] * dot(V, rate.at(cell, a));
    if (!s.balancing_source().empty()) {
      const State<1> Ve = entropy_variables_unchecked(c.eq.state.at(cell, a), c.gas);
      source += h * c.ops.weights[a] * dot(Ve, s.balancing_source()[cell * (k + 1) + a]);
    }
  }
  const State<1>& ur = u.at(cell, k);
  const State<1>& ul = u.at(cell, 0);
  const double rhs = -dot(entropy_variables_unchecked(ur, c.gas), faces[cell + 1]) + ur.q[1] +
                     dot(entropy_variables_unchecked(ul, c.gas), faces[cell]) - ul.q[1] + source;
  return {lhs, rhs};
}

}  // namespace

TEST_CASE("well-balanced variants keep every equilibrium exactly") {
  const std::vector<std::pair<EquilibriumSpec, double>> specs = {
      {IsothermalEquilibrium{1.0, 1.0}, 1.4},     {IsentropicEquilibrium{1.0, 5.0}, 1.4},
      {PolytropicEquilibrium{2.0, 1.0, 4.0}, 1.4}, {MovingEquilibrium1D{0.0}, 5.0 / 3.0},
      {MovingEquilibrium1D{0.01}, 5.0 / 3.0},      {MovingEquilibrium1D{2.5}, 5.0 / 3.0}};
  for (const auto& [spec, gamma] : specs)
    for (int k : {1, 2, 3, 5})
      for (auto v : {SchemeVariant::kWBESPP, SchemeVariant::kNonES, SchemeVariant::kNonPP}) {
        CAPTURE(k);
        const Case1D c = make_case(16, k, gamma, spec, PotentialKind::kLinearX);
        const Scheme1D s = make_scheme(c, v, BoundaryKind::kFixedToInitial);
        NodalField<1> out;
        s.rhs(c.eq.state, 0.0, out);
        for (const auto& r : out.values)
          for (double q : r.q) CHECK(q == 0.0);
      }
}

TEST_CASE("the plain gravity source does not balance the discrete flux") {
  const Case1D c = make_case(16, 2, 1.4, IsothermalEquilibrium{1.0, 1.0}, PotentialKind::kLinearX);
  const Scheme1D s = make_scheme(c, SchemeVariant::kNonWB, BoundaryKind::kFixedToInitial);
  NodalField<1> out;
  s.rhs(c.eq.state, 0.0, out);
  double worst = 0.0;
  for (const auto& r : out.values) worst = std::max(worst, max_abs(r));
  CHECK(worst > 1e-8);
}

TEST_CASE("mass telescopes on periodic fields") {
  Rng rng(31);
  for (auto v : {SchemeVariant::kWBESPP, SchemeVariant::kNonWB, SchemeVariant::kNonES}) {
    const Case1D c = make_case(24, 3, 1.4, IsothermalEquilibrium{1.0, 1.0}, PotentialKind::kZero);
    const Scheme1D s = make_scheme(c, v, BoundaryKind::kPeriodic);
    const NodalField<1> u = perturbed(c, rng, 0.3);
    NodalField<1> out;
    s.rhs(u, 0.0, out);
    CHECK(std::abs(weighted_sum(c, out, 0)) < 1e-13);
    CHECK(std::abs(weighted_sum(c, out, 1)) < 1e-13);
    CHECK(std::abs(weighted_sum(c, out, 2)) < 1e-13);
  }
}

TEST_CASE("global entropy does not grow on random periodic fields") {
  Rng rng(32);
  for (int k : {1, 2, 4})
    for (int trial = 0; trial < 20; ++trial) {
      const Case1D c = make_case(20, k, 1.4, IsothermalEquilibrium{1.0, 1.0}, PotentialKind::kZero);
      const NodalField<1> u = perturbed(c, rng, 0.5);
      NodalField<1> out;
      for (auto flux : {InterfaceFluxKind::kLaxFriedrichs, InterfaceFluxKind::kEntropyConservative}) {
        const Scheme1D s = make_scheme(c, SchemeVariant::kWBESPP, BoundaryKind::kPeriodic, flux);
        s.rhs(u, 0.0, out);
        double rate = 0.0;
        for (int cell = 0; cell < u.n_cells; ++cell)
          for (int a = 0; a <= k; ++a)
            rate += 0.5 * c.mesh.dx * c.ops.weights[a] *
                    dot(entropy_variables_unchecked(u.at(cell, a), c.gas), out.at(cell, a));
        if (flux == InterfaceFluxKind::kLaxFriedrichs) CHECK(rate <= 1e-10);
        else CHECK(std::abs(rate) <= 1e-10);
      }
    }
}

TEST_CASE("per-cell entropy balance matches the interface fluxes") {
  Rng rng(33);
  for (int k : {1, 2, 3, 6})
    for (auto pot : {PotentialKind::kZero, PotentialKind::kLinearX}) {
      const Case1D c = make_case(12, k, 1.4, IsothermalEquilibrium{1.0, 1.0}, pot);
      for (auto v : {SchemeVariant::kWBESPP, SchemeVariant::kNonWB}) {
        const Scheme1D s = make_scheme(c, v, BoundaryKind::kFixedToInitial);
        const NodalField<1> u = perturbed(c, rng, 0.4);
        NodalField<1> out;
        s.rhs(u, 0.0, out);
        const auto faces = s.interface_fluxes(u, 0.0);
        for (int cell = 0; cell < u.n_cells; ++cell) {
          const auto [lhs, rhs] = cell_entropy_rates(c, s, u, out, faces, cell);
          CHECK(std::abs(lhs - rhs) <= 1e-10);
        }
      }
    }
}

TEST_CASE("inadmissible nodes are reported with their location") {
  const Case1D c = make_case(10, 2, 1.4, IsothermalEquilibrium{1.0, 1.0}, PotentialKind::kLinearX);
  const Scheme1D s = make_scheme(c, SchemeVariant::kWBESPP, BoundaryKind::kFixedToInitial);
  NodalField<1> u = c.eq.state;
  u.at(6, 1).q[2] = -1.0;
  NodalField<1> out;
  try {
    s.rhs(u, 0.0, out);
    FAIL("expected an evaluation error");
  } catch (const EvaluationError& e) {
    CHECK(e.cell == 6);
    CHECK(e.node == 1);
  }
}

TEST_CASE("fixed-to-initial boundaries need captured states") {
  const Case1D c = make_case(10, 2, 1.4, IsothermalEquilibrium{1.0, 1.0}, PotentialKind::kLinearX);
  const Scheme1D s(c.mesh, c.ops, c.gas, c.eq, BoundaryCondition<1>{BoundaryKind::kFixedToInitial, {}},
                   SchemeVariant::kWBESPP);
  NodalField<1> out;
  CHECK_THROWS_AS(s.rhs(c.eq.state, 0.0, out), ConfigError);
}
