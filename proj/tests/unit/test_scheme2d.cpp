#include <cmath>

#include "doctest.h"
#include "gravdg/scheme1d.hpp"
#include "gravdg/scheme2d.hpp"
#include "test_support.hpp"

using namespace gravdg;
using namespace gravdg::testing;

namespace {

struct Case2D {
  Mesh2D mesh;
  LobattoOperators ops;
  GasParams gas;
  EquilibriumField<2> eq;
};

Case2D make_case(const Geometry2D& geom, int k, const EquilibriumSpec& spec, PotentialKind pot, double gamma = 1.4) {
  Case2D c{make_mesh_2d(geom), build_operators(k), GasParams{gamma}, {}};
  c.eq = sample_equilibrium(c.mesh, c.ops, spec, GravityPotential{pot}, c.gas);
  return c;
}

Geometry2D box(int n, bool periodic) {
  Geometry2D g;
  g.xmin = g.ymin = 0.0;
  g.xmax = g.ymax = 2.0;
  g.nx = g.ny = n;
  g.periodic = periodic;
  return g;
}

Scheme2D make_scheme(const Case2D& c, SchemeVariant v, BoundaryKind bc,
                     InterfaceFluxKind flux = InterfaceFluxKind::kLaxFriedrichs) {
  Scheme2D s(c.mesh, c.ops, c.gas, c.eq, BoundaryCondition<2>{bc, {}}, v, flux);
  if (bc == BoundaryKind::kFixedToInitial) s.capture_boundary(c.eq.state);
  return s;
}

NodalField<2> perturbed(const Case2D& c, Rng& rng, double amount) {
  NodalField<2> u = c.eq.state;
  for (auto& s : u.values) {
    auto w = primitive_from_conserved(s, c.gas);
    w.rho *= 1.0 + uniform(rng, -amount, amount);
    w.p *= 1.0 + uniform(rng, -amount, amount);
    for (double& v : w.vel) v += uniform(rng, -amount, amount);
    s = conserved_from_primitive(w, c.gas);
  }
  return u;
}

double node_weight(const Case2D& c, int a) {
  const int n = c.ops.size();
  return 0.25 * c.mesh.dx * c.mesh.dy * c.ops.weights[a % n] * c.ops.weights[a / n];
}

}  // namespace

TEST_CASE("static equilibria are kept exactly in two dimensions") {
  const std::vector<EquilibriumSpec> specs = {IsothermalEquilibrium{1.0, 1.0}, IsentropicEquilibrium{1.0, 5.0},
                                              PolytropicEquilibrium{2.0, 1.0, 6.0}};
  for (const auto& spec : specs)
    for (int k : {1, 2, 3}) {
      const Case2D c = make_case(box(6, false), k, spec, PotentialKind::kLinearXY);
      for (auto v : {SchemeVariant::kWBESPP, SchemeVariant::kNonES}) {
        const Scheme2D s = make_scheme(c, v, BoundaryKind::kFixedToInitial);
        NodalField<2> out;
        s.rhs(c.eq.state, 0.0, out);
        for (const auto& r : out.values)
          for (double q : r.q) CHECK(q == 0.0);
      }
    }
}

TEST_CASE("Kepler disks are kept exactly on the annulus") {
  Geometry2D g;
  g.xmin = g.ymin = -2.0;
  g.xmax = g.ymax = 2.0;
  g.nx = g.ny = 12;
  g.r_inner = 1.0;
  g.r_outer = 2.0;
  for (bool step : {false, true}) {
    const Case2D c = make_case(g, 2, KeplerianDisk{step}, PotentialKind::kKeplerian);
    const Scheme2D s = make_scheme(c, SchemeVariant::kWBESPP, BoundaryKind::kFixedToInitial);
    NodalField<2> out;
    s.rhs(c.eq.state, 0.0, out);
    for (const auto& r : out.values)
      for (double q : r.q) CHECK(q == 0.0);

    const Scheme2D plain = make_scheme(c, SchemeVariant::kNonWB, BoundaryKind::kFixedToInitial);
    plain.rhs(c.eq.state, 0.0, out);
    double worst = 0.0;
    for (const auto& r : out.values) worst = std::max(worst, max_abs(r));
    CHECK(worst > 1e-8);
  }
}

TEST_CASE("mass telescopes on periodic two-dimensional fields") {
  Rng rng(41);
  const Case2D c = make_case(box(8, true), 2, IsothermalEquilibrium{1.0, 1.0}, PotentialKind::kZero);
  for (auto v : {SchemeVariant::kWBESPP, SchemeVariant::kNonES}) {
    const Scheme2D s = make_scheme(c, v, BoundaryKind::kPeriodic);
    const NodalField<2> u = perturbed(c, rng, 0.3);
    NodalField<2> out;
    s.rhs(u, 0.0, out);
    for (int var = 0; var < 4; ++var) {
      double total = 0.0;
      for (int cell = 0; cell < u.n_cells; ++cell)
        for (int a = 0; a < u.nodes_per_cell; ++a) total += node_weight(c, a) * out.at(cell, a).q[var];
      CHECK(std::abs(total) < 1e-13);
    }
  }
}

TEST_CASE("two-dimensional entropy balance, globally and per cell") {
  Rng rng(42);
  for (int k : {1, 2, 3})
    for (auto pot : {PotentialKind::kZero, PotentialKind::kLinearXY}) {
      const bool periodic = pot == PotentialKind::kZero;
      const Case2D c = make_case(box(5, periodic), k, IsothermalEquilibrium{1.0, 1.0}, pot);
      for (auto flux : {InterfaceFluxKind::kLaxFriedrichs, InterfaceFluxKind::kEntropyConservative}) {
        const Scheme2D s =
            make_scheme(c, SchemeVariant::kWBESPP, periodic ? BoundaryKind::kPeriodic : BoundaryKind::kFixedToInitial, flux);
        const NodalField<2> u = perturbed(c, rng, 0.4);
        NodalField<2> out;
        s.rhs(u, 0.0, out);
        const auto faces = s.face_fluxes(u, 0.0);
        const int n = c.ops.size();
        double global = 0.0;
        for (int cell = 0; cell < u.n_cells; ++cell) {
          double lhs = 0.0, rhs = 0.0;
          for (int a = 0; a < u.nodes_per_cell; ++a) {
            const State<2> V = entropy_variables_unchecked(u.at(cell, a), c.gas);
            const State<2> Ve = entropy_variables_unchecked(c.eq.state.at(cell, a), c.gas);
            lhs += node_weight(c, a) * dot(V, out.at(cell, a));
            rhs += node_weight(c, a) * dot(Ve, s.balancing_source()[cell * u.nodes_per_cell + a]);
          }
          for (int side = 0; side < 4; ++side) {
            const int face = c.mesh.cell_faces[cell][side];
            const int axis = side / 2;
            const double sign = side % 2 == 0 ? 1.0 : -1.0;
            const double len = 0.5 * (axis == 0 ? c.mesh.dy : c.mesh.dx);
            for (int m = 0; m < n; ++m) {
              const State<2>& un = u.at(cell, s.face_node(side, m));
              const double w = len * c.ops.weights[m];
              rhs += sign * w * (dot(entropy_variables_unchecked(un, c.gas), faces[face * n + m]) - un.q[1 + axis]);
            }
          }
          CHECK(std::abs(lhs - rhs) <= 1e-10);
          global += lhs;
        }
        if (periodic) {
          if (flux == InterfaceFluxKind::kLaxFriedrichs) CHECK(global <= 1e-10);
          else CHECK(std::abs(global) <= 1e-10);
        }
      }
    }
}

TEST_CASE("a field constant in y reproduces the one-dimensional operator") {
  Rng rng(43);
  const int n = 8, k = 3;
  const Case2D c2 = make_case(box(n, true), k, IsothermalEquilibrium{1.0, 1.0}, PotentialKind::kZero);
  const Mesh1D m1 = make_mesh_1d(0.0, 2.0, n);
  const LobattoOperators ops = build_operators(k);
  const GasParams gas{1.4};
  const auto eq1 = sample_equilibrium(m1, ops, IsothermalEquilibrium{1.0, 1.0}, GravityPotential{}, gas);
  NodalField<1> u1 = eq1.state;
  for (auto& s : u1.values) {
    s.q[0] *= 1.0 + uniform(rng, -0.3, 0.3);
    s.q[1] = uniform(rng, -0.5, 0.5);
    s.q[2] *= 1.0 + uniform(rng, 0.0, 0.3);
  }
  NodalField<2> u2 = c2.eq.state;
  for (int cell = 0; cell < u2.n_cells; ++cell) {
    const int i = c2.mesh.cell_ij[cell][0];
    for (int a = 0; a < u2.nodes_per_cell; ++a) {
      const State<1>& s = u1.at(i, a % (k + 1));
      u2.at(cell, a).q = {s.q[0], s.q[1], 0.0, s.q[2]};
    }
  }
  for (auto v : {SchemeVariant::kWBESPP, SchemeVariant::kNonES}) {
    const Scheme1D s1(m1, ops, gas, eq1, BoundaryCondition<1>{BoundaryKind::kPeriodic, {}}, v);
    const Scheme2D s2 = make_scheme(c2, v, BoundaryKind::kPeriodic);
    NodalField<1> r1;
    NodalField<2> r2;
    s1.rhs(u1, 0.0, r1);
    s2.rhs(u2, 0.0, r2);
    for (int cell = 0; cell < u2.n_cells; ++cell) {
      const int i = c2.mesh.cell_ij[cell][0];
      for (int a = 0; a < u2.nodes_per_cell; ++a) {
        const State<1>& a1 = r1.at(i, a % (k + 1));
        const State<2>& a2 = r2.at(cell, a);
        CHECK(std::abs(a2.q[0] - a1.q[0]) < 1e-11);
        CHECK(std::abs(a2.q[1] - a1.q[1]) < 1e-11);
        CHECK(std::abs(a2.q[2]) < 1e-11);
        CHECK(std::abs(a2.q[3] - a1.q[2]) < 1e-11);
      }
    }
  }
}

TEST_CASE("two-dimensional evaluation errors carry the cell and node") {
  const Case2D c = make_case(box(4, false), 2, IsothermalEquilibrium{1.0, 1.0}, PotentialKind::kLinearXY);
  const Scheme2D s = make_scheme(c, SchemeVariant::kWBESPP, BoundaryKind::kFixedToInitial);
  NodalField<2> u = c.eq.state;
  u.at(5, 4).q[0] = -0.1;
  NodalField<2> out;
  try {
    s.rhs(u, 0.0, out);
    FAIL("expected an evaluation error");
  } catch (const EvaluationError& e) {
    CHECK(e.cell == 5);
    CHECK(e.node == 4);
  }
}

TEST_CASE("periodic boundary kind and mesh must agree") {
  const Case2D c = make_case(box(4, false), 1, IsothermalEquilibrium{1.0, 1.0}, PotentialKind::kZero);
  CHECK_THROWS_AS(Scheme2D(c.mesh, c.ops, c.gas, c.eq, BoundaryCondition<2>{BoundaryKind::kPeriodic, {}},
                           SchemeVariant::kWBESPP),
                  ConfigError);
}
