#include "gravdg/harness/catalog.hpp"

#include "gravdg/errors.hpp"

namespace gravdg::harness {

namespace {

RunConfig moving_wb(const std::string& id, double mach) {
  RunConfig c;
  c.problem = id;
  c.dim = 1;
  c.k = 2;
  c.nx = 20;
  c.gamma = 5.0 / 3.0;
  c.final_time = 1.0;
  c.xmin = 0.0;
  c.xmax = 2.0;
  c.potential = PotentialKind::kLinearX;
  c.equilibrium = MovingEquilibrium1D{mach};
  c.boundary = BoundaryKind::kFixedToInitial;
  c.initial = InitialKind::kEquilibrium;
  return c;
}

RunConfig moving_perturbation(const std::string& id, double mach, double amplitude, double center, double t) {
  RunConfig c = moving_wb(id, mach);
  c.nx = 200;
  c.final_time = t;
  c.perturbation.amplitude = amplitude;
  c.perturbation.center_x = center;
  c.perturbation.width = 100.0;
  c.perturbation.variable = Perturbation::Variable::kPressure;
  c.outputs = {"solution", "series", "metadata", "equilibrium", "perturbation"};
  return c;
}

RunConfig accuracy_1d() {
  RunConfig c;
  c.problem = "accuracy-1d";
  c.dim = 1;
  c.nx = 20;
  c.final_time = 2.0;
  c.xmin = 0.0;
  c.xmax = 2.0;
  c.potential = PotentialKind::kLinearX;
  c.equilibrium = IsothermalEquilibrium{1.0, 1.0};
  c.boundary = BoundaryKind::kExact;
  c.initial = InitialKind::kAccuracy1D;
  c.outputs = {"solution", "series", "metadata", "errors"};
  return c;
}

RunConfig accuracy_2d() {
  RunConfig c = accuracy_1d();
  c.problem = "accuracy-2d";
  c.dim = 2;
  c.ymin = 0.0;
  c.ymax = 2.0;
  c.ny = c.nx;
  c.potential = PotentialKind::kLinearXY;
  c.initial = InitialKind::kAccuracy2D;
  return c;
}

RunConfig sod(const std::string& id, EquilibriumSpec eq) {
  RunConfig c;
  c.problem = id;
  c.dim = 1;
  c.nx = 200;
  c.final_time = 0.4;
  c.xmin = -1.0;
  c.xmax = 1.0;
  c.potential = PotentialKind::kLinearX;
  c.equilibrium = eq;
  c.boundary = BoundaryKind::kReflective;
  c.initial = InitialKind::kSod;
  c.outputs = {"solution", "series", "metadata", "equilibrium"};
  return c;
}

RunConfig rarefaction_1d() {
  RunConfig c;
  c.problem = "rarefaction-1d";
  c.dim = 1;
  c.nx = 800;
  c.final_time = 0.6;
  c.xmin = -1.0;
  c.xmax = 1.0;
  c.potential = PotentialKind::kQuadraticRadial;
  c.equilibrium = IsothermalEquilibrium{1.0, 1.0};
  c.boundary = BoundaryKind::kOutflow;
  c.initial = InitialKind::kDoubleRarefaction1D;
  return c;
}

RunConfig rarefaction_2d() {
  RunConfig c;
  c.problem = "rarefaction-2d";
  c.dim = 2;
  c.nx = c.ny = 200;
  c.final_time = 0.1;
  c.xmin = c.ymin = -0.5;
  c.xmax = c.ymax = 0.5;
  c.potential = PotentialKind::kQuadraticRadial;
  c.equilibrium = IsothermalEquilibrium{1.0, 0.4};
  c.boundary = BoundaryKind::kOutflow;
  c.initial = InitialKind::kDoubleRarefaction2D;
  return c;
}

RunConfig kepler(const std::string& id, bool step) {
  RunConfig c;
  c.problem = id;
  c.dim = 2;
  c.nx = c.ny = 20;
  c.final_time = 2.0;
  c.xmin = c.ymin = -2.0;
  c.xmax = c.ymax = 2.0;
  c.r_inner = 1.0;
  c.r_outer = 2.0;
  c.potential = PotentialKind::kKeplerian;
  c.equilibrium = KeplerianDisk{step};
  c.boundary = BoundaryKind::kFixedToInitial;
  c.initial = InitialKind::kEquilibrium;
  return c;
}

RunConfig kepler_perturbation() {
  RunConfig c = kepler("kepler-perturbation", false);
  c.nx = c.ny = 120;
  c.final_time = 2.5;
  c.perturbation.amplitude = 1e-6;
  c.perturbation.center_x = -1.5;
  c.perturbation.center_y = 0.0;
  c.perturbation.width = 50.0;
  c.perturbation.variable = Perturbation::Variable::kDensity;
  c.outputs = {"solution", "series", "metadata", "equilibrium", "perturbation"};
  return c;
}

RunConfig kepler_riemann() {
  RunConfig c = kepler("kepler-riemann", false);
  c.nx = c.ny = 160;
  c.final_time = 0.5;
  c.xmin = c.ymin = -4.0;
  c.xmax = c.ymax = 4.0;
  c.r_inner = 1.0;
  c.r_outer = 4.0;
  c.initial = InitialKind::kKeplerRiemann;
  return c;
}

std::vector<CatalogEntry> build() {
  return {
      {"wb-hydrostatic", "1D isentropic hydrostatic state (M = 0), phi = x", moving_wb("wb-hydrostatic", 0.0)},
      {"wb-subsonic", "1D subsonic moving equilibrium (M = 0.01), phi = x", moving_wb("wb-subsonic", 0.01)},
      {"wb-supersonic", "1D supersonic moving equilibrium (M = 2.5), phi = x", moving_wb("wb-supersonic", 2.5)},
      {"pert-hydrostatic", "pressure pulse A = 1e-9 at x = 1 on the M = 0 state",
       moving_perturbation("pert-hydrostatic", 0.0, 1e-9, 1.0, 0.45)},
      {"pert-subsonic", "pressure pulse A = 1e-6 at x = 1.1 on the M = 0.01 state",
       moving_perturbation("pert-subsonic", 0.01, 1e-6, 1.1, 0.45)},
      {"pert-supersonic", "pressure pulse A = 1e-6 at x = 1.5 on the M = 2.5 state",
       moving_perturbation("pert-supersonic", 2.5, 1e-6, 1.5, 0.25)},
      {"accuracy-1d", "smooth manufactured solution on [0, 2], phi = x", accuracy_1d()},
      {"accuracy-2d", "smooth manufactured solution on [0, 2]^2, phi = x + y", accuracy_2d()},
      {"sod-moving", "shock tube with phi = x, moving reference (M = 2.5)",
       sod("sod-moving", MovingEquilibrium1D{2.5})},
      {"sod-hydrostatic", "shock tube with phi = x, reference rho = p = exp(-x)",
       sod("sod-hydrostatic", IsothermalEquilibrium{1.0, 1.0})},
      {"rarefaction-1d", "double rarefaction with phi = x^2/2, near-vacuum center", rarefaction_1d()},
      {"rarefaction-2d", "2D double rarefaction in an isothermal layer", rarefaction_2d()},
      {"kepler-wb", "rotating Kepler disk, constant density", kepler("kepler-wb", false)},
      {"kepler-wb-step", "rotating Kepler disk, density step at r = 1.4", kepler("kepler-wb-step", true)},
      {"kepler-perturbation", "density pulse 1e-6 on the Kepler disk", kepler_perturbation()},
      {"kepler-riemann", "Riemann problem on the Kepler disk 1 < r < 4", kepler_riemann()},
  };
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = build();
  return entries;
}

RunConfig catalog_defaults(const std::string& id) {
  for (const auto& e : catalog())
    if (e.id == id) return e.defaults;
  throw ConfigError("unknown problem id '" + id + "' (see `gravdg catalog`)");
}

}  // namespace gravdg::harness
