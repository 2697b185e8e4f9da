#include "gravdg/harness/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "json.hpp"

#include "gravdg/diagnostics.hpp"
#include "gravdg/errors.hpp"
#include "gravdg/field_io.hpp"
#include "gravdg/limiter.hpp"

namespace gravdg::harness {

std::string to_string(RunStatus s) {
  switch (s) {
    case RunStatus::kCompleted: return "completed";
    case RunStatus::kExpectedFailure: return "expected-failure";
    case RunStatus::kFailed: return "failed";
  }
  return "?";
}

int exit_code(RunStatus s) {
  switch (s) {
    case RunStatus::kCompleted: return 0;
    case RunStatus::kExpectedFailure: return 2;
    case RunStatus::kFailed: return 1;
  }
  return 1;
}

namespace {

constexpr double kPi = std::numbers::pi;

State<1> accuracy_1d_state(double x, double t, const GasParams& g) {
  const double xi = kPi * (x - t);
  Primitive<1> w;
  w.rho = 1.0 + 0.2 * std::sin(xi);
  w.vel = {1.0};
  w.p = 5.5 - x + t + 0.2 * std::cos(xi) / kPi;
  return conserved_from_primitive(w, g);
}

State<2> accuracy_2d_state(double x, double y, double t, const GasParams& g) {
  const double xi = kPi * (x + y - 2.0 * t);
  Primitive<2> w;
  w.rho = 1.0 + 0.2 * std::sin(xi);
  w.vel = {1.0, 1.0};
  w.p = 5.5 - x - y + 2.0 * t + 0.2 * std::cos(xi) / kPi;
  return conserved_from_primitive(w, g);
}

template <int D>
State<D> with_perturbation(const State<D>& ue, const Perturbation& pert, double x, double y, const GasParams& g) {
  if (pert.amplitude == 0.0) return ue;
  double r2 = (x - pert.center_x) * (x - pert.center_x);
  if constexpr (D == 2) r2 += (y - pert.center_y) * (y - pert.center_y);
  const double bump = pert.amplitude * std::exp(-pert.width * r2);
  Primitive<D> w = primitive_from_conserved(ue, g);
  if (pert.variable == Perturbation::Variable::kPressure)
    w.p += bump;
  else
    w.rho += bump;
  return conserved_from_primitive(w, g);
}

template <int D>
State<D> initial_state(const RunConfig& cfg, const GasParams& g, double x, double y) {
  if constexpr (D == 1) {
    switch (cfg.initial) {
      case InitialKind::kAccuracy1D: return accuracy_1d_state(x, 0.0, g);
      case InitialKind::kSod: {
        Primitive<1> w;
        w.rho = x < 0.0 ? 1.0 : 0.125;
        w.p = x < 0.0 ? 1.0 : 0.1;
        return conserved_from_primitive(w, g);
      }
      case InitialKind::kDoubleRarefaction1D: {
        Primitive<1> w;
        w.rho = 7.0;
        w.vel = {x < 0.0 ? -1.0 : 1.0};
        w.p = 0.2;
        return conserved_from_primitive(w, g);
      }
      default: break;
    }
  } else {
    switch (cfg.initial) {
      case InitialKind::kAccuracy2D: return accuracy_2d_state(x, y, 0.0, g);
      case InitialKind::kDoubleRarefaction2D: {
        Primitive<2> w;
        w.rho = std::exp(-0.5 * (x * x + y * y) / 0.4);
        w.p = 0.4 * w.rho;
        w.vel = {x <= 0.0 ? -2.0 : 2.0, 0.0};
        return conserved_from_primitive(w, g);
      }
      case InitialKind::kKeplerRiemann: {
        const double r = std::hypot(x, y);
        Primitive<2> w;
        const bool inside = r < 2.5;
        w.rho = inside ? 1.0 : 0.1;
        w.p = inside ? 1.0 : 0.1;
        w.vel = {-y / r / std::sqrt(r), x / r / std::sqrt(r)};
        return conserved_from_primitive(w, g);
      }
      default: break;
    }
  }
  throw ConfigError("initial data '" + to_string(cfg.initial) + "' is not point-evaluable");
}

template <int D>
ExactSolution<D> exact_for(const RunConfig& cfg, const GasParams& g) {
  if constexpr (D == 1) {
    if (cfg.initial == InitialKind::kAccuracy1D)
      return [g](double x, double, double t) { return accuracy_1d_state(x, t, g); };
  } else {
    if (cfg.initial == InitialKind::kAccuracy2D)
      return [g](double x, double y, double t) { return accuracy_2d_state(x, y, t, g); };
  }
  return {};
}

template <int D>
std::vector<std::array<double, 2>> coords2(const Setup<D>& s) {
  std::vector<std::array<double, 2>> out;
  for (const auto& c : node_coordinates(s.mesh, s.ops)) {
    if constexpr (D == 1)
      out.push_back({c[0], 0.0});
    else
      out.push_back(c);
  }
  return out;
}

}  // namespace

template <int D>
Setup<D> build_setup(const RunConfig& cfg) {
  validate(cfg);
  if (cfg.dim != D) throw ConfigError("config dimension does not match the requested solver");
  Setup<D> s;
  s.config = cfg;
  s.gas = make_gas_params(cfg.gamma);
  s.ops = build_operators(cfg.k);
  s.potential.kind = cfg.potential;
  if constexpr (D == 1) {
    s.mesh = make_mesh_1d(cfg.xmin, cfg.xmax, cfg.nx);
    s.cell_volume = s.mesh.dx;
    s.spacing = {s.mesh.dx};
  } else {
    Geometry2D geo;
    geo.xmin = cfg.xmin;
    geo.xmax = cfg.xmax;
    geo.ymin = cfg.ymin;
    geo.ymax = cfg.ymax;
    geo.nx = cfg.nx;
    geo.ny = cfg.ny;
    geo.periodic = cfg.boundary == BoundaryKind::kPeriodic;
    geo.r_inner = cfg.r_inner;
    geo.r_outer = cfg.r_outer;
    s.mesh = make_mesh_2d(geo);
    s.cell_volume = s.mesh.cell_volume();
    s.spacing = {s.mesh.dx, s.mesh.dy};
  }
  s.avg_weights = average_weights(s.ops, D);
  s.exact = exact_for<D>(cfg, s.gas);

  EquilibriumField<D> eq = sample_equilibrium(s.mesh, s.ops, cfg.equilibrium, s.potential, s.gas);

  // Initial field.
  const auto xy = coords2(s);
  if constexpr (D == 1)
    s.initial = NodalField<1>(s.mesh.n_cells, cfg.k);
  else
    s.initial = NodalField<2>(s.mesh.n_cells(), cfg.k);
  if (cfg.initial == InitialKind::kEquilibrium) {
    for (size_t i = 0; i < s.initial.size(); ++i)
      s.initial.values[i] = with_perturbation<D>(eq.state.values[i], cfg.perturbation, xy[i][0], xy[i][1], s.gas);
  } else if (cfg.initial == InitialKind::kFile) {
    FieldFile<D> file = read_field_csv<D>(cfg.initial_file);
    if (!file.field.same_shape(s.initial)) throw ConfigError("initial file does not match the mesh");
    s.initial = file.field;
  } else {
    for (size_t i = 0; i < s.initial.size(); ++i) s.initial.values[i] = initial_state<D>(cfg, s.gas, xy[i][0], xy[i][1]);
  }

  BoundaryCondition<D> bc;
  bc.kind = cfg.boundary;
  bc.exact = s.exact;
  s.scheme = std::make_shared<SchemeFor<D>>(s.mesh, s.ops, s.gas, std::move(eq), bc, cfg.variant,
                                            cfg.interface_flux);
  if (cfg.boundary == BoundaryKind::kFixedToInitial) s.scheme->capture_boundary(s.initial);
  return s;
}

template <int D>
NodalField<D> sample_exact(const Setup<D>& s, double t) {
  if (!s.exact) throw ConfigError("problem '" + s.config.problem + "' has no exact solution");
  NodalField<D> out = s.initial;
  const auto xy = coords2(s);
  for (size_t i = 0; i < out.size(); ++i) out.values[i] = s.exact(xy[i][0], xy[i][1], t);
  return out;
}

namespace {

template <int D>
SeriesRow make_row(const Setup<D>& s, const NodalField<D>& u, long step, double t, double dt) {
  SeriesRow r;
  r.step = step;
  r.t = t;
  r.dt = dt;
  r.mass = total_mass(u, s.avg_weights, s.cell_volume);
  r.entropy = total_entropy(u, s.avg_weights, s.cell_volume, s.gas);
  const Extrema e = nodal_extrema(u, s.gas);
  r.min_rho = e.min_rho;
  r.min_p = e.min_p;
  return r;
}

/// Forward-Euler positivity bound with alpha_0 = max nodal |u| + c per axis.
template <int D>
double positivity_bound(const Setup<D>& s, const NodalField<D>& u, std::type_identity_t<std::array<double, D>> alpha) {
  const auto& scheme = *s.scheme;
  if constexpr (D == 1)
    return pp_timestep_bound(u, scheme.balancing_source(), scheme.equilibrium().grad_phi, s.ops, s.mesh.dx,
                             alpha[0], s.gas)
        .bound();
  else
    return pp_timestep_bound(u, scheme.balancing_source(), scheme.equilibrium().grad_phi, s.ops, s.mesh.dx,
                             s.mesh.dy, alpha, s.gas)
        .bound();
}

template <int D>
void require_admissible_field(const NodalField<D>& u, const GasParams& gas) {
  for (int c = 0; c < u.n_cells; ++c)
    for (int a = 0; a < u.nodes_per_cell; ++a)
      if (!is_admissible(u.at(c, a), gas)) throw EvaluationError("inadmissible state after the step", c, a);
}

bool is_ablation_blowup(SchemeVariant v) { return v == SchemeVariant::kNonES || v == SchemeVariant::kNonPP; }

}  // namespace

template <int D>
void advance(Simulation<D>& sim) {
  const auto start = std::chrono::steady_clock::now();
  Setup<D>& s = sim.setup;
  const RunConfig& cfg = s.config;
  StepController ctl;
  ctl.cfl = cfg.cfl;
  ctl.final_time = cfg.final_time;
  ctl.method = cfg.method;
  ctl.strict_pp = cfg.strict_pp;

  const auto scheme = s.scheme;
  RhsFunction<D> rhs = [scheme](const NodalField<D>& u, double t, NodalField<D>& out) { scheme->rhs(u, t, out); };
  StageLimiter<D> limiter;
  const LimiterParams lp;
  if (cfg.limiter_enabled()) {
    limiter = [&s, lp](NodalField<D>& u) { limit_field<D>(u, s.avg_weights, lp, s.gas); };
  }
  StepWorkspace<D> ws;
  const bool check_pp = cfg.limiter_enabled() || cfg.strict_pp;

  const bool record = cfg.wants("series");
  if (record && sim.series.empty()) sim.series.push_back(make_row(s, sim.field, 0, sim.t, 0.0));
  try {
    while (sim.t < cfg.final_time && sim.steps < cfg.max_steps) {
      const auto nodal = max_nodal_speeds(sim.field, s.gas.gamma);
      const double ppb = check_pp ? positivity_bound(s, sim.field, nodal)
                                  : std::numeric_limits<double>::infinity();
      const StepChoice ch = choose_dt<D>(ctl, sim.t, nodal, s.spacing, ppb);
      if (ch.pp_bound_violated) ++sim.pp_bound_violations;
      try {
        rk_step<D>(sim.field, sim.t, ch.dt, cfg.method, rhs, limiter, ws);
        require_admissible_field(sim.field, s.gas);
      } catch (EvaluationError& e) {
        e.step = sim.steps + 1;
        throw;
      }
      ++sim.steps;
      sim.t = ch.dt == cfg.final_time - sim.t ? cfg.final_time : sim.t + ch.dt;
      sim.dt_history.push_back(ch.dt);
      if (record) sim.series.push_back(make_row(s, sim.field, sim.steps, sim.t, ch.dt));
    }
    sim.status = RunStatus::kCompleted;
  } catch (const EvaluationError& e) {
    sim.status = is_ablation_blowup(cfg.variant) ? RunStatus::kExpectedFailure : RunStatus::kFailed;
    sim.failure = FailureInfo{e.step, e.stage, e.cell, e.node, e.what()};
  } catch (const DomainError& e) {
    sim.status = RunStatus::kFailed;
    sim.failure = FailureInfo{sim.steps + 1, -1, -1, -1, e.what()};
  } catch (const ControllerError& e) {
    sim.status = RunStatus::kFailed;
    sim.failure = FailureInfo{sim.steps + 1, -1, -1, -1, e.what()};
  }
  sim.runtime_seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

template <int D>
Simulation<D> simulate(const RunConfig& cfg) {
  Simulation<D> sim;
  sim.setup = build_setup<D>(cfg);
  sim.field = sim.setup.initial;
  advance(sim);
  return sim;
}

std::string series_csv_header() { return "step,t,dt,mass,entropy,min_rho,min_p"; }

void write_series_csv(const std::string& path, const std::vector<SeriesRow>& rows) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path);
  os << series_csv_header() << '\n';
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%ld,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.step, r.t, r.dt, r.mass,
                  r.entropy, r.min_rho, r.min_p);
    os << buf;
  }
}

template <int D>
void write_perturbation_csv(const std::string& path, const Setup<D>& s, const NodalField<D>& u) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path);
  os << (D == 1 ? "x,cell,i1,dp,du,drho" : "x,y,cell,i1,j1,dp,du,dv,drho") << '\n';
  const auto xy = coords2(s);
  const auto& eq = s.equilibrium().state;
  const int n = s.ops.size();
  char buf[64];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, ",%.17g", v);
    os << buf;
  };
  for (int c = 0; c < u.n_cells; ++c)
    for (int a = 0; a < u.nodes_per_cell; ++a) {
      const size_t i = static_cast<size_t>(c) * u.nodes_per_cell + a;
      const auto w = primitive_from_conserved(u.values[i], s.gas);
      const auto we = primitive_from_conserved(eq.values[i], s.gas);
      std::snprintf(buf, sizeof buf, "%.17g", xy[i][0]);
      os << buf;
      if constexpr (D == 2) put(xy[i][1]);
      os << ',' << c << ',' << (a % n);
      if constexpr (D == 2) os << ',' << (a / n);
      put(w.p - we.p);
      for (int d = 0; d < D; ++d) put(w.vel[d] - we.vel[d]);
      put(w.rho - we.rho);
      os << '\n';
    }
}

namespace {

template <int D>
RunSummary run_and_write(const RunConfig& cfg) {
  Simulation<D> sim = simulate<D>(cfg);
  const Setup<D>& s = sim.setup;
  RunSummary sum;
  sum.status = sim.status;
  sum.steps = sim.steps;
  sum.t = sim.t;
  sum.failure = sim.failure;
  sum.pp_bound_violations = sim.pp_bound_violations;
  sum.config_hash = config_hash(cfg);
  sum.runtime_seconds = sim.runtime_seconds;
  if (s.exact && sim.status == RunStatus::kCompleted) {
    const NodalField<D> ex = sample_exact(s, sim.t);
    sum.density_error = error_norms(sim.field, ex, 0, s.avg_weights, s.cell_volume);
  }
  if (cfg.output_dir.empty()) return sum;

  namespace fs = std::filesystem;
  fs::create_directories(cfg.output_dir);
  const fs::path dir(cfg.output_dir);
  if (cfg.wants("solution")) write_field_csv((dir / "solution.csv").string(), sim.field, s.mesh, s.ops);
  if (cfg.wants("initial")) write_field_csv((dir / "initial.csv").string(), s.initial, s.mesh, s.ops);
  if (cfg.wants("equilibrium"))
    write_field_csv((dir / "equilibrium.csv").string(), s.equilibrium().state, s.mesh, s.ops);
  if (cfg.wants("perturbation")) write_perturbation_csv((dir / "perturbation.csv").string(), s, sim.field);
  if (cfg.wants("series")) write_series_csv((dir / "series.csv").string(), sim.series);
  if (cfg.wants("errors") && sum.density_error) {
    std::ofstream os(dir / "errors.csv");
    char buf[200];
    std::snprintf(buf, sizeof buf, "variable,L1,L2,Linf\nrho,%.17g,%.17g,%.17g\n", sum.density_error->l1,
                  sum.density_error->l2, sum.density_error->linf);
    os << buf;
  }
  if (cfg.wants("metadata")) {
    nlohmann::json j;
    j["config"] = canonical_text(cfg);
    j["config_hash"] = sum.config_hash;
    j["status"] = to_string(sim.status);
    j["exit_code"] = exit_code(sim.status);
    j["steps"] = sim.steps;
    j["final_time"] = sim.t;
    j["runtime_seconds"] = sim.runtime_seconds;
    j["workers"] = worker_count();
    j["limiter_enabled"] = cfg.limiter_enabled();
    j["dt_policy"] = "recomputed every step from the current field";
    j["pp_bound_violations"] = sim.pp_bound_violations;
    j["dt"] = sim.dt_history;
    if (!sim.series.empty()) {
      std::vector<double> min_rho, min_p;
      for (const auto& r : sim.series) {
        min_rho.push_back(r.min_rho);
        min_p.push_back(r.min_p);
      }
      j["min_rho"] = min_rho;
      j["min_p"] = min_p;
    }
    if (sim.failure) {
      j["failure"] = {{"step", sim.failure->step},
                      {"stage", sim.failure->stage},
                      {"cell", sim.failure->cell},
                      {"node", sim.failure->node},
                      {"message", sim.failure->message}};
    }
    if (sum.density_error)
      j["density_error"] = {{"L1", sum.density_error->l1}, {"L2", sum.density_error->l2}, {"Linf", sum.density_error->linf}};
    std::ofstream os(dir / "metadata.json");
    os << j.dump(2) << '\n';
  }
  return sum;
}

template <int D>
ErrorNorms study_error(RunConfig cfg, const std::string& reference, int var) {
  cfg.outputs.clear();
  Simulation<D> sim = simulate<D>(cfg);
  if (sim.status != RunStatus::kCompleted)
    throw EvaluationError("mesh study run N=" + std::to_string(cfg.nx) + " did not complete: " +
                          (sim.failure ? sim.failure->message : std::string("?")));
  const Setup<D>& s = sim.setup;
  NodalField<D> ref;
  if (reference == "exact")
    ref = sample_exact(s, sim.t);
  else if (reference == "initial")
    ref = s.initial;
  else if (reference == "equilibrium")
    ref = s.equilibrium().state;
  else
    throw ConfigError("unknown reference '" + reference + "' (exact, initial, equilibrium)");
  return error_norms(sim.field, ref, var, s.avg_weights, s.cell_volume);
}

}  // namespace

RunSummary run_case(const RunConfig& cfg) {
  return cfg.dim == 1 ? run_and_write<1>(cfg) : run_and_write<2>(cfg);
}

ErrorReport mesh_study(const RunConfig& base, const std::vector<int>& meshes, const std::string& reference, int var) {
  std::vector<ErrorNorms> errs;
  for (int n : meshes) {
    RunConfig cfg = base;
    cfg.nx = cfg.ny = n;
    errs.push_back(cfg.dim == 1 ? study_error<1>(cfg, reference, var) : study_error<2>(cfg, reference, var));
  }
  return make_report(meshes, errs);
}

template Setup<1> build_setup<1>(const RunConfig&);
template Setup<2> build_setup<2>(const RunConfig&);
template NodalField<1> sample_exact<1>(const Setup<1>&, double);
template NodalField<2> sample_exact<2>(const Setup<2>&, double);
template Simulation<1> simulate<1>(const RunConfig&);
template Simulation<2> simulate<2>(const RunConfig&);
template void advance<1>(Simulation<1>&);
template void advance<2>(Simulation<2>&);
template void write_perturbation_csv<1>(const std::string&, const Setup<1>&, const NodalField<1>&);
template void write_perturbation_csv<2>(const std::string&, const Setup<2>&, const NodalField<2>&);

}  // namespace gravdg::harness
