#pragma once

// Builds a solver from a RunConfig, advances it to the final time, and writes artifacts.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "gravdg/harness/config.hpp"
#include "gravdg/harness/norms.hpp"
#include "gravdg/scheme1d.hpp"
#include "gravdg/scheme2d.hpp"

namespace gravdg::harness {

template <int D>
using MeshFor = std::conditional_t<D == 1, Mesh1D, Mesh2D>;
template <int D>
using SchemeFor = std::conditional_t<D == 1, Scheme1D, Scheme2D>;
template <int D>
using ExactSolution = std::function<State<D>(double, double, double)>;

template <int D>
struct Setup {
  RunConfig config;
  GasParams gas;
  LobattoOperators ops;
  MeshFor<D> mesh;
  GravityPotential potential;
  std::vector<double> avg_weights;
  double cell_volume = 0.0;
  std::array<double, D> spacing{};
  NodalField<D> initial;
  ExactSolution<D> exact;  ///< empty unless the initial data has a known evolution
  std::shared_ptr<SchemeFor<D>> scheme;

  const EquilibriumField<D>& equilibrium() const { return scheme->equilibrium(); }
};

/// Throws ConfigError / DomainError for invalid setups.
template <int D>
Setup<D> build_setup(const RunConfig& cfg);

/// Exact solution at every node at time t; throws ConfigError when unknown.
template <int D>
NodalField<D> sample_exact(const Setup<D>& setup, double t);

struct SeriesRow {
  long step = 0;
  double t = 0.0;
  double dt = 0.0;
  double mass = 0.0;
  double entropy = 0.0;
  double min_rho = 0.0;
  double min_p = 0.0;
};

struct FailureInfo {
  long step = -1;
  int stage = -1;
  int cell = -1;
  int node = -1;
  std::string message;
};

enum class RunStatus { kCompleted, kExpectedFailure, kFailed };

std::string to_string(RunStatus s);

template <int D>
struct Simulation {
  Setup<D> setup;
  NodalField<D> field;
  double t = 0.0;
  long steps = 0;
  std::vector<SeriesRow> series;  ///< filled when the "series" output is requested
  std::vector<double> dt_history;
  RunStatus status = RunStatus::kCompleted;
  std::optional<FailureInfo> failure;
  long pp_bound_violations = 0;
  double runtime_seconds = 0.0;
};

/// Runs the configured problem without writing files. Solver failures are captured in
/// `status`/`failure`; configuration errors propagate.
template <int D>
Simulation<D> simulate(const RunConfig& cfg);

/// Continues an existing simulation to setup.config.final_time.
template <int D>
void advance(Simulation<D>& sim);

struct RunSummary {
  RunStatus status = RunStatus::kCompleted;
  long steps = 0;
  double t = 0.0;
  std::optional<FailureInfo> failure;
  long pp_bound_violations = 0;
  std::string config_hash;
  double runtime_seconds = 0.0;
  std::optional<ErrorNorms> density_error;  ///< vs exact solution when known
};

/// simulate() plus the requested artifacts in cfg.output_dir (if set).
RunSummary run_case(const RunConfig& cfg);

/// 0 completed, 2 documented ablation blow-up, 1 otherwise.
int exit_code(RunStatus s);

std::string series_csv_header();
void write_series_csv(const std::string& path, const std::vector<SeriesRow>& rows);

/// Per-node p - p^e, velocity - velocity^e, rho - rho^e.
template <int D>
void write_perturbation_csv(const std::string& path, const Setup<D>& setup, const NodalField<D>& u);

/// Errors of one variable over a mesh sequence (runs each mesh to the final time).
/// reference: "exact" compares with the exact solution, "initial" with the initial field.
ErrorReport mesh_study(const RunConfig& base, const std::vector<int>& meshes, const std::string& reference,
                       int var = 0);

}  // namespace gravdg::harness
