#pragma once

// Run configuration and the flat `key = value` config format.

#include <map>
#include <string>
#include <vector>

#include "gravdg/equilibria.hpp"
#include "gravdg/scheme_common.hpp"
#include "gravdg/time_integration.hpp"

namespace gravdg::harness {

enum class LimiterMode { kAuto, kOn, kOff };

/// Initial-data families known to the runner.
enum class InitialKind {
  kEquilibrium,         ///< the reference equilibrium plus the optional perturbation
  kAccuracy1D,          ///< smooth manufactured solution, phi = x
  kAccuracy2D,          ///< smooth manufactured solution, phi = x + y
  kSod,                 ///< (1, 0, 1) | (0.125, 0, 0.1) at x = 0
  kDoubleRarefaction1D, ///< (7, -1, 0.2) | (7, 1, 0.2) at x = 0
  kDoubleRarefaction2D, ///< isothermal layer split by u = -2 | 2 at x = 0
  kKeplerRiemann,       ///< Kepler velocity, (1, 1) inside r < 2.5, (0.1, 0.1) outside
  kFile,                ///< nodal field CSV
};

struct Perturbation {
  enum class Variable { kPressure, kDensity };
  double amplitude = 0.0;
  double center_x = 0.0;
  double center_y = 0.0;
  double width = 100.0;  ///< exponent coefficient in A exp(-width |x - c|^2)
  Variable variable = Variable::kPressure;
};

struct RunConfig {
  std::string problem = "custom";
  int dim = 1;
  int k = 2;
  int nx = 200;
  int ny = 200;
  double gamma = 1.4;
  double cfl = 0.5;
  double final_time = 1.0;
  SchemeVariant variant = SchemeVariant::kWBESPP;
  LimiterMode limiter = LimiterMode::kAuto;
  bool strict_pp = false;
  RKMethod method = RKMethod::kSSPRK104;
  InterfaceFluxKind interface_flux = InterfaceFluxKind::kLaxFriedrichs;
  EquilibriumSpec equilibrium = IsothermalEquilibrium{};
  BoundaryKind boundary = BoundaryKind::kFixedToInitial;
  PotentialKind potential = PotentialKind::kLinearX;
  InitialKind initial = InitialKind::kEquilibrium;
  std::string initial_file;
  Perturbation perturbation;
  double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
  double r_inner = 0.0, r_outer = 0.0;  ///< annulus of active cells when r_outer > 0
  std::string output_dir;
  std::vector<std::string> outputs = {"solution", "series", "metadata"};
  long max_steps = 100000000;

  bool limiter_enabled() const {
    return limiter == LimiterMode::kOn || (limiter == LimiterMode::kAuto && limiter_by_default(variant));
  }
  bool wants(const std::string& output) const;
};

/// Parses `key = value` lines; `#` starts a comment. Throws ParseError with the line number.
std::map<std::string, std::string> parse_config_text(const std::string& text);

/// Applies settings in key order; unknown keys and bad values throw ConfigError.
void apply_settings(RunConfig& cfg, const std::map<std::string, std::string>& settings);

/// Checks ranges and cross-field consistency; throws ConfigError.
void validate(const RunConfig& cfg);

/// Catalog defaults for the `problem` key (if any), then all other settings.
RunConfig config_from_settings(const std::map<std::string, std::string>& settings);

/// Reads a config file and applies `overrides` (from --set key=value) on top.
RunConfig load_config(const std::string& path, const std::map<std::string, std::string>& overrides = {});

/// Canonical `key = value` dump; round-trips through config_from_settings.
std::string canonical_text(const RunConfig& cfg);

/// FNV-1a 64-bit of canonical_text, hex encoded.
std::string config_hash(const RunConfig& cfg);

std::string to_string(InitialKind k);
std::string to_string(PotentialKind k);
std::string to_string(LimiterMode m);

}  // namespace gravdg::harness
