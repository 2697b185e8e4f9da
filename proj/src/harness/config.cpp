#include "gravdg/harness/config.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "gravdg/errors.hpp"
#include "gravdg/harness/catalog.hpp"

namespace gravdg::harness {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double to_double(const std::string& key, const std::string& v) {
  size_t pos = 0;
  double d;
  try {
    d = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': expected a number, got '" + v + "'");
  }
  if (pos != v.size()) throw ConfigError("key '" + key + "': expected a number, got '" + v + "'");
  return d;
}

long to_long(const std::string& key, const std::string& v) {
  size_t pos = 0;
  long n;
  try {
    n = std::stol(v, &pos);
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': expected an integer, got '" + v + "'");
  }
  if (pos != v.size()) throw ConfigError("key '" + key + "': expected an integer, got '" + v + "'");
  return n;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("key '" + key + "': expected true or false, got '" + v + "'");
}

InitialKind parse_initial(const std::string& s) {
  static const std::pair<const char*, InitialKind> kinds[] = {
      {"equilibrium", InitialKind::kEquilibrium},
      {"accuracy-1d", InitialKind::kAccuracy1D},
      {"accuracy-2d", InitialKind::kAccuracy2D},
      {"sod", InitialKind::kSod},
      {"double-rarefaction-1d", InitialKind::kDoubleRarefaction1D},
      {"double-rarefaction-2d", InitialKind::kDoubleRarefaction2D},
      {"kepler-riemann", InitialKind::kKeplerRiemann},
      {"file", InitialKind::kFile},
  };
  for (const auto& [name, kind] : kinds)
    if (s == name) return kind;
  throw ConfigError("unknown initial data '" + s + "'");
}

PotentialKind parse_potential(const std::string& s) {
  if (s == "zero") return PotentialKind::kZero;
  if (s == "x") return PotentialKind::kLinearX;
  if (s == "x+y") return PotentialKind::kLinearXY;
  if (s == "quadratic") return PotentialKind::kQuadraticRadial;
  if (s == "kepler") return PotentialKind::kKeplerian;
  throw ConfigError("unknown potential '" + s + "' (zero, x, x+y, quadratic, kepler)");
}

EquilibriumSpec parse_equilibrium_family(const std::string& s) {
  if (s == "isothermal") return IsothermalEquilibrium{};
  if (s == "isentropic") return IsentropicEquilibrium{};
  if (s == "polytropic") return PolytropicEquilibrium{};
  if (s == "moving") return MovingEquilibrium1D{};
  if (s == "kepler") return KeplerianDisk{};
  if (s == "kepler-step") return KeplerianDisk{true};
  if (s == "custom") return CustomNodalEquilibrium{};
  throw ConfigError("unknown equilibrium '" + s + "' (isothermal, isentropic, polytropic, moving, kepler, "
                    "kepler-step, custom)");
}

void apply_equilibrium_param(EquilibriumSpec& eq, const std::string& key, const std::string& v) {
  auto bad = [&] { throw ConfigError("key '" + key + "' does not apply to the selected equilibrium"); };
  if (auto* e = std::get_if<IsothermalEquilibrium>(&eq)) {
    if (key == "eq_rho0") e->rho0 = to_double(key, v);
    else if (key == "eq_RT0") e->RT0 = to_double(key, v);
    else bad();
  } else if (auto* e = std::get_if<IsentropicEquilibrium>(&eq)) {
    if (key == "eq_K0") e->K0 = to_double(key, v);
    else if (key == "eq_C") e->C = to_double(key, v);
    else bad();
  } else if (auto* e = std::get_if<PolytropicEquilibrium>(&eq)) {
    if (key == "eq_nu") e->nu = to_double(key, v);
    else if (key == "eq_K0") e->K0 = to_double(key, v);
    else if (key == "eq_C") e->C = to_double(key, v);
    else bad();
  } else if (auto* e = std::get_if<MovingEquilibrium1D>(&eq)) {
    if (key == "eq_mach") e->mach = to_double(key, v);
    else bad();
  } else if (auto* e = std::get_if<KeplerianDisk>(&eq)) {
    if (key == "eq_step_radius") e->step_radius = to_double(key, v);
    else bad();
  } else if (auto* e = std::get_if<CustomNodalEquilibrium>(&eq)) {
    if (key == "eq_file") e->path = v;
    else bad();
  }
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

bool RunConfig::wants(const std::string& output) const {
  return std::find(outputs.begin(), outputs.end(), output) != outputs.end();
}

std::string to_string(InitialKind k) {
  switch (k) {
    case InitialKind::kEquilibrium: return "equilibrium";
    case InitialKind::kAccuracy1D: return "accuracy-1d";
    case InitialKind::kAccuracy2D: return "accuracy-2d";
    case InitialKind::kSod: return "sod";
    case InitialKind::kDoubleRarefaction1D: return "double-rarefaction-1d";
    case InitialKind::kDoubleRarefaction2D: return "double-rarefaction-2d";
    case InitialKind::kKeplerRiemann: return "kepler-riemann";
    case InitialKind::kFile: return "file";
  }
  return "?";
}

std::string to_string(PotentialKind k) {
  switch (k) {
    case PotentialKind::kZero: return "zero";
    case PotentialKind::kLinearX: return "x";
    case PotentialKind::kLinearXY: return "x+y";
    case PotentialKind::kQuadraticRadial: return "quadratic";
    case PotentialKind::kKeplerian: return "kepler";
  }
  return "?";
}

std::string to_string(LimiterMode m) {
  switch (m) {
    case LimiterMode::kAuto: return "auto";
    case LimiterMode::kOn: return "on";
    case LimiterMode::kOff: return "off";
  }
  return "?";
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> out;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", lineno);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError("empty key", lineno);
    if (out.count(key)) throw ParseError("duplicate key '" + key + "'", lineno);
    out[key] = value;
  }
  return out;
}

void apply_settings(RunConfig& cfg, const std::map<std::string, std::string>& settings) {
  // The equilibrium family must be set before its parameters.
  if (auto it = settings.find("equilibrium"); it != settings.end())
    cfg.equilibrium = parse_equilibrium_family(it->second);

  for (const auto& [key, v] : settings) {
    if (key == "equilibrium") continue;
    if (key == "problem") cfg.problem = v;
    else if (key == "dim") cfg.dim = static_cast<int>(to_long(key, v));
    else if (key == "k") cfg.k = static_cast<int>(to_long(key, v));
    else if (key == "N") cfg.nx = cfg.ny = static_cast<int>(to_long(key, v));
    else if (key == "Nx") cfg.nx = static_cast<int>(to_long(key, v));
    else if (key == "Ny") cfg.ny = static_cast<int>(to_long(key, v));
    else if (key == "gamma") cfg.gamma = to_double(key, v);
    else if (key == "cfl") cfg.cfl = to_double(key, v);
    else if (key == "T") cfg.final_time = to_double(key, v);
    else if (key == "variant") cfg.variant = parse_variant(v);
    else if (key == "limiter") {
      if (v == "auto") cfg.limiter = LimiterMode::kAuto;
      else if (v == "on") cfg.limiter = LimiterMode::kOn;
      else if (v == "off") cfg.limiter = LimiterMode::kOff;
      else throw ConfigError("key 'limiter': expected auto, on or off");
    }
    else if (key == "strict_pp") cfg.strict_pp = to_bool(key, v);
    else if (key == "method") cfg.method = parse_method(v);
    else if (key == "flux") {
      if (v == "lf") cfg.interface_flux = InterfaceFluxKind::kLaxFriedrichs;
      else if (v == "ec") cfg.interface_flux = InterfaceFluxKind::kEntropyConservative;
      else throw ConfigError("key 'flux': expected lf or ec");
    }
    else if (key.rfind("eq_", 0) == 0) apply_equilibrium_param(cfg.equilibrium, key, v);
    else if (key == "boundary") cfg.boundary = parse_boundary(v);
    else if (key == "potential") cfg.potential = parse_potential(v);
    else if (key == "initial") cfg.initial = parse_initial(v);
    else if (key == "initial_file") cfg.initial_file = v;
    else if (key == "pert_amplitude") cfg.perturbation.amplitude = to_double(key, v);
    else if (key == "pert_x") cfg.perturbation.center_x = to_double(key, v);
    else if (key == "pert_y") cfg.perturbation.center_y = to_double(key, v);
    else if (key == "pert_width") cfg.perturbation.width = to_double(key, v);
    else if (key == "pert_variable") {
      if (v == "pressure") cfg.perturbation.variable = Perturbation::Variable::kPressure;
      else if (v == "density") cfg.perturbation.variable = Perturbation::Variable::kDensity;
      else throw ConfigError("key 'pert_variable': expected pressure or density");
    }
    else if (key == "xmin") cfg.xmin = to_double(key, v);
    else if (key == "xmax") cfg.xmax = to_double(key, v);
    else if (key == "ymin") cfg.ymin = to_double(key, v);
    else if (key == "ymax") cfg.ymax = to_double(key, v);
    else if (key == "r_inner") cfg.r_inner = to_double(key, v);
    else if (key == "r_outer") cfg.r_outer = to_double(key, v);
    else if (key == "output_dir") cfg.output_dir = v;
    else if (key == "outputs") cfg.outputs = split_list(v);
    else if (key == "max_steps") cfg.max_steps = to_long(key, v);
    else throw ConfigError("unknown config key '" + key + "'");
  }
}

void validate(const RunConfig& cfg) {
  if (cfg.dim != 1 && cfg.dim != 2) throw ConfigError("dim must be 1 or 2");
  if (cfg.k < 1 || cfg.k > kMaxDegree) throw ConfigError("k must lie in [1, 8]");
  if (cfg.nx < 1 || (cfg.dim == 2 && cfg.ny < 1)) throw ConfigError("mesh sizes must be positive");
  make_gas_params(cfg.gamma);
  if (!(cfg.cfl > 0.0) || cfg.cfl > 1.0) throw ConfigError("cfl must lie in (0, 1]");
  if (!(cfg.final_time > 0.0)) throw ConfigError("T must be positive");
  if (!(cfg.xmax > cfg.xmin)) throw ConfigError("xmax must exceed xmin");
  if (cfg.dim == 2 && !(cfg.ymax > cfg.ymin)) throw ConfigError("ymax must exceed ymin");
  if (cfg.max_steps < 1) throw ConfigError("max_steps must be positive");
  if (cfg.dim == 2 && std::holds_alternative<MovingEquilibrium1D>(cfg.equilibrium))
    throw ConfigError("moving equilibrium is one-dimensional");
  if (cfg.dim == 1 && std::holds_alternative<KeplerianDisk>(cfg.equilibrium))
    throw ConfigError("Kepler disk equilibrium is two-dimensional");
  if (const auto* c = std::get_if<CustomNodalEquilibrium>(&cfg.equilibrium); c && c->path.empty())
    throw ConfigError("custom equilibrium requires eq_file");
  if (cfg.initial == InitialKind::kFile && cfg.initial_file.empty())
    throw ConfigError("initial = file requires initial_file");
  const bool needs_1d = cfg.initial == InitialKind::kAccuracy1D || cfg.initial == InitialKind::kSod ||
                        cfg.initial == InitialKind::kDoubleRarefaction1D;
  const bool needs_2d = cfg.initial == InitialKind::kAccuracy2D ||
                        cfg.initial == InitialKind::kDoubleRarefaction2D ||
                        cfg.initial == InitialKind::kKeplerRiemann;
  if ((needs_1d && cfg.dim != 1) || (needs_2d && cfg.dim != 2))
    throw ConfigError("initial data '" + to_string(cfg.initial) + "' does not match dim");
  if (cfg.boundary == BoundaryKind::kExact && cfg.initial != InitialKind::kAccuracy1D &&
      cfg.initial != InitialKind::kAccuracy2D)
    throw ConfigError("boundary = exact requires initial data with a known exact solution");
  if (cfg.r_outer > 0.0 && cfg.boundary == BoundaryKind::kPeriodic)
    throw ConfigError("periodic boundaries require a full rectangle");
  static const char* known[] = {"solution", "series", "metadata", "equilibrium", "perturbation", "errors", "initial"};
  for (const auto& o : cfg.outputs)
    if (std::find(std::begin(known), std::end(known), o) == std::end(known))
      throw ConfigError("unknown output '" + o + "'");
}

RunConfig config_from_settings(const std::map<std::string, std::string>& settings) {
  RunConfig cfg;
  if (auto it = settings.find("problem"); it != settings.end() && it->second != "custom")
    cfg = catalog_defaults(it->second);
  apply_settings(cfg, settings);
  validate(cfg);
  return cfg;
}

RunConfig load_config(const std::string& path, const std::map<std::string, std::string>& overrides) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file " + path);
  std::stringstream buf;
  buf << is.rdbuf();
  auto settings = parse_config_text(buf.str());
  for (const auto& [k, v] : overrides) settings[k] = v;
  return config_from_settings(settings);
}

std::string canonical_text(const RunConfig& cfg) {
  std::ostringstream os;
  auto kv = [&](const std::string& k, const std::string& v) { os << k << " = " << v << '\n'; };
  kv("problem", cfg.problem);
  kv("dim", std::to_string(cfg.dim));
  kv("k", std::to_string(cfg.k));
  kv("Nx", std::to_string(cfg.nx));
  kv("Ny", std::to_string(cfg.ny));
  kv("gamma", num(cfg.gamma));
  kv("cfl", num(cfg.cfl));
  kv("T", num(cfg.final_time));
  kv("variant", to_string(cfg.variant));
  kv("limiter", to_string(cfg.limiter));
  kv("strict_pp", cfg.strict_pp ? "true" : "false");
  kv("method", to_string(cfg.method));
  kv("flux", cfg.interface_flux == InterfaceFluxKind::kLaxFriedrichs ? "lf" : "ec");
  std::visit(
      [&](const auto& e) {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, IsothermalEquilibrium>) {
          kv("equilibrium", "isothermal");
          kv("eq_rho0", num(e.rho0));
          kv("eq_RT0", num(e.RT0));
        } else if constexpr (std::is_same_v<T, IsentropicEquilibrium>) {
          kv("equilibrium", "isentropic");
          kv("eq_K0", num(e.K0));
          kv("eq_C", num(e.C));
        } else if constexpr (std::is_same_v<T, PolytropicEquilibrium>) {
          kv("equilibrium", "polytropic");
          kv("eq_nu", num(e.nu));
          kv("eq_K0", num(e.K0));
          kv("eq_C", num(e.C));
        } else if constexpr (std::is_same_v<T, MovingEquilibrium1D>) {
          kv("equilibrium", "moving");
          kv("eq_mach", num(e.mach));
        } else if constexpr (std::is_same_v<T, KeplerianDisk>) {
          kv("equilibrium", e.density_step ? "kepler-step" : "kepler");
          kv("eq_step_radius", num(e.step_radius));
        } else {
          kv("equilibrium", "custom");
          kv("eq_file", e.path);
        }
      },
      cfg.equilibrium);
  kv("boundary", to_string(cfg.boundary));
  kv("potential", to_string(cfg.potential));
  kv("initial", to_string(cfg.initial));
  if (!cfg.initial_file.empty()) kv("initial_file", cfg.initial_file);
  kv("pert_amplitude", num(cfg.perturbation.amplitude));
  kv("pert_x", num(cfg.perturbation.center_x));
  kv("pert_y", num(cfg.perturbation.center_y));
  kv("pert_width", num(cfg.perturbation.width));
  kv("pert_variable", cfg.perturbation.variable == Perturbation::Variable::kPressure ? "pressure" : "density");
  kv("xmin", num(cfg.xmin));
  kv("xmax", num(cfg.xmax));
  kv("ymin", num(cfg.ymin));
  kv("ymax", num(cfg.ymax));
  kv("r_inner", num(cfg.r_inner));
  kv("r_outer", num(cfg.r_outer));
  kv("max_steps", std::to_string(cfg.max_steps));
  return os.str();
}

std::string config_hash(const RunConfig& cfg) {
  const std::string text = canonical_text(cfg);
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace gravdg::harness
