#include "gravdg/scheme_common.hpp"

#include <cctype>
#include <cstdlib>

namespace gravdg {

std::string to_string(SchemeVariant v) {
  switch (v) {
    case SchemeVariant::kWBESPP: return "wbespp";
    case SchemeVariant::kNonWB: return "nonwb";
    case SchemeVariant::kNonES: return "nones";
    case SchemeVariant::kNonPP: return "nonpp";
  }
  return "?";
}

SchemeVariant parse_variant(const std::string& name) {
  std::string s = name;
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s == "wbespp") return SchemeVariant::kWBESPP;
  if (s == "nonwb") return SchemeVariant::kNonWB;
  if (s == "nones") return SchemeVariant::kNonES;
  if (s == "nonpp") return SchemeVariant::kNonPP;
  throw ConfigError("unknown scheme variant '" + name + "' (wbespp, nonwb, nones, nonpp)");
}

std::string to_string(BoundaryKind b) {
  switch (b) {
    case BoundaryKind::kPeriodic: return "periodic";
    case BoundaryKind::kReflective: return "reflective";
    case BoundaryKind::kOutflow: return "outflow";
    case BoundaryKind::kFixedToInitial: return "initial";
    case BoundaryKind::kExact: return "exact";
  }
  return "?";
}

BoundaryKind parse_boundary(const std::string& s) {
  if (s == "periodic") return BoundaryKind::kPeriodic;
  if (s == "reflective") return BoundaryKind::kReflective;
  if (s == "outflow") return BoundaryKind::kOutflow;
  if (s == "initial") return BoundaryKind::kFixedToInitial;
  if (s == "exact") return BoundaryKind::kExact;
  throw ConfigError("unknown boundary kind '" + s + "' (periodic, reflective, outflow, initial, exact)");
}

int worker_count() {
  static const int n = [] {
    if (const char* env = std::getenv("GRAVDG_WORKERS")) {
      const int v = std::atoi(env);
      if (v >= 1) return v;
    }
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
  }();
  return n;
}

}  // namespace gravdg
