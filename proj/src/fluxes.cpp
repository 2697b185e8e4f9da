#include "gravdg/fluxes.hpp"

namespace gravdg {

double log_mean(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("log mean requires positive arguments");
  return log_mean(a, b, std::log(a), std::log(b));
}

}  // namespace gravdg
