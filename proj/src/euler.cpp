#include "gravdg/euler.hpp"

namespace gravdg {

GasParams make_gas_params(double gamma) {
  if (!(gamma > 1.0) || gamma > 5.0 / 3.0 + 1e-14)
    throw ConfigError("gamma must lie in (1, 5/3], got " + std::to_string(gamma));
  return GasParams{gamma};
}

}  // namespace gravdg
