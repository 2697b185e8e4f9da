#pragma once

// Built-in problem setups.

#include <string>
#include <vector>

#include "gravdg/harness/config.hpp"

namespace gravdg::harness {

struct CatalogEntry {
  std::string id;
  std::string description;
  RunConfig defaults;
};

const std::vector<CatalogEntry>& catalog();

/// Throws ConfigError for an unknown id.
RunConfig catalog_defaults(const std::string& id);

}  // namespace gravdg::harness
