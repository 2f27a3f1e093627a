#pragma once

#include <stdexcept>
#include <string>

namespace qsearch {

// Invalid or rejected configuration (bad parameters, malformed specs).
// CLI exit code 2.
struct config_error : std::runtime_error {
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// The requested run falls outside what the construction can handle, e.g.
// the subdivision schedule needs more query steps than the algorithm has.
// CLI exit code 3.
struct regime_error : std::runtime_error {
  explicit regime_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qsearch
