#pragma once

#include <sstream>
#include <stdexcept>
#include <string>

namespace orthomorse {

/// A computation ran but its result failed numerical validation (a point that
/// should be critical is not, eigenvalues that cannot be clustered, a singular
/// matrix handed to a projection). Bad arguments use std::invalid_argument.
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Three significant digits, for diagnostics.
inline std::string format_magnitude(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

}  // namespace orthomorse
