#ifndef LWR_ERRORS_HPP
#define LWR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lwr {

// Thrown when a query time lies beyond the simulated horizon of a
// trajectory, step buffer, or jump-series path.
struct HorizonExceeded : std::runtime_error {
  explicit HorizonExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lwr

#endif
