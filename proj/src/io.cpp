#include "lwr/io.hpp"

#include <cstdio>

namespace lwr {

std::string format_float(double x) {
  char buf[40];
  const int n = std::snprintf(buf, sizeof(buf), "%.17g", x);
  return std::string(buf, static_cast<std::size_t>(n));
}

}  // namespace lwr
