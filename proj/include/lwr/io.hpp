#ifndef LWR_IO_HPP
#define LWR_IO_HPP

#include <string>

namespace lwr {

/// Decimal rendering with 17 significant digits (lossless for binary64).
std::string format_float(double x);

}  // namespace lwr

#endif
