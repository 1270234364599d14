#include "lwr/rng.hpp"

#include <cmath>

namespace lwr {

RngStream::RngStream(std::uint64_t root_seed, std::uint64_t stream_index)
    : root_seed_(root_seed), stream_index_(stream_index) {
  // seed_seq mixing is fully specified by the standard, so the whole state
  // is deterministic across platforms.
  std::seed_seq seq{
      static_cast<std::uint32_t>(root_seed & 0xffffffffu),
      static_cast<std::uint32_t>(root_seed >> 32),
      static_cast<std::uint32_t>(stream_index & 0xffffffffu),
      static_cast<std::uint32_t>(stream_index >> 32),
  };
  gen_.seed(seq);
}

double RngStream::exponential() { return -std::log(uniform()); }

double RngStream::normal() {
  if (has_normal_spare_) {
    has_normal_spare_ = false;
    return normal_spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 6.283185307179586476925286766559 * u2;
  normal_spare_ = r * std::sin(theta);
  has_normal_spare_ = true;
  return r * std::cos(theta);
}

RngStream derive_stream(std::uint64_t root_seed, std::uint64_t index) {
  return RngStream(root_seed, index);
}

}  // namespace lwr
