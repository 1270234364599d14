#ifndef LWR_RNG_HPP
#define LWR_RNG_HPP

#include <cstdint>
#include <random>

namespace lwr {

/// Seedable, value-like random stream. Two streams with distinct
/// (root_seed, stream_index) pairs are statistically independent; identical
/// pairs reproduce identical sequences, independent of construction order.
///
/// All variate transformations in this project invert uniforms by hand so
/// that output is bit-identical across standard library implementations.
class RngStream {
 public:
  explicit RngStream(std::uint64_t root_seed, std::uint64_t stream_index = 0);

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform on the open interval (0,1); never returns 0 or 1.
  double uniform() {
    return static_cast<double>((next_u64() >> 11) + 0.5) * 0x1p-53;
  }

  /// Exponential with rate 1.
  double exponential();

  /// Standard normal (Box-Muller; consumes two uniforms per pair).
  double normal();

  std::uint64_t root_seed() const { return root_seed_; }
  std::uint64_t stream_index() const { return stream_index_; }

 private:
  std::mt19937_64 gen_;
  std::uint64_t root_seed_;
  std::uint64_t stream_index_;
  double normal_spare_ = 0.0;
  bool has_normal_spare_ = false;
};

/// Counter-based stream splitting: stream `index` of the family rooted at
/// `root_seed`.
RngStream derive_stream(std::uint64_t root_seed, std::uint64_t index);

}  // namespace lwr

#endif
