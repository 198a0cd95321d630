#ifndef SISNET_RANDOM_HPP
#define SISNET_RANDOM_HPP

#include <cstdint>
#include <initializer_list>
#include <random>

namespace sisnet {

// splitmix64 finalizer
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Order-sensitive hash of a key tuple; used to derive independent streams
/// (seed, t, node, purpose, ...) without sequential state.
inline std::uint64_t hash_key(std::initializer_list<std::uint64_t> parts) noexcept {
  std::uint64_t h = 0x2545f4914f6cdd1dULL;
  for (auto p : parts) h = mix64(h ^ mix64(p));
  return h;
}

/// 53-bit uniform in [0, 1).
constexpr double to_unit(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

inline double hashed_uniform(std::initializer_list<std::uint64_t> parts) noexcept {
  return to_unit(hash_key(parts));
}

/// Engine wrapper with distribution helpers whose output is identical across
/// standard libraries (std:: distributions are implementation-defined).
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

  double uniform() { return to_unit(engine_()); }

  bool bernoulli(double p) { return uniform() < p; }

  /// Uniform integer in [0, bound), bound > 0; rejection removes modulo bias.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  std::mt19937_64 &engine() noexcept { return engine_; }

private:
  std::mt19937_64 engine_;
};

// purpose tags for hashed streams
namespace stream {
inline constexpr std::uint64_t switching = 0x5357;
inline constexpr std::uint64_t gilbert = 0x4749;
inline constexpr std::uint64_t node_step = 0x4e53;
inline constexpr std::uint64_t init = 0x494e;
inline constexpr std::uint64_t replicate = 0x5245;
} // namespace stream

} // namespace sisnet

#endif // SISNET_RANDOM_HPP
