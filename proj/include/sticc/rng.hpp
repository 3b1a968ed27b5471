#pragma once
// Bit-portable draws on top of std::mt19937_64. The standard distributions
// are implementation-defined, so anything that must reproduce across
// platforms goes through these instead.

#include <cmath>
#include <numbers>
#include <random>

namespace sticc {

// Uniform on [0, 1) using the top 53 bits of the engine output.
inline double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// Integer in [0, n) without modulo bias (rejection on the top range).
inline int uniform_index(std::mt19937_64& gen, int n) {
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % bound;
  std::uint64_t draw;
  do {
    draw = gen();
  } while (draw >= limit);
  return static_cast<int>(draw % bound);
}

// Standard normal via Box-Muller; consumes two uniforms per value.
inline double normal01(std::mt19937_64& gen) {
  double u1 = 1.0 - uniform01(gen);  // (0, 1], keeps the log finite
  double u2 = uniform01(gen);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace sticc
