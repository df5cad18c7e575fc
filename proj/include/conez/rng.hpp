#pragma once

#include <cstdint>
#include <random>

#include "conez/matrix.hpp"

namespace conez::rng {

using Engine = std::mt19937_64;

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace detail

/// Decorrelates (seed, stream, index) into a single engine seed, so batch
/// trials can draw from independent substreams in any order.
inline std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index = 0) {
  std::uint64_t s = seed;
  std::uint64_t a = detail::splitmix64(s);
  s ^= stream;
  std::uint64_t b = detail::splitmix64(s);
  s ^= index;
  std::uint64_t c = detail::splitmix64(s);
  return a ^ (b + 0x9e3779b97f4a7c15ull) ^ (c << 1);
}

inline Engine engine(std::uint64_t seed) { return Engine(seed); }

inline Engine engine(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return Engine(sub_seed(seed, stream, index));
}

// Distributions are constructed per call: draws depend only on the engine
// state, never on earlier calls that might have cached a spare variate.

inline double gaussian(Engine& eng) { return std::normal_distribution<double>{0.0, 1.0}(eng); }

inline double uniform(Engine& eng, double lo, double hi) {
  return std::uniform_real_distribution<double>{lo, hi}(eng);
}

/// Log-uniform over [lo, hi], lo > 0.
inline double log_uniform(Engine& eng, double lo, double hi) {
  return std::exp(uniform(eng, std::log(lo), std::log(hi)));
}

inline int uniform_int(Engine& eng, int lo, int hi) {
  return std::uniform_int_distribution<int>{lo, hi}(eng);
}

inline Vector gaussian_vector(int n, Engine& eng) {
  Vector v(static_cast<std::size_t>(n));
  for (double& x : v) x = gaussian(eng);
  return v;
}

inline Matrix gaussian_matrix(int n, Engine& eng) {
  Matrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = gaussian(eng);
  return m;
}

}  // namespace conez::rng
