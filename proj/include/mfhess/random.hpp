#pragma once

#include "mfhess/rational.hpp"

#include <cstdint>
#include <random>

namespace mfhess {

/// Deterministic generator. Draws use plain modular reduction of the engine
/// output so results do not depend on the standard library's distributions.
class Rng
{
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream for check `stream` under `seed` (splitmix64 mixing).
  static Rng stream(std::uint64_t seed, std::uint64_t stream)
  {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return Rng(z ^ (z >> 31));
  }

  std::uint64_t next() { return engine_(); }

  /// Integer in [lo, hi].
  long uniform(long lo, long hi)
  {
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(engine_() % span);
  }

  /// Nonzero integer in [-bound, bound].
  long nonzero(long bound)
  {
    long v = uniform(1, bound);
    return uniform(0, 1) ? v : -v;
  }

  /// num/den with |num| <= num_bound and 1 <= den <= den_bound.
  Rational rational(long num_bound, long den_bound)
  {
    long num = uniform(-num_bound, num_bound);
    long den = uniform(1, den_bound);
    return make_rational(num, den);
  }

  Vec vec(std::size_t n, long num_bound, long den_bound)
  {
    Vec v(n);
    for (auto &c : v)
      c = rational(num_bound, den_bound);
    return v;
  }

private:
  std::mt19937_64 engine_;
};

} // namespace mfhess
