#pragma once

#include <cstdint>
#include <random>

namespace volrep {

/// Seeded pseudo-random source owned by exactly one simulation run.
///
/// Backed by std::mt19937_64, whose output sequence is fixed by the standard.
/// The conversions below are written out by hand because the standard
/// distributions are implementation-defined, and traces must be byte-identical
/// across standard libraries.
class RandomStream
{
public:
  explicit RandomStream(std::uint64_t seed)
    : engine_(seed)
  {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// One draw; true with probability p. p <= 0 never fires, p >= 1 always fires.
  bool bernoulli(double p) { return uniform01() < p; }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t uniform_index(std::uint64_t bound);

  /// Uniform double in [lo, hi].
  double uniform_real(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

private:
  std::mt19937_64 engine_;
};

inline std::uint64_t RandomStream::uniform_index(std::uint64_t bound)
{
  // Rejection sampling over the largest multiple of bound.
  std::uint64_t const limit = UINT64_MAX - (UINT64_MAX % bound);
  std::uint64_t x;
  do
  {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

}  // namespace volrep
