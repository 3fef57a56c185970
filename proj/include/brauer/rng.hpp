#pragma once

#include <cstdint>
#include <random>

namespace brauer {

/// Seedable generator with a platform-stable output sequence. The standard
/// distributions are implementation-defined, so bounded draws are done here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 1) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }

  Rng fork(std::uint64_t salt) { return Rng(engine_() ^ (salt * 0x9e3779b97f4a7c15ULL)); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace brauer
