#pragma once

// Small numeric utilities shared by the quadrature, integrator and
// verification code: compensated summation and a portable seeded generator.

#include <cmath>
#include <cstdint>
#include <random>

namespace hc {

/// Kahan-Babuska (Neumaier) compensated accumulator. The result depends on
/// the order of add() calls, so callers fix that order.
class CompensatedSum {
 public:
  void add(double v) noexcept {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }

  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0;
  double comp_ = 0;
};

/// Seeded generator whose output is identical on every platform (the
/// standard distributions are implementation-defined, so uniforms are
/// derived from the raw 64-bit stream here).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Seed for an independent stream derived from (seed, stream, index).
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) noexcept {
    std::uint64_t z = seed;
    for (std::uint64_t v : {stream, index}) z = mix(z ^ mix(v + 0x9e3779b97f4a7c15ULL));
    return z;
  }

  /// Uniform in [0, 1).
  double uniform() noexcept { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [lo, hi].
  int integer(int lo, int hi) noexcept {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(engine_() % span);
  }

 private:
  static std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::mt19937_64 engine_;
};

}  // namespace hc
