#pragma once

#include <cmath>
#include <cstdint>

namespace wnls {

// Counter-based generator: value depends only on (seed, stream, counter), so
// sweeps are reproducible no matter how work is scheduled across threads.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : seed_(seed), stream_(stream), counter_(0) {}

  std::uint64_t next_u64() { return mix(seed_, stream_, counter_++); }

  // uniform on [0,1)
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // uniform on [a,b)
  double uniform(double a, double b) { return a + (b - a) * next_double(); }

  // standard normal (Box-Muller; consumes two counters)
  double normal() {
    double u1 = next_double();
    double u2 = next_double();
    if (u1 < 1e-300) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

 private:
  static std::uint64_t mix(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    // splitmix64 over a hash of the triple
    std::uint64_t z = a ^ (b * 0x9e3779b97f4a7c15ULL) ^
                      (c * 0xbf58476d1ce4e5b9ULL) + 0x94d049bb133111ebULL;
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_, stream_, counter_;
};

}  // namespace wnls
