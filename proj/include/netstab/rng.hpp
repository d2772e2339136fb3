#pragma once

#include <bit>
#include <cstdint>
#include <random>

namespace netstab {

// Seeded random stream. All draws go through the helpers below instead of the
// std distribution objects, whose output is implementation-defined; this keeps
// seeded runs reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, bound). bound = 0 is treated as 1.
  std::uint64_t uniform_index(std::uint64_t bound) {
    if (bound < 2) return 0;
    const std::uint64_t mask = ~std::uint64_t{0} >> std::countl_zero(bound - 1);
    for (;;) {
      const std::uint64_t v = engine_() & mask;
      if (v < bound) return v;
    }
  }

  bool coin() { return (engine_() & 1) != 0; }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace netstab
