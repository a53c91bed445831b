// Seeded, splittable randomness with a platform-stable layout: mt19937_64 is
// fully specified by the standard and doubles are produced by a fixed 53-bit
// conversion, so identical seeds give identical streams everywhere.
#pragma once

#include <cstdint>
#include <random>

namespace efg {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Independent stream derived from this seed and a stream tag, e.g. one per
  // (run, player).
  static Rng split(std::uint64_t seed, std::uint64_t tag) {
    return Rng(splitmix64(splitmix64(seed) ^ splitmix64(tag + 0x1234567ULL)));
  }

  double uniform() {  // [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace efg
