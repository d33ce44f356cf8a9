#pragma once

#include <cmath>
#include <cstdint>

namespace iterreg::rng {

// Finalizer of the splitmix64 generator. Used both as the per-draw output
// function and as the 64-bit mixing function for seed derivation, so that
// streams are reproducible across platforms and independent of any standard
// library distribution internals.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Combines two 64-bit values into one; order-sensitive.
inline std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  return splitmix64(a ^ (0x9e3779b97f4a7c15ULL + b + (a << 6) + (a >> 2)));
}

// FNV-1a for deriving seeds from strings (problem names etc).
inline std::uint64_t hash_string(const char* s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (; *s; ++s) h = (h ^ static_cast<unsigned char>(*s)) * 1099511628211ULL;
  return h;
}

// Counter-based uniform/Gaussian stream: draw i is a pure function of
// (seed, i). Gaussian variates come from Box-Muller on consecutive uniforms;
// no rejection, so the stream layout is fixed.
class Stream {
public:
  explicit Stream(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next_u64() { return splitmix64(seed_ + 0x9e3779b97f4a7c15ULL * (++counter_)); }

  // Uniform on (0, 1); never returns 0 so log() below is safe.
  double next_uniform() {
    const double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    return u > 0.0 ? u : 0x1.0p-53;
  }

  double next_gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace iterreg::rng
