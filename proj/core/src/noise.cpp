#include "sairs/noise.hpp"

#include <cmath>

namespace sairs {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

namespace {

std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

}  // namespace

NoiseStream::NoiseStream(std::uint64_t master_seed, std::uint64_t trajectory_index)
    : engine_(substream_seed(master_seed, trajectory_index)),
      master_(master_seed),
      index_(trajectory_index) {}

double NoiseStream::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // 53-bit uniforms; u1 > 0 so the log is finite.
  constexpr double kInv53 = 0x1.0p-53;
  const double u1 = static_cast<double>((engine_() >> 11) + 1) * kInv53;
  const double u2 = static_cast<double>(engine_() >> 11) * kInv53;
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * M_PI * u2;
  spare_ = r * std::sin(angle);
  have_spare_ = true;
  return r * std::cos(angle);
}

std::array<double, 4> NoiseStream::normal4() {
  std::array<double, 4> z;
  z[0] = normal();
  z[1] = normal();
  z[2] = normal();
  z[3] = normal();
  return z;
}

}  // namespace sairs
