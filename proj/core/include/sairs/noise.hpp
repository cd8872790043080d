#ifndef SAIRS_NOISE_HPP
#define SAIRS_NOISE_HPP

#include <array>
#include <cstdint>

#include <random>

namespace sairs {

/** splitmix64 finalizer; used to decorrelate per-trajectory substream seeds. */
std::uint64_t splitmix64(std::uint64_t x);

/** Reproducible per-trajectory stream of standard normal draws.
 *
 * The generator contract is fixed for any major version of this library:
 *  - substream seed = splitmix64(master_seed + (index + 1) * 0x9E3779B97F4A7C15)
 *  - engine: std::mt19937_64 seeded with the substream seed
 *  - normals via Box-Muller: u1 = ((e() >> 11) + 1) * 2^-53 in (0, 1],
 *    u2 = (e() >> 11) * 2^-53 in [0, 1), yielding the pair
 *    (r cos(2 pi u2), r sin(2 pi u2)) with r = sqrt(-2 ln u1);
 *    both members of a pair are consumed before new engine output is drawn.
 *
 * The same (master_seed, index) therefore reproduces the identical sequence
 * on every platform with IEEE doubles and the same libm, and distinct indices
 * yield decorrelated substreams.
 */
class NoiseStream {
 public:
  NoiseStream(std::uint64_t master_seed, std::uint64_t trajectory_index);

  /** Next standard normal draw. */
  double normal();

  /** Four draws in fixed order (one per compartment for a single time step). */
  std::array<double, 4> normal4();

  std::uint64_t master_seed() const { return master_; }
  std::uint64_t trajectory_index() const { return index_; }

 private:
  std::mt19937_64 engine_;
  std::uint64_t master_;
  std::uint64_t index_;
  double spare_ = 0;
  bool have_spare_ = false;
};

}  // namespace sairs

#endif
