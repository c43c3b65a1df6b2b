#include "rrk/rng.hpp"

namespace rrk {

namespace {

constexpr std::uint64_t kWeyl = 0x9e3779b97f4a7c15ull;

/// SplitMix64 output permutation (Vigna's variant of the MurmurHash3
/// finalizer). Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ull;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebull;
  z ^= z >> 31;
  return z;
}

/// Maps a 64-bit word to the midpoint of one of 2^53 equal subintervals of
/// (0, 1). The result is strictly inside the open interval.
constexpr double to_unit(std::uint64_t u) {
  return (static_cast<double>(u >> 11) + 0.5) * 0x1.0p-53;
}

constexpr std::uint64_t stream_base(std::uint64_t seed, std::uint64_t trial,
                                    std::uint64_t interval) {
  std::uint64_t b = mix64(seed + kWeyl);
  b = mix64(b + trial * kWeyl);
  b = mix64(b + interval * kWeyl);
  return b;
}

}  // namespace

RandomStream::RandomStream(std::uint64_t master_seed, std::uint64_t trial,
                           std::uint64_t interval)
    : seed_(master_seed),
      trial_(trial),
      interval_(interval),
      base_(stream_base(master_seed, trial, interval)) {}

double RandomStream::value_at(std::uint64_t counter) const {
  return to_unit(mix64(base_ + counter * kWeyl));
}

double RandomStream::next() { return value_at(counter_++); }

RandomStream substream(std::uint64_t master_seed, std::uint64_t trial,
                       std::uint64_t interval) {
  return RandomStream(master_seed, trial, interval);
}

double draw_uniform(RandomStream& stream) { return stream.next(); }

double TrialDraws::gamma(int interval, int step) {
  return substream(seed_, trial_, static_cast<std::uint64_t>(interval))
      .value_at(static_cast<std::uint64_t>(step));
}

}  // namespace rrk
