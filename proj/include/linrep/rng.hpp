#ifndef LINREP_RNG_HPP
#define LINREP_RNG_HPP

#include <cstdint>
#include <initializer_list>

namespace linrep {

// SplitMix64 finalizer.  Every generator below is a pure function of
// (key, counter), which is what makes the streams splittable and the
// sampling reproducible across threads and platforms.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

/// Derive a child key from a key and a word.  Chaining derive() over a tuple
/// of words gives the keyed hash used for per-trial and per-relator seeds.
constexpr std::uint64_t derive_key(std::uint64_t key, std::uint64_t word) {
  return mix64((key ^ mix64(word + kGolden)) + kGolden);
}

constexpr std::uint64_t derive_key(std::uint64_t key,
                                   std::initializer_list<std::uint64_t> words) {
  for (std::uint64_t w : words) key = derive_key(key, w);
  return key;
}

/// Counter-based pseudo-random generator.  Not cryptographic; statistical
/// quality is that of SplitMix64, which is plenty for Monte Carlo work.
class SplitRng {
public:
  explicit SplitRng(std::uint64_t key) : key_(key) {}

  /// Independent child stream; deterministic in (parent key, index).
  SplitRng split(std::uint64_t index) const {
    return SplitRng(derive_key(key_, index ^ 0xa5a5a5a5a5a5a5a5ULL));
  }

  std::uint64_t next_u64() { return mix64(key_ + (++counter_) * kGolden); }

  /// Uniform integer in [0, bound), bound >= 1, rejection sampled (no modulo
  /// bias).
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t x = next_u64();
      if (x >= threshold) return x % bound;
    }
  }

  /// Uniform double in [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  std::uint64_t key() const { return key_; }

private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace linrep

#endif
