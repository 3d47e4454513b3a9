#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

namespace ccode {

/// Register layout of the progressive PRBS hash.
///
/// The default is the maximal-length PRBS11 generator x^11 + x^9 + 1, which
/// addresses a 2048-bit codeword.
struct HashConfig {
  int width = 11;
  std::vector<int> taps = {10, 8};
  std::uint32_t seed = 0x001;
  int clocks_per_bit = 1;

  /// Throws std::invalid_argument when the configuration is unusable.
  void validate() const;

  std::uint32_t mask() const { return (std::uint32_t{1} << width) - 1U; }
  std::uint32_t tap_mask() const;
};

struct HashState {
  std::uint32_t reg = 0;
  std::uint64_t absorbed = 0;

  friend bool operator==(const HashState&, const HashState&) = default;
};

/// Result of absorbing one bit: the new state plus the mark address it yields.
struct Absorbed {
  HashState state;
  std::uint32_t address;
};

/// Fibonacci LFSR that absorbs message bits one at a time.
///
/// Each clock computes f = parity(reg & taps) ^ bit and shifts f in at bit 0.
/// The register value after the last clock is the codeword address for the
/// prefix absorbed so far, so one absorb call per bit is all the decoder needs
/// to extend a branch.
class PrbsHash {
 public:
  explicit PrbsHash(HashConfig config);

  const HashConfig& config() const { return config_; }

  HashState init() const { return HashState{config_.seed, 0}; }

  /// Same register as init(), starting from an explicit seed.
  HashState init(std::uint32_t seed) const;

  Absorbed absorb(HashState state, unsigned bit) const {
    std::uint32_t reg = state.reg;
    for (int c = 0; c < config_.clocks_per_bit; ++c) {
      const unsigned feedback = (static_cast<unsigned>(std::popcount(reg & tap_mask_)) ^ bit) & 1U;
      reg = ((reg << 1) & mask_) | feedback;
    }
    return {HashState{reg, state.absorbed + 1}, reg};
  }

  /// Address after each prefix of `bits`. Throws on empty input.
  std::vector<std::uint32_t> hash_prefix(std::span<const std::uint8_t> bits) const;

 private:
  HashConfig config_;
  std::uint32_t mask_;
  std::uint32_t tap_mask_;
};

/// Convenience wrapper for the free-function form used in tests and tools.
std::vector<std::uint32_t> hash_prefix(const HashConfig& config, std::span<const std::uint8_t> bits);

}  // namespace ccode
