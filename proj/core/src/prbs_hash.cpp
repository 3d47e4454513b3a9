#include "ccode/prbs_hash.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace ccode {

void HashConfig::validate() const {
  if (width < 4 || width > 30) {
    throw std::invalid_argument("hash width must be in [4, 30], got " + std::to_string(width));
  }
  if (taps.empty()) {
    throw std::invalid_argument("hash tap set is empty");
  }
  for (int t : taps) {
    if (t < 0 || t >= width) {
      throw std::invalid_argument("hash tap " + std::to_string(t) + " outside register of width " +
                                  std::to_string(width));
    }
  }
  if (seed == 0) {
    throw std::invalid_argument("hash seed must be nonzero");
  }
  if (seed > mask()) {
    throw std::invalid_argument("hash seed " + std::to_string(seed) + " does not fit in " +
                                std::to_string(width) + " bits");
  }
  if (clocks_per_bit < 1) {
    throw std::invalid_argument("clocks_per_bit must be >= 1");
  }
}

std::uint32_t HashConfig::tap_mask() const {
  std::uint32_t m = 0;
  for (int t : taps) m |= std::uint32_t{1} << t;
  return m;
}

PrbsHash::PrbsHash(HashConfig config) : config_(std::move(config)) {
  config_.validate();
  mask_ = config_.mask();
  tap_mask_ = config_.tap_mask();
}

HashState PrbsHash::init(std::uint32_t seed) const {
  if (seed == 0 || seed > mask_) {
    throw std::invalid_argument("hash seed " + std::to_string(seed) + " outside [1, 2^width - 1]");
  }
  return HashState{seed, 0};
}

std::vector<std::uint32_t> PrbsHash::hash_prefix(std::span<const std::uint8_t> bits) const {
  if (bits.empty()) {
    throw std::invalid_argument("hash_prefix needs at least one bit");
  }
  std::vector<std::uint32_t> out;
  out.reserve(bits.size());
  HashState s = init();
  for (std::uint8_t b : bits) {
    const auto r = absorb(s, b & 1U);
    s = r.state;
    out.push_back(r.address);
  }
  return out;
}

std::vector<std::uint32_t> hash_prefix(const HashConfig& config, std::span<const std::uint8_t> bits) {
  return PrbsHash(config).hash_prefix(bits);
}

}  // namespace ccode
