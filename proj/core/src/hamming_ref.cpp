#include "ccode/hamming_ref.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace ccode::hamming {

namespace {

constexpr unsigned bit(unsigned v, unsigned i) { return (v >> i) & 1U; }

// Data bit positions (0-based within the low 7 bits) of d0..d3.
constexpr std::array<unsigned, 4> kDataPos = {2, 4, 5, 6};

}  // namespace

std::uint8_t encode84(std::uint8_t nibble) {
  const unsigned d0 = bit(nibble, 0);
  const unsigned d1 = bit(nibble, 1);
  const unsigned d2 = bit(nibble, 2);
  const unsigned d3 = bit(nibble, 3);
  const unsigned p1 = d0 ^ d1 ^ d3;
  const unsigned p2 = d0 ^ d2 ^ d3;
  const unsigned p4 = d1 ^ d2 ^ d3;
  unsigned cw = p1 | (p2 << 1) | (d0 << 2) | (p4 << 3) | (d1 << 4) | (d2 << 5) | (d3 << 6);
  cw |= static_cast<unsigned>(std::popcount(cw) & 1) << 7;
  return static_cast<std::uint8_t>(cw);
}

Decoded84 decode84(std::uint8_t byte) {
  // Syndrome bit j is the parity of all positions whose 1-based index has bit j set.
  unsigned syndrome = 0;
  for (unsigned pos = 1; pos <= 7; ++pos) {
    if (bit(byte, pos - 1)) syndrome ^= pos;
  }
  const bool parity_ok = (std::popcount(static_cast<unsigned>(byte)) & 1) == 0;

  Status status = Status::clean;
  unsigned fixed = byte;
  if (!parity_ok) {
    status = Status::corrected;
    if (syndrome != 0) fixed ^= 1U << (syndrome - 1);
  } else if (syndrome != 0) {
    status = Status::uncorrectable;
  }
  std::uint8_t nibble = 0;
  for (unsigned i = 0; i < 4; ++i) nibble |= static_cast<std::uint8_t>(bit(fixed, kDataPos[i]) << i);
  return {nibble, status};
}

std::uint16_t encode_word(std::uint8_t message) {
  return static_cast<std::uint16_t>(encode84(message & 0x0F) | (encode84(message >> 4) << 8));
}

HammingFrame interleave(std::span<const std::uint16_t> words) {
  if (words.size() != kSlots) {
    throw std::invalid_argument("interleave needs exactly 128 words, got " + std::to_string(words.size()));
  }
  HammingFrame frame;
  for (std::size_t s = 0; s < kSections; ++s) {
    const std::size_t wb = section_word_bit(s);
    for (std::size_t w = 0; w < kSlots; ++w) {
      if (bit(words[w], static_cast<unsigned>(wb))) frame.bits.set(s * kSectionBits + w);
    }
  }
  return frame;
}

std::vector<std::uint16_t> deinterleave(const HammingFrame& frame) {
  std::vector<std::uint16_t> words(kSlots, 0);
  for (std::size_t s = 0; s < kSections; ++s) {
    const std::size_t wb = section_word_bit(s);
    for (std::size_t w = 0; w < kSlots; ++w) {
      if (frame.bits.test(s * kSectionBits + w)) words[w] |= static_cast<std::uint16_t>(1U << wb);
    }
  }
  return words;
}

HammingFrame encode_frame(std::span<const std::uint8_t> messages) {
  if (messages.size() > kSlots) {
    throw std::invalid_argument("a frame holds at most 128 messages, got " + std::to_string(messages.size()));
  }
  std::vector<std::uint16_t> words(kSlots, 0);
  for (std::size_t i = 0; i < messages.size(); ++i) words[i] = encode_word(messages[i]);
  return interleave(words);
}

HammingReport decode_frame(const HammingFrame& frame, std::span<const std::uint8_t> sent) {
  if (sent.size() > kSlots) throw std::invalid_argument("more than 128 genuine slots");
  HammingReport report;
  const auto words = deinterleave(frame);
  for (std::size_t w = 0; w < kSlots; ++w) {
    const auto lo = decode84(static_cast<std::uint8_t>(words[w] & 0xFF));
    const auto hi = decode84(static_cast<std::uint8_t>(words[w] >> 8));
    report.decoded[w] = static_cast<std::uint8_t>(lo.nibble | (hi.nibble << 4));
  }
  if (!sent.empty()) {
    std::size_t wrong = 0;
    for (std::size_t w = 0; w < sent.size(); ++w) {
      if (report.decoded[w] != sent[w]) ++wrong;
    }
    report.error_fraction = static_cast<double>(wrong) / static_cast<double>(sent.size());
  }
  return report;
}

}  // namespace ccode::hamming
