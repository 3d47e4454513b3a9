#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ccode/codeword.hpp"

/// Interleaved Hamming(8,4) baseline over a 2048-bit frame.
namespace ccode::hamming {

inline constexpr std::size_t kSlots = 128;
inline constexpr std::size_t kWordBits = 16;
inline constexpr std::size_t kSections = 16;
inline constexpr std::size_t kSectionBits = kSlots;
inline constexpr int kFrameWidth = 11;

enum class Status { clean, corrected, uncorrectable };

struct Decoded84 {
  std::uint8_t nibble;
  Status status;
};

/// Extended Hamming code. Bits 0..6 hold positions 1..7 of the (7,4) code
/// (p1 p2 d0 p4 d1 d2 d3), bit 7 is overall parity.
std::uint8_t encode84(std::uint8_t nibble);

/// Corrects any single flip; two flips are reported as uncorrectable and the
/// received data bits are passed through.
Decoded84 decode84(std::uint8_t byte);

/// Word bit carried by interleaver section s. Sections alternate between the
/// low and high 8-bit Hamming blocks so adjacent sections never hit the same
/// block.
constexpr std::size_t section_word_bit(std::size_t s) { return s % 2 == 0 ? s / 2 : 8 + (s - 1) / 2; }

struct HammingFrame {
  Codeword bits{kFrameWidth};
};

/// Each message byte becomes low-nibble block (bits 0..7) and high-nibble
/// block (bits 8..15).
std::uint16_t encode_word(std::uint8_t message);

HammingFrame interleave(std::span<const std::uint16_t> words);
std::vector<std::uint16_t> deinterleave(const HammingFrame& frame);

/// Zero-pads to 128 slots. Throws std::invalid_argument above 128 messages.
HammingFrame encode_frame(std::span<const std::uint8_t> messages);

struct HammingReport {
  std::array<std::uint8_t, kSlots> decoded{};
  double error_fraction = 0.0;
};

/// Decodes all slots; error_fraction compares the first sent.size() slots
/// against `sent`.
HammingReport decode_frame(const HammingFrame& frame, std::span<const std::uint8_t> sent);

}  // namespace ccode::hamming
