#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ccode/codeword.hpp"
#include "ccode/prbs_hash.hpp"

namespace ccode {

/// Message value; only the low data_bits are meaningful.
using Message = std::uint64_t;

struct CodecParams {
  int data_bits = 8;
  int checksum_bits = 2;
  HashConfig hash;
  std::vector<std::uint32_t> seeds = {0x001};

  int message_bits() const { return data_bits + checksum_bits; }
  int width() const { return hash.width; }
  std::size_t codeword_size() const { return std::size_t{1} << hash.width; }
  Message max_message() const;

  /// Throws std::invalid_argument on inconsistent parameters.
  void validate() const;
};

/// Decode outcome for one hash seed.
struct SeedDecode {
  std::uint32_t seed = 0;
  std::vector<Message> messages;
  /// Survivors after each of the L rounds.
  std::vector<std::size_t> branches_per_round;
  /// Survivors per round that were kept only because their address lies in a gap.
  std::vector<std::size_t> gap_retained_per_round;
  std::uint64_t hash_calls = 0;
};

struct DecodeReport {
  /// Sorted union of the per-seed message sets.
  std::vector<Message> messages;
  /// Per-round survivor counts summed over seeds.
  std::vector<std::size_t> branches_per_round;
  std::uint64_t hash_calls = 0;
  GapMask gaps;
  std::chrono::nanoseconds duration{0};
  std::vector<SeedDecode> per_seed;

  /// Messages decoded under every seed.
  std::vector<Message> intersection() const;
};

/// Addresses for one message under one seed: data bits LSB first, then the
/// checksum zeros. Always message_bits() long.
std::vector<std::uint32_t> encode_message(const CodecParams& params, Message msg, std::uint32_t seed);

/// OR-superposition of every message under every seed. Duplicates are harmless.
Codeword encode_set(const CodecParams& params, std::span<const Message> msgs);

/// Every maximal zero run of at least `min_gap` positions. Runs do not wrap.
GapMask detect_gaps(const Codeword& codeword, std::size_t min_gap);

/// Smallest run length E whose chance occurrence probability with m_min
/// messages is at most p_max. Returns C when no E < C qualifies.
std::size_t gap_threshold(double m_min, std::size_t C, int L, double p_max);

/// Breadth-first tree decode. A branch survives a round when its address is
/// marked or falls inside `gaps`. Checksum rounds extend with 0 only.
DecodeReport decode(const CodecParams& params, const Codeword& received, const GapMask& gaps = {});

/// Decoded messages that are not in `truth`.
std::size_t count_hallucinations(const DecodeReport& report, std::span<const Message> truth);
std::size_t count_hallucinations(std::span<const Message> decoded, std::span<const Message> truth);

/// Messages of `truth` missing from `decoded`.
std::size_t count_missing(std::span<const Message> decoded, std::span<const Message> truth);

}  // namespace ccode
