#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "ccode/codeword.hpp"

namespace ccode {

/// Deterministic random stream.
///
/// Built on std::mt19937_64, whose output sequence is fixed by the standard.
/// Integer and Gaussian draws are derived here instead of through the
/// <random> distributions, which differ between standard libraries, so CSV
/// output is reproducible byte for byte.
class RngStream {
 public:
  static constexpr std::string_view algorithm = "mt19937_64/box-muller";

  explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  /// Stream for trial `index` of a run seeded with `master`.
  static RngStream for_trial(std::uint64_t master, std::uint64_t index) { return RngStream(master ^ index); }

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform integer in [0, n). n must be > 0.
  std::uint64_t uniform_below(std::uint64_t n);

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double normal(double mean, double sd);

  /// `count` distinct values from [0, population), in draw order (Floyd's algorithm).
  std::vector<std::uint64_t> sample_distinct(std::size_t count, std::uint64_t population);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

/// Noise amount, either on the dB scale or as an explicit mark count.
/// 0 dB is the mark count of one encoded message.
struct NoiseSpec {
  std::optional<double> level_db;
  std::optional<std::size_t> count;

  std::size_t resolve(int marks_per_message) const;
};

/// round(marks_per_message * 10^(level_db / 10)).
std::size_t db_to_marks(double level_db, int marks_per_message);

/// Sets `count` distinct uniformly chosen positions. Never clears a mark.
Codeword add_random_marks(Codeword codeword, std::size_t count, RngStream& rng);

/// Symmetric-channel noise: inverts `count` distinct positions.
Codeword flip_random_bits(Codeword codeword, std::size_t count, RngStream& rng);

/// Forces [start, start + length) to zero. Never sets a mark.
Codeword cut_gap(Codeword codeword, std::size_t start, std::size_t length);

struct AnalogCodeword {
  int width = 0;
  std::vector<double> amplitudes;
  double signal = 1.0;
  double noise_mean = 0.0;
  double noise_sd = 0.0;
};

/// amplitude[j] = s * bit[j] + N(mu, sigma).
AnalogCodeword to_analog(const Codeword& codeword, double s, double mu, double sigma, RngStream& rng);

/// bit[j] = amplitude[j] > threshold.
Codeword threshold_detect(const AnalogCodeword& analog, double threshold);

}  // namespace ccode
