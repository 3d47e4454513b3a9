#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ccode/channel.hpp"
#include "ccode/codec.hpp"
#include "ccode/csv.hpp"
#include "ccode/model.hpp"

namespace ccode {

enum class ExperimentKind {
  noise_sweep,
  gap_sweep,
  marks_vs_messages,
  branch_profile,
  model_curve,
  hamming_compare,
  multiseed,
  seed_screen,
};

std::string_view to_string(ExperimentKind kind);
/// Throws std::invalid_argument for unknown names.
ExperimentKind parse_experiment_kind(std::string_view name);

enum class GapMode {
  detect,  ///< receiver scans for zero runs of at least min_gap
  known,   ///< receiver is told the exact erased interval
};

enum class HammingAxis { noise, gap };

/// Everything that determines one CSV table.
///
/// Each trial draws from RngStream::for_trial(master_seed, trial), so trial t
/// sees the same message set at every grid point.
struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::noise_sweep;
  CodecParams codec;
  std::vector<double> grid;
  std::size_t trials = 100;
  std::uint64_t master_seed = 1;

  /// Messages encoded per trial (noise, gap, branch, hamming, multiseed, screen).
  std::size_t messages = 10;

  /// Extra random marks for gap_sweep / seed_screen. Not used by noise_sweep,
  /// whose grid is the noise level.
  NoiseSpec noise;

  /// Fixed gap for branch_profile, as a fraction of the codeword.
  double gap_frac = 0.0;
  /// nullopt places the gap uniformly at random per trial.
  std::optional<std::size_t> gap_start;
  GapMode gap_mode = GapMode::detect;
  /// Detection threshold; nullopt uses gap_threshold(gap_min_messages, C, L, gap_p_max).
  std::optional<std::size_t> min_gap;
  double gap_min_messages = 5.0;
  double gap_p_max = 0.02;

  HammingAxis hamming_axis = HammingAxis::noise;

  /// seed_screen: seeds every candidate is paired with.
  std::vector<std::uint32_t> partner_seeds;

  /// model_curve: one of branches, marks, threshold, gap_probability, load, snr.
  std::string curve = "branches";
  model::ModelParams model;

  /// Validates the kind-independent invariants (trials >= 1, grid nonempty).
  void validate() const;
  std::size_t resolved_min_gap() const;
};

CsvTable run_noise_sweep(const ExperimentSpec& spec);
CsvTable run_gap_sweep(const ExperimentSpec& spec);
CsvTable run_marks_vs_messages(const ExperimentSpec& spec);
CsvTable run_branch_profile(const ExperimentSpec& spec);
CsvTable run_model_curve(const ExperimentSpec& spec);
CsvTable run_hamming_compare(const ExperimentSpec& spec);
CsvTable run_multiseed(const ExperimentSpec& spec);
CsvTable run_seed_screen(const ExperimentSpec& spec);

/// Dispatches on spec.kind.
CsvTable run_experiment(const ExperimentSpec& spec);

/// Default grid for a kind when the caller gives none.
std::vector<double> default_grid(ExperimentKind kind, const std::string& curve = {});

/// Least-squares cubic y = c0 + c1 x + c2 x^2 + c3 x^3. Needs >= 4 points.
std::array<double, 4> fit_cubic(const std::vector<double>& xs, const std::vector<double>& ys);

/// `m` distinct random messages below 2^data_bits, in draw order.
std::vector<Message> random_messages(RngStream& rng, std::size_t m, int data_bits);

struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;
};
MeanSd mean_sd(const std::vector<double>& xs);

}  // namespace ccode
