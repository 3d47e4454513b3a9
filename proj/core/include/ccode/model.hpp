#pragma once

#include <cstddef>
#include <vector>

/// Closed-form predictions for concurrent-code decoding.
///
/// Symbols used below: m messages, L absorbed bits per message (data plus
/// checksum), k checksum bits, b = L - k data bits, C codeword length,
/// n noise fraction, g gap fraction.
namespace ccode::model {

enum class AMode {
  floor,       ///< a = floor(log2 m)
  continuous,  ///< a = log2 m
};

struct ModelParams {
  double m = 1;
  int L = 10;
  int k = 2;
  double C = 2048;
  double n = 0.0;
  double g = 0.0;
  AMode a_mode = AMode::floor;

  int data_bits() const { return L - k; }
  double a() const;

  /// Throws std::invalid_argument on n + g > 1, b < 1 or m > 2^b.
  void validate() const;
};

/// Expected mark count for m messages: Z(m) = L m - m log2 m.
double marks_expected(double m, int L);

/// Truncated principal-branch series W(x) = sum (-1)^(n-1) n^(n-2) / (n-1)! x^n.
double lambert_w_series(double x, int terms);

/// m = -Z ln2 / W(-2^-L Z ln2) through the truncated series. Z = 0 gives 0.
/// Throws std::domain_error when |x| >= 0.4.
///
/// The principal branch lands on the large root of Z(m) (Z = 10, L = 10 gives
/// about 1017, not 1). messages_from_marks_numeric is the inversion to use.
double messages_from_marks_series(double Z, int L, int terms = 30);

/// Root of Z(m) on [0, 2^L / e] by bisection. Throws std::domain_error when Z
/// lies outside [0, Z(2^L / e)].
double messages_from_marks_numeric(double Z, int L);

/// Peak of Z(m), reached at m = 2^L / e.
double max_marks(int L);

/// Probability of a run of E empty positions: ((C - E) / C) * exp(-Z(m) / C)^E.
double gap_block_probability(double m, double E, double C, int L);

/// Expected live branches after decoding round i (1-based).
double live_branches(int i, const ModelParams& p);

/// B_L - m.
double expected_hallucinations(const ModelParams& p);

/// Expected hash calls over the whole tree: every branch alive entering a
/// round costs two calls in a data round and one in a checksum round. The
/// root counts as one branch entering round 1.
double computational_load(const ModelParams& p);

/// Combined noise-plus-gap fraction at which one hallucination is expected.
/// Throws std::domain_error when m >= 2^b.
double threshold_ng(double m, int L, int k, AMode a_mode);

struct MarksThresholdPoint {
  double m;
  double marks;
};

/// marks(m) = C * threshold_ng(m) + Z(m) for each m in `ms`.
std::vector<MarksThresholdPoint> marks_threshold_curve(const std::vector<double>& ms, int L, int k, double C,
                                                        AMode a_mode = AMode::continuous);

/// Inverse error function, |erf(erfinv(y)) - y| < 1e-9 on (-1, 1).
double erfinv(double y);

/// Detection threshold whose Gaussian upper-tail probability is n_t.
/// Throws std::domain_error unless 0 < n_t < 1.
double signal_threshold(double mu, double sigma, double n_t);

/// E_t / mu for the hallucination threshold of m messages.
double required_snr(double sigma_over_mu, double m, int L, int k, AMode a_mode = AMode::continuous);

}  // namespace ccode::model
