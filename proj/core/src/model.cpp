#include "ccode/model.hpp"

#include <boost/math/special_functions/erf.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ccode::model {

namespace {

double log2_messages(double m) {
  if (!(m >= 1.0)) throw std::domain_error("model needs m >= 1, got " + std::to_string(m));
  return std::log2(m);
}

double a_value(double m, AMode mode) {
  const double a = log2_messages(m);
  return mode == AMode::floor ? std::floor(a) : a;
}

}  // namespace

double ModelParams::a() const { return a_value(m, a_mode); }

void ModelParams::validate() const {
  if (data_bits() < 1) throw std::invalid_argument("model needs L - k >= 1");
  if (m < 1.0) throw std::invalid_argument("model needs m >= 1");
  if (m > std::ldexp(1.0, data_bits())) throw std::invalid_argument("model needs m <= 2^(L-k)");
  if (n < 0.0 || g < 0.0 || n + g > 1.0) throw std::invalid_argument("model needs n, g >= 0 and n + g <= 1");
  if (!(C > 0.0)) throw std::invalid_argument("model needs C > 0");
}

double marks_expected(double m, int L) {
  if (m < 0.0) throw std::domain_error("marks_expected needs m >= 0");
  if (m == 0.0) return 0.0;
  return L * m - m * std::log2(m);
}

double lambert_w_series(double x, int terms) {
  if (terms < 1) throw std::invalid_argument("lambert_w_series needs terms >= 1");
  if (x == 0.0) return 0.0;
  // Coefficients n^(n-2) / (n-1)! overflow quickly in double, so build each
  // term in log space and restore the sign separately.
  const double log_abs_x = std::log(std::fabs(x));
  double w = 0.0;
  for (int n = 1; n <= terms; ++n) {
    const double log_mag = (n - 2) * std::log(static_cast<double>(n)) - std::lgamma(static_cast<double>(n)) +
                           n * log_abs_x;
    double term = std::exp(log_mag);
    const bool negative = ((n - 1) % 2 == 1) != (x < 0.0 && n % 2 == 1);
    w += negative ? -term : term;
  }
  return w;
}

double messages_from_marks_series(double Z, int L, int terms) {
  if (Z == 0.0) return 0.0;
  const double x = -std::ldexp(1.0, -L) * Z * std::numbers::ln2;
  if (std::fabs(x) >= 0.4) {
    throw std::domain_error("series argument |x| = " + std::to_string(std::fabs(x)) + " outside |x| < 0.4");
  }
  return -Z * std::numbers::ln2 / lambert_w_series(x, terms);
}

double max_marks(int L) { return marks_expected(std::ldexp(1.0, L) / std::numbers::e, L); }

double messages_from_marks_numeric(double Z, int L) {
  const double m_peak = std::ldexp(1.0, L) / std::numbers::e;
  const double z_peak = marks_expected(m_peak, L);
  if (Z < 0.0 || Z > z_peak) {
    throw std::domain_error("mark count " + std::to_string(Z) + " outside attainable range [0, " +
                            std::to_string(z_peak) + "]");
  }
  if (Z == 0.0) return 0.0;
  // Bisect to full double resolution. Near the peak Z(m) is flat to within
  // rounding, so ties move the lower bound up and the result stays on the
  // side of the peak that the caller's m came from.
  double lo = 0.0;
  double hi = m_peak;
  for (int it = 0; it < 2000; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (marks_expected(mid, L) <= Z ? lo : hi) = mid;
  }
  return hi - lo < 1e-300 ? lo : 0.5 * (lo + hi);
}

double gap_block_probability(double m, double E, double C, int L) {
  if (E < 0.0 || E >= C) throw std::domain_error("gap_block_probability needs 0 <= E < C");
  const double density = marks_expected(m, L) / C;
  return ((C - E) / C) * std::exp(-density * E);
}

double live_branches(int i, const ModelParams& p) {
  p.validate();
  if (i < 1 || i > p.L) throw std::out_of_range("round index outside [1, L]");
  const double full = std::ldexp(1.0, i);
  if (full <= p.m) return full;
  const double q = p.n + p.g;
  const double exponent = i - p.a() + 1.0;
  const int b = p.data_bits();
  const double spawned = i <= b ? full : std::ldexp(1.0, b);
  return p.m + (spawned - p.m) * std::pow(q, exponent);
}

double expected_hallucinations(const ModelParams& p) { return live_branches(p.L, p) - p.m; }

double computational_load(const ModelParams& p) {
  p.validate();
  const int b = p.data_bits();
  double entering = 1.0;
  double load = 0.0;
  for (int i = 1; i <= p.L; ++i) {
    load += (i <= b ? 2.0 : 1.0) * entering;
    entering = live_branches(i, p);
  }
  return load;
}

double threshold_ng(double m, int L, int k, AMode a_mode) {
  const int b = L - k;
  const double span = std::ldexp(1.0, b) - m;
  if (!(span > 0.0)) throw std::domain_error("threshold_ng needs m < 2^(L-k)");
  const double a = a_value(m, a_mode);
  return std::pow(1.0 / span, 1.0 / (L - a + 1.0));
}

std::vector<MarksThresholdPoint> marks_threshold_curve(const std::vector<double>& ms, int L, int k, double C,
                                                        AMode a_mode) {
  std::vector<MarksThresholdPoint> out;
  out.reserve(ms.size());
  for (double m : ms) {
    out.push_back({m, C * threshold_ng(m, L, k, a_mode) + marks_expected(m, L)});
  }
  return out;
}

double erfinv(double y) {
  if (y <= -1.0 || y >= 1.0) {
    if (y == 1.0) return std::numeric_limits<double>::infinity();
    if (y == -1.0) return -std::numeric_limits<double>::infinity();
    throw std::domain_error("erfinv needs -1 <= y <= 1");
  }
  return boost::math::erf_inv(y);
}

double signal_threshold(double mu, double sigma, double n_t) {
  if (!(n_t > 0.0 && n_t < 1.0)) throw std::domain_error("signal_threshold needs 0 < n_t < 1");
  return std::numbers::sqrt2 * sigma * erfinv(1.0 - 2.0 * n_t) + mu;
}

double required_snr(double sigma_over_mu, double m, int L, int k, AMode a_mode) {
  const double n_t = threshold_ng(m, L, k, a_mode);
  return signal_threshold(1.0, sigma_over_mu, n_t);
}

}  // namespace ccode::model
