#include "ccode/channel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace ccode {

std::uint64_t RngStream::uniform_below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_below needs n > 0");
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

double RngStream::normal(double mean, double sd) {
  if (spare_) {
    const double z = *spare_;
    spare_.reset();
    return mean + sd * z;
  }
  double u1;
  do {
    u1 = uniform01();
  } while (u1 <= 0.0);
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  return mean + sd * r * std::cos(theta);
}

std::vector<std::uint64_t> RngStream::sample_distinct(std::size_t count, std::uint64_t population) {
  if (count > population) {
    throw std::invalid_argument("cannot draw " + std::to_string(count) + " distinct values from " +
                                std::to_string(population));
  }
  std::vector<std::uint64_t> out;
  out.reserve(count);
  if (population <= (std::uint64_t{1} << 22)) {
    std::vector<bool> taken(population, false);
    for (std::uint64_t j = population - count; j < population; ++j) {
      std::uint64_t t = uniform_below(j + 1);
      if (taken[t]) t = j;
      taken[t] = true;
      out.push_back(t);
    }
  } else {
    std::unordered_set<std::uint64_t> taken;
    for (std::uint64_t j = population - count; j < population; ++j) {
      std::uint64_t t = uniform_below(j + 1);
      if (taken.count(t)) t = j;
      taken.insert(t);
      out.push_back(t);
    }
  }
  return out;
}

std::size_t NoiseSpec::resolve(int marks_per_message) const {
  if (count) return *count;
  if (level_db) return db_to_marks(*level_db, marks_per_message);
  return 0;
}

std::size_t db_to_marks(double level_db, int marks_per_message) {
  if (marks_per_message < 1) throw std::invalid_argument("marks_per_message must be >= 1");
  return static_cast<std::size_t>(std::llround(marks_per_message * std::pow(10.0, level_db / 10.0)));
}

Codeword add_random_marks(Codeword codeword, std::size_t count, RngStream& rng) {
  if (count > codeword.size()) {
    throw std::invalid_argument("cannot add " + std::to_string(count) + " marks to a codeword of " +
                                std::to_string(codeword.size()));
  }
  for (std::uint64_t j : rng.sample_distinct(count, codeword.size())) codeword.set(j);
  return codeword;
}

Codeword flip_random_bits(Codeword codeword, std::size_t count, RngStream& rng) {
  if (count > codeword.size()) {
    throw std::invalid_argument("cannot flip " + std::to_string(count) + " bits of a codeword of " +
                                std::to_string(codeword.size()));
  }
  for (std::uint64_t j : rng.sample_distinct(count, codeword.size())) {
    if (codeword.test(j)) {
      codeword.reset(j);
    } else {
      codeword.set(j);
    }
  }
  return codeword;
}

Codeword cut_gap(Codeword codeword, std::size_t start, std::size_t length) {
  if (length == 0) return codeword;
  if (start >= codeword.size() || length > codeword.size() - start) {
    throw std::out_of_range("gap [" + std::to_string(start) + ", " + std::to_string(start + length) +
                            ") outside codeword of " + std::to_string(codeword.size()));
  }
  for (std::size_t j = start; j < start + length; ++j) codeword.reset(j);
  return codeword;
}

AnalogCodeword to_analog(const Codeword& codeword, double s, double mu, double sigma, RngStream& rng) {
  if (sigma < 0.0) throw std::invalid_argument("noise sigma must be >= 0");
  AnalogCodeword out{codeword.width(), {}, s, mu, sigma};
  out.amplitudes.resize(codeword.size());
  for (std::size_t j = 0; j < codeword.size(); ++j) {
    out.amplitudes[j] = (codeword.test(j) ? s : 0.0) + rng.normal(mu, sigma);
  }
  return out;
}

Codeword threshold_detect(const AnalogCodeword& analog, double threshold) {
  Codeword cw(analog.width);
  if (analog.amplitudes.size() != cw.size()) throw std::invalid_argument("analog codeword length mismatch");
  for (std::size_t j = 0; j < analog.amplitudes.size(); ++j) {
    if (analog.amplitudes[j] > threshold) cw.set(j);
  }
  return cw;
}

}  // namespace ccode
