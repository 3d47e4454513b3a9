#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>
#include <stdexcept>

#include "ccode/model.hpp"

using namespace ccode::model;

namespace {

// Composite Simpson integral of the N(mu, sigma) density over [lo, hi].
double gaussian_mass(double mu, double sigma, double lo, double hi) {
  constexpr int kSteps = 20000;
  const double h = (hi - lo) / kSteps;
  auto pdf = [&](double x) {
    const double z = (x - mu) / sigma;
    return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * std::numbers::pi));
  };
  double s = pdf(lo) + pdf(hi);
  for (int i = 1; i < kSteps; ++i) s += pdf(lo + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

// Both roots of m (L - log2 m) = Z, found by bisection on either side of the peak.
double bisect_root(double Z, int L, double lo, double hi) {
  auto f = [&](double m) { return m * (L - std::log2(m)) - Z; };
  const bool rising = f(lo) < f(hi);
  for (int it = 0; it < 300; ++it) {
    const double mid = 0.5 * (lo + hi);
    if ((f(mid) < 0) == rising) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

ModelParams params(double m, double n, double g = 0.0) {
  ModelParams p;
  p.m = m;
  p.n = n;
  p.g = g;
  return p;
}

}  // namespace

TEST_SUITE("model") {
  TEST_CASE("marks_expected") {
    CHECK(marks_expected(1, 10) == doctest::Approx(10));
    CHECK(marks_expected(2, 10) == doctest::Approx(18));
    CHECK(marks_expected(100, 10) == doctest::Approx(335.6).epsilon(1e-4));
    CHECK(marks_expected(0, 10) == 0);
    CHECK(marks_expected(10, 10) == doctest::Approx(100 - 10 * std::log2(10.0)));
  }

  TEST_CASE("Lambert W series") {
    CHECK(lambert_w_series(0.0, 30) == 0.0);
    for (double x = -0.2; x <= 0.2001; x += 0.01) {
      const double w = lambert_w_series(x, 30);
      CHECK(std::abs(w * std::exp(w) - x) < 1e-6);
    }
  }

  TEST_CASE("series inversion lands on the large root") {
    const double large = bisect_root(10, 10, 1024 / std::numbers::e, 1024);
    CHECK(large == doctest::Approx(1017).epsilon(0.002));
    CHECK(messages_from_marks_series(10, 10) == doctest::Approx(large).epsilon(1e-4));
    CHECK(messages_from_marks_series(0, 10) == 0);
    CHECK_THROWS_AS(messages_from_marks_series(700, 10), std::domain_error);
  }

  TEST_CASE("numeric inversion") {
    CHECK(messages_from_marks_numeric(10, 10) == doctest::Approx(1).epsilon(1e-9));
    CHECK(messages_from_marks_numeric(marks_expected(10, 10), 10) == doctest::Approx(10).epsilon(1e-9));
    CHECK(messages_from_marks_numeric(66.78, 10) == doctest::Approx(10).epsilon(1e-3));
    CHECK(messages_from_marks_numeric(0, 10) == 0);
    const double small = bisect_root(200, 10, 1e-9, 1024 / std::numbers::e);
    CHECK(messages_from_marks_numeric(200, 10) == doctest::Approx(small).epsilon(1e-9));
    for (double m = 1; m <= 1024 / std::numbers::e; m += 3.7) {
      CHECK(std::abs(messages_from_marks_numeric(marks_expected(m, 10), 10) - m) < 1e-6);
    }
    CHECK(max_marks(10) == doctest::Approx(marks_expected(1024 / std::numbers::e, 10)));
    CHECK_THROWS_AS(messages_from_marks_numeric(max_marks(10) + 1, 10), std::domain_error);
    CHECK_THROWS_AS(messages_from_marks_numeric(-1, 10), std::domain_error);
  }

  TEST_CASE("gap block probability") {
    CHECK(gap_block_probability(5, std::round(0.10 * 2048), 2048, 10) == doctest::Approx(0.02).epsilon(0.05));
    CHECK(gap_block_probability(20, std::round(0.05 * 2048), 2048, 10) == doctest::Approx(0.003).epsilon(0.15));
    CHECK(gap_block_probability(5, 0, 2048, 10) == 1.0);
    CHECK(gap_block_probability(5, 1e-9, 2048, 10) == doctest::Approx(1.0));
    CHECK_THROWS(gap_block_probability(5, 2048, 2048, 10));
  }

  TEST_CASE("live branches and hallucinations") {
    CHECK(live_branches(6, params(32, 0.45)) == doctest::Approx(32 + 32 * 0.45 * 0.45));
    CHECK(live_branches(6, params(32, 0.45)) == doctest::Approx(38.48).epsilon(1e-4));
    CHECK(live_branches(10, params(32, 0.45)) == doctest::Approx(32 + 224 * std::pow(0.45, 6)));
    CHECK(live_branches(10, params(32, 0.45)) == doctest::Approx(33.86).epsilon(1e-3));
    CHECK(expected_hallucinations(params(32, 0.45)) == doctest::Approx(1.86).epsilon(5e-3));
    CHECK(expected_hallucinations(params(32, 0.0, 0.40)) == doctest::Approx(224 * std::pow(0.4, 6)));
    CHECK(expected_hallucinations(params(32, 0.0, 0.40)) == doctest::Approx(0.92).epsilon(0.01));
    for (int i = 1; i <= 10; ++i) {
      const double b = live_branches(i, params(32, 0.0));
      CHECK(b == (i <= 5 ? std::ldexp(1.0, i) : 32.0));
    }
    CHECK(expected_hallucinations(params(7, 0.0)) == 0.0);
    CHECK_THROWS(live_branches(0, params(32, 0.1)));
    CHECK_THROWS(live_branches(11, params(32, 0.1)));
    CHECK_THROWS(live_branches(3, params(32, 0.6, 0.5)));
    CHECK_THROWS(live_branches(3, params(300, 0.1)));
  }

  TEST_CASE("computational load") {
    // One message, no noise: two calls per data round, one per checksum round.
    CHECK(computational_load(params(1, 0.0)) == doctest::Approx(2 * 8 + 2));
    for (double m : {3.0, 32.0, 100.0}) {
      for (double n : {0.0, 0.2, 0.45}) {
        const auto p = params(m, n);
        double expect = 2.0;
        for (int i = 1; i < 10; ++i) expect += (i < 8 ? 2.0 : 1.0) * live_branches(i, p);
        CHECK(computational_load(p) == doctest::Approx(expect));
      }
    }
    double prev = 0;
    for (double n = 0; n <= 0.9; n += 0.05) {
      const double load = computational_load(params(32, n));
      CHECK(load >= prev);
      prev = load;
    }
    CHECK(computational_load(params(64, 0.45)) > computational_load(params(32, 0.45)));
  }

  TEST_CASE("threshold and marks curve") {
    CHECK(threshold_ng(32, 10, 2, AMode::floor) == doctest::Approx(std::pow(1.0 / 224, 1.0 / 6)));
    CHECK(threshold_ng(32, 10, 2, AMode::floor) == doctest::Approx(0.406).epsilon(1e-3));
    CHECK(threshold_ng(15, 10, 2, AMode::continuous) == doctest::Approx(0.461).epsilon(1e-3));
    CHECK_THROWS_AS(threshold_ng(256, 10, 2, AMode::floor), std::domain_error);

    std::vector<double> ms;
    for (int m = 1; m <= 100; ++m) ms.push_back(m);
    const auto curve = marks_threshold_curve(ms, 10, 2, 1024);
    REQUIRE(curve.size() == 100);
    std::size_t best = 0;
    for (std::size_t i = 0; i < curve.size(); ++i) {
      if (curve[i].marks < curve[best].marks) best = i;
      CHECK(curve[i].marks == doctest::Approx(1024 * threshold_ng(curve[i].m, 10, 2, AMode::continuous) +
                                              marks_expected(curve[i].m, 10)));
    }
    CHECK(curve[best].m == 15);
    CHECK(curve[31].marks == doctest::Approx(1024 * threshold_ng(32, 10, 2, AMode::continuous) + 320 - 160));
  }

  TEST_CASE("erfinv and signal threshold") {
    for (double y = -0.99; y < 1.0; y += 0.033) CHECK(std::abs(std::erf(erfinv(y)) - y) < 1e-9);
    CHECK(std::isinf(erfinv(1.0)));
    CHECK(erfinv(-1.0) < 0);
    CHECK_THROWS(erfinv(1.5));

    CHECK(signal_threshold(0.3, 2.0, 0.5) == doctest::Approx(0.3));
    CHECK(signal_threshold(1.0, 0.5, 0.15865525393145707) == doctest::Approx(1.5).epsilon(1e-6));
    for (double nt : {0.05, 0.2, 0.46, 0.7}) {
      const double et = signal_threshold(0.1, 0.2, nt);
      CHECK(gaussian_mass(0.1, 0.2, et, 0.1 + 12 * 0.2) == doctest::Approx(nt).epsilon(1e-6));
    }
    CHECK_THROWS(signal_threshold(0, 1, 0.0));
    CHECK_THROWS(signal_threshold(0, 1, 1.0));

    const double nt15 = threshold_ng(15, 10, 2, AMode::continuous);
    CHECK(std::numbers::sqrt2 * erfinv(1 - 2 * nt15) == doctest::Approx(0.0966).epsilon(0.01));
    CHECK(required_snr(0, 15, 10, 2) == doctest::Approx(1.0));
    CHECK(required_snr(1, 15, 10, 2) == doctest::Approx(1.097).epsilon(1e-3));
  }
}
