#include "ccode/experiments.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ccode/hamming_ref.hpp"

namespace ccode {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct KindName {
  ExperimentKind kind;
  std::string_view name;
};

constexpr std::array<KindName, 8> kKindNames = {{
    {ExperimentKind::noise_sweep, "noise_sweep"},
    {ExperimentKind::gap_sweep, "gap_sweep"},
    {ExperimentKind::marks_vs_messages, "marks_vs_messages"},
    {ExperimentKind::branch_profile, "branch_profile"},
    {ExperimentKind::model_curve, "model_curve"},
    {ExperimentKind::hamming_compare, "hamming_compare"},
    {ExperimentKind::multiseed, "multiseed"},
    {ExperimentKind::seed_screen, "seed_screen"},
}};

void require_kind(const ExperimentSpec& spec, ExperimentKind expected) {
  if (spec.kind != expected) {
    throw std::invalid_argument(fmt::format("experiment kind {} passed to the {} runner", to_string(spec.kind),
                                            to_string(expected)));
  }
  spec.validate();
}

std::string hex_seeds(const std::vector<std::uint32_t>& seeds) {
  std::vector<std::string> parts;
  for (auto s : seeds) parts.push_back(fmt::format("0x{:03x}", s));
  return fmt::format("{}", fmt::join(parts, ","));
}

std::vector<std::string> header(const ExperimentSpec& spec) {
  const auto& c = spec.codec;
  return {
      fmt::format("experiment={}", to_string(spec.kind)),
      fmt::format("data_bits={} checksum_bits={} width={} taps={} clocks_per_bit={} seeds={}", c.data_bits,
                  c.checksum_bits, c.width(), fmt::join(c.hash.taps, ","), c.hash.clocks_per_bit,
                  hex_seeds(c.seeds)),
      fmt::format("messages={} trials={} master_seed={} rng={}", spec.messages, spec.trials, spec.master_seed,
                  RngStream::algorithm),
      fmt::format("grid={}", fmt::join(spec.grid, ",")),
  };
}

std::string gap_description(const ExperimentSpec& spec) {
  const std::string placement = spec.gap_start ? fmt::format("{}", *spec.gap_start) : std::string("random");
  if (spec.gap_mode == GapMode::known) return fmt::format("gap_mode=known gap_start={}", placement);
  return fmt::format("gap_mode=detect gap_start={} min_gap={} (gap_min_messages={} gap_p_max={})", placement,
                     spec.resolved_min_gap(), spec.gap_min_messages, spec.gap_p_max);
}

std::size_t gap_bits(double frac, std::size_t C) {
  if (frac < 0.0 || frac > 1.0) throw std::invalid_argument(fmt::format("gap fraction {} outside [0, 1]", frac));
  return static_cast<std::size_t>(std::llround(frac * static_cast<double>(C)));
}

std::size_t place_gap(const ExperimentSpec& spec, std::size_t length, std::size_t C, RngStream& rng) {
  if (spec.gap_start) {
    if (*spec.gap_start + length > C) {
      throw std::invalid_argument(fmt::format("gap of {} bits at {} runs past the codeword end", length,
                                              *spec.gap_start));
    }
    return *spec.gap_start;
  }
  return static_cast<std::size_t>(rng.uniform_below(C - length + 1));
}

GapMask receiver_gaps(const ExperimentSpec& spec, const Codeword& received, std::size_t start,
                      std::size_t length) {
  if (spec.gap_mode == GapMode::known) {
    if (length == 0) return {};
    return GapMask({{start, length}}, received.size());
  }
  return detect_gaps(received, spec.resolved_min_gap());
}

model::ModelParams model_for(const ExperimentSpec& spec, double n, double g) {
  model::ModelParams p;
  p.m = static_cast<double>(spec.messages);
  p.L = spec.codec.message_bits();
  p.k = spec.codec.checksum_bits;
  p.C = static_cast<double>(spec.codec.codeword_size());
  p.n = n;
  p.g = g;
  p.a_mode = model::AMode::floor;
  return p;
}

double predicted_hallucinations(const ExperimentSpec& spec, double n, double g) {
  if (spec.messages < 1 || n + g > 1.0) return kNaN;
  const auto p = model_for(spec, n, g);
  if (p.m > std::ldexp(1.0, p.data_bits())) return kNaN;
  return model::expected_hallucinations(p);
}

/// Per-trial outcome shared by the concurrent-code sweeps.
struct TrialOutcome {
  double hallucinations = 0;
  double recovered = 0;
  double genuine = 0;
  double hash_calls = 0;
  double detected_gap = 0;
};

struct Accumulator {
  std::vector<double> hallucinations;
  double recovered = 0;
  double genuine = 0;
  double hash_calls = 0;
  double detected_gap = 0;
  std::size_t with_hallucinations = 0;

  void add(const TrialOutcome& t) {
    hallucinations.push_back(t.hallucinations);
    recovered += t.recovered;
    genuine += t.genuine;
    hash_calls += t.hash_calls;
    detected_gap += t.detected_gap;
    if (t.hallucinations > 0) ++with_hallucinations;
  }
  double n() const { return static_cast<double>(hallucinations.size()); }
  double recovered_fraction() const { return genuine > 0 ? recovered / genuine : 1.0; }
};

TrialOutcome score(const DecodeReport& report, const std::vector<Message>& truth) {
  TrialOutcome t;
  t.hallucinations = static_cast<double>(count_hallucinations(report, truth));
  t.genuine = static_cast<double>(truth.size());
  t.recovered = t.genuine - static_cast<double>(count_missing(report.messages, truth));
  t.hash_calls = static_cast<double>(report.hash_calls);
  t.detected_gap = static_cast<double>(report.gaps.total_length());
  return t;
}

}  // namespace

std::string_view to_string(ExperimentKind kind) {
  for (const auto& kn : kKindNames) {
    if (kn.kind == kind) return kn.name;
  }
  return "unknown";
}

ExperimentKind parse_experiment_kind(std::string_view name) {
  for (const auto& kn : kKindNames) {
    if (kn.name == name) return kn.kind;
  }
  throw std::invalid_argument(fmt::format("unknown experiment kind '{}'", name));
}

void ExperimentSpec::validate() const {
  codec.validate();
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (grid.empty()) throw std::invalid_argument("experiment grid is empty");
}

std::size_t ExperimentSpec::resolved_min_gap() const {
  if (min_gap) return *min_gap;
  return gap_threshold(gap_min_messages, codec.codeword_size(), codec.message_bits(), gap_p_max);
}

MeanSd mean_sd(const std::vector<double>& xs) {
  if (xs.empty()) return {kNaN, kNaN};
  double sum = 0;
  for (double x : xs) sum += x;
  const double mean = sum / static_cast<double>(xs.size());
  if (xs.size() < 2) return {mean, 0.0};
  double ss = 0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / static_cast<double>(xs.size() - 1))};
}

std::vector<Message> random_messages(RngStream& rng, std::size_t m, int data_bits) {
  if (data_bits < 1 || data_bits > 62) throw std::invalid_argument("random_messages supports 1..62 data bits");
  const auto drawn = rng.sample_distinct(m, std::uint64_t{1} << data_bits);
  return {drawn.begin(), drawn.end()};
}

std::array<double, 4> fit_cubic(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 4) throw std::invalid_argument("cubic fit needs >= 4 paired points");
  Eigen::MatrixXd A(xs.size(), 4);
  Eigen::VectorXd b(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    A(r, 0) = 1.0;
    A(r, 1) = xs[i];
    A(r, 2) = xs[i] * xs[i];
    A(r, 3) = xs[i] * xs[i] * xs[i];
    b(r) = ys[i];
  }
  const Eigen::Vector4d c = A.colPivHouseholderQr().solve(b);
  return {c(0), c(1), c(2), c(3)};
}

std::vector<double> default_grid(ExperimentKind kind, const std::string& curve) {
  std::vector<double> g;
  switch (kind) {
    case ExperimentKind::noise_sweep:
      for (int db = 0; db <= 22; ++db) g.push_back(db);
      break;
    case ExperimentKind::gap_sweep:
      for (int p = 0; p <= 60; p += 5) g.push_back(p / 100.0);
      break;
    case ExperimentKind::marks_vs_messages:
      for (int m = 0; m <= 100; m += 10) g.push_back(m);
      break;
    case ExperimentKind::branch_profile:
      g = {0.0, 0.1, 0.2, 0.3, 0.45};
      break;
    case ExperimentKind::hamming_compare:
      for (int db = 0; db <= 22; ++db) g.push_back(db);
      break;
    case ExperimentKind::multiseed:
      g = {10};
      break;
    case ExperimentKind::seed_screen:
      for (int s = 1; s <= 64; ++s) g.push_back(s);
      break;
    case ExperimentKind::model_curve:
      if (curve == "branches") {
        for (int i = 1; i <= 10; ++i) g.push_back(i);
      } else if (curve == "load") {
        for (int p = 0; p <= 50; p += 5) g.push_back(p / 100.0);
      } else if (curve == "snr") {
        for (int p = 0; p <= 20; ++p) g.push_back(p / 10.0);
      } else {
        for (int m = 1; m <= 100; ++m) g.push_back(m);
      }
      break;
  }
  return g;
}

CsvTable run_noise_sweep(const ExperimentSpec& spec) {
  require_kind(spec, ExperimentKind::noise_sweep);
  const auto C = spec.codec.codeword_size();
  CsvTable t;
  t.comments = header(spec);
  t.comments.push_back(fmt::format("noise: 0 dB = {} random marks (one encoded message)", spec.codec.message_bits()));
  t.columns = {"noise_db",    "mean_hallucinations", "sd",           "mean_hash_calls", "genuine_recovered_fraction",
               "noise_marks", "hallucination_trial_fraction",       "predicted_H"};
  for (double db : spec.grid) {
    const std::size_t count = db_to_marks(db, spec.codec.message_bits());
    if (count > C) throw std::invalid_argument(fmt::format("{} dB asks for more marks than the codeword holds", db));
    Accumulator acc;
    for (std::size_t trial = 0; trial < spec.trials; ++trial) {
      auto rng = RngStream::for_trial(spec.master_seed, trial);
      const auto msgs = random_messages(rng, spec.messages, spec.codec.data_bits);
      const auto received = add_random_marks(encode_set(spec.codec, msgs), count, rng);
      acc.add(score(decode(spec.codec, received), msgs));
    }
    const auto h = mean_sd(acc.hallucinations);
    const double n = static_cast<double>(count) / static_cast<double>(C);
    t.add_row({db, h.mean, h.sd, acc.hash_calls / acc.n(), acc.recovered_fraction(), static_cast<double>(count),
               static_cast<double>(acc.with_hallucinations) / acc.n(), predicted_hallucinations(spec, n, 0.0)});
  }
  return t;
}

CsvTable run_gap_sweep(const ExperimentSpec& spec) {
  require_kind(spec, ExperimentKind::gap_sweep);
  const auto C = spec.codec.codeword_size();
  const std::size_t noise = spec.noise.resolve(spec.codec.message_bits());
  CsvTable t;
  t.comments = header(spec);
  t.comments.push_back(gap_description(spec));
  t.comments.push_back(fmt::format("extra_noise_marks={}", noise));
  t.columns = {"gap_frac",    "mean_hallucinations",          "sd",
               "predicted_H", "genuine_recovered_fraction",   "gap_bits",
               "hallucination_trial_fraction",                "mean_detected_gap_frac",
               "mean_hash_calls"};
  for (double frac : spec.grid) {
    const std::size_t length = gap_bits(frac, C);
    Accumulator acc;
    for (std::size_t trial = 0; trial < spec.trials; ++trial) {
      auto rng = RngStream::for_trial(spec.master_seed, trial);
      const auto msgs = random_messages(rng, spec.messages, spec.codec.data_bits);
      auto cw = add_random_marks(encode_set(spec.codec, msgs), noise, rng);
      const std::size_t start = place_gap(spec, length, C, rng);
      cw = cut_gap(std::move(cw), start, length);
      acc.add(score(decode(spec.codec, cw, receiver_gaps(spec, cw, start, length)), msgs));
    }
    const auto h = mean_sd(acc.hallucinations);
    const double n = static_cast<double>(noise) / static_cast<double>(C);
    const double g = static_cast<double>(length) / static_cast<double>(C);
    t.add_row({frac, h.mean, h.sd, predicted_hallucinations(spec, n, g), acc.recovered_fraction(),
               static_cast<double>(length), static_cast<double>(acc.with_hallucinations) / acc.n(),
               acc.detected_gap / acc.n() / static_cast<double>(C), acc.hash_calls / acc.n()});
  }
  return t;
}

CsvTable run_marks_vs_messages(const ExperimentSpec& spec) {
  require_kind(spec, ExperimentKind::marks_vs_messages);
  CsvTable t;
  t.comments = header(spec);
  t.columns = {"m", "mean_marks", "sd", "Z_eq2", "m_from_marks_numeric"};
  std::vector<double> fit_marks;
  std::vector<double> fit_m;
  for (double mv : spec.grid) {
    if (mv < 0 || mv != std::floor(mv)) throw std::invalid_argument(fmt::format("message count {} invalid", mv));
    const auto m = static_cast<std::size_t>(mv);
    std::vector<double> marks;
    for (std::size_t trial = 0; trial < spec.trials; ++trial) {
      auto rng = RngStream::for_trial(spec.master_seed, trial);
      const auto msgs = random_messages(rng, m, spec.codec.data_bits);
      marks.push_back(static_cast<double>(encode_set(spec.codec, msgs).mark_count()));
    }
    const auto s = mean_sd(marks);
    const int L = spec.codec.message_bits();
    const double z = model::marks_expected(mv, L);
    const double inv = s.mean <= model::max_marks(L) ? model::messages_from_marks_numeric(s.mean, L) : kNaN;
    t.add_row({mv, s.mean, s.sd, z, inv});
    fit_marks.push_back(s.mean);
    fit_m.push_back(mv);
  }
  if (fit_marks.size() >= 4) {
    const auto c = fit_cubic(fit_marks, fit_m);
    t.comments.push_back(fmt::format("cubic_fit m(marks) = c0 + c1*x + c2*x^2 + c3*x^3: c0={} c1={} c2={} c3={}",
                                     c[0], c[1], c[2], c[3]));
  }
  return t;
}

CsvTable run_branch_profile(const ExperimentSpec& spec) {
  require_kind(spec, ExperimentKind::branch_profile);
  const auto C = spec.codec.codeword_size();
  const std::size_t length = gap_bits(spec.gap_frac, C);
  const int L = spec.codec.message_bits();
  CsvTable t;
  t.comments = header(spec);
  t.comments.push_back(fmt::format("gap_frac={} {}", spec.gap_frac, gap_description(spec)));
  t.comments.push_back("grid values are noise fractions n; predicted_branches uses a = floor(log2 m)");
  t.columns = {"noise_frac", "gap_frac", "round", "measured_mean_branches", "measured_sd", "predicted_branches"};
  for (double n : spec.grid) {
    if (n < 0.0 || n > 1.0) throw std::invalid_argument(fmt::format("noise fraction {} outside [0, 1]", n));
    const auto count = static_cast<std::size_t>(std::llround(n * static_cast<double>(C)));
    std::vector<std::vector<double>> per_round(static_cast<std::size_t>(L));
    for (std::size_t trial = 0; trial < spec.trials; ++trial) {
      auto rng = RngStream::for_trial(spec.master_seed, trial);
      const auto msgs = random_messages(rng, spec.messages, spec.codec.data_bits);
      auto cw = add_random_marks(encode_set(spec.codec, msgs), count, rng);
      const std::size_t start = place_gap(spec, length, C, rng);
      cw = cut_gap(std::move(cw), start, length);
      const auto report = decode(spec.codec, cw, receiver_gaps(spec, cw, start, length));
      for (int i = 0; i < L; ++i) {
        per_round[static_cast<std::size_t>(i)].push_back(
            static_cast<double>(report.branches_per_round[static_cast<std::size_t>(i)]));
      }
    }
    const auto p = model_for(spec, n, spec.gap_frac);
    const bool model_ok = n + spec.gap_frac <= 1.0 && spec.messages >= 1;
    for (int i = 1; i <= L; ++i) {
      const auto s = mean_sd(per_round[static_cast<std::size_t>(i - 1)]);
      t.add_row({n, spec.gap_frac, static_cast<double>(i), s.mean, s.sd,
                 model_ok ? model::live_branches(i, p) : kNaN});
    }
  }
  return t;
}

CsvTable run_model_curve(const ExperimentSpec& spec) {
  require_kind(spec, ExperimentKind::model_curve);
  const auto& p = spec.model;
  CsvTable t;
  t.comments = {
      fmt::format("model_curve={}", spec.curve),
      fmt::format("m={} L={} k={} C={} n={} g={} a_mode={}", p.m, p.L, p.k, p.C, p.n, p.g,
                  p.a_mode == model::AMode::floor ? "floor" : "continuous"),
      fmt::format("grid={}", fmt::join(spec.grid, ",")),
  };
  if (spec.curve == "branches") {
    t.columns = {"i", "B_i"};
    for (double i : spec.grid) t.add_row({i, model::live_branches(static_cast<int>(i), p)});
  } else if (spec.curve == "marks") {
    t.columns = {"m", "Z"};
    for (double m : spec.grid) t.add_row({m, model::marks_expected(m, p.L)});
  } else if (spec.curve == "threshold") {
    t.columns = {"m", "marks_threshold", "threshold_ng"};
    for (const auto& pt : model::marks_threshold_curve(spec.grid, p.L, p.k, p.C, p.a_mode)) {
      t.add_row({pt.m, pt.marks, model::threshold_ng(pt.m, p.L, p.k, p.a_mode)});
    }
  } else if (spec.curve == "gap_probability") {
    const double e = std::round(p.g * p.C);
    t.comments.push_back(fmt::format("block length E={} (g * C)", e));
    t.columns = {"m", "P_B"};
    for (double m : spec.grid) t.add_row({m, model::gap_block_probability(m, e, p.C, p.L)});
  } else if (spec.curve == "load") {
    t.columns = {"n", "load"};
    for (double n : spec.grid) {
      auto q = p;
      q.n = n;
      t.add_row({n, model::computational_load(q)});
    }
  } else if (spec.curve == "snr") {
    t.columns = {"sigma_over_mu", "Et_over_mu"};
    for (double r : spec.grid) t.add_row({r, model::required_snr(r, p.m, p.L, p.k, p.a_mode)});
  } else {
    throw std::invalid_argument(fmt::format("unknown model curve '{}'", spec.curve));
  }
  return t;
}

CsvTable run_hamming_compare(const ExperimentSpec& spec) {
  require_kind(spec, ExperimentKind::hamming_compare);
  if (spec.messages > hamming::kSlots) throw std::invalid_argument("Hamming frame holds at most 128 messages");
  const std::size_t C = std::size_t{1} << hamming::kFrameWidth;
  const bool noise_axis = spec.hamming_axis == HammingAxis::noise;
  CsvTable t;
  t.comments = header(spec);
  t.comments.push_back(noise_axis
                           ? fmt::format("axis=noise symmetric bit flips; 0 dB = {} flips",
                                         spec.codec.message_bits())
                           : fmt::format("axis=gap zeroed span, gap_start={}",
                                         spec.gap_start ? fmt::format("{}", *spec.gap_start) : "random"));
  t.columns = {noise_axis ? "noise_db" : "gap_frac", noise_axis ? "flips" : "gap_bits", "mean_error_fraction", "sd",
               "error_trial_fraction"};
  for (double x : spec.grid) {
    const std::size_t amount = noise_axis ? db_to_marks(x, spec.codec.message_bits()) : gap_bits(x, C);
    std::vector<double> errors;
    std::size_t failed = 0;
    for (std::size_t trial = 0; trial < spec.trials; ++trial) {
      auto rng = RngStream::for_trial(spec.master_seed, trial);
      const auto drawn = rng.sample_distinct(spec.messages, 256);
      const std::vector<std::uint8_t> msgs(drawn.begin(), drawn.end());
      auto frame = hamming::encode_frame(msgs);
      if (noise_axis) {
        frame.bits = flip_random_bits(std::move(frame.bits), amount, rng);
      } else {
        frame.bits = cut_gap(std::move(frame.bits), place_gap(spec, amount, C, rng), amount);
      }
      const double e = hamming::decode_frame(frame, msgs).error_fraction;
      errors.push_back(e);
      if (e > 0) ++failed;
    }
    const auto s = mean_sd(errors);
    t.add_row({x, static_cast<double>(amount), s.mean, s.sd,
               static_cast<double>(failed) / static_cast<double>(spec.trials)});
  }
  return t;
}

CsvTable run_multiseed(const ExperimentSpec& spec) {
  require_kind(spec, ExperimentKind::multiseed);
  const auto& seeds = spec.codec.seeds;
  CsvTable t;
  t.comments = header(spec);
  t.comments.push_back("grid values are message counts; seed_index -1 is the intersection of all per-seed sets");
  t.columns = {"m", "seed_index", "seed", "exact_fraction", "mean_hallucinations", "max_hallucinations",
               "genuine_recovered_fraction"};
  for (double mv : spec.grid) {
    const auto m = static_cast<std::size_t>(mv);
    const std::size_t rows = seeds.size() + 1;
    std::vector<std::vector<double>> halluc(rows);
    std::vector<double> recovered(rows, 0.0);
    std::vector<std::size_t> exact(rows, 0);
    for (std::size_t trial = 0; trial < spec.trials; ++trial) {
      auto rng = RngStream::for_trial(spec.master_seed, trial);
      const auto msgs = random_messages(rng, m, spec.codec.data_bits);
      const auto report = decode(spec.codec, encode_set(spec.codec, msgs));
      for (std::size_t r = 0; r < rows; ++r) {
        const auto decoded = r < seeds.size() ? report.per_seed[r].messages : report.intersection();
        const auto h = count_hallucinations(decoded, msgs);
        const auto missing = count_missing(decoded, msgs);
        halluc[r].push_back(static_cast<double>(h));
        recovered[r] += static_cast<double>(m - missing);
        if (h == 0 && missing == 0) ++exact[r];
      }
    }
    for (std::size_t r = 0; r < rows; ++r) {
      const bool inter = r == seeds.size();
      const auto s = mean_sd(halluc[r]);
      const double total = static_cast<double>(m * spec.trials);
      t.add_row({mv, inter ? -1.0 : static_cast<double>(r), inter ? 0.0 : static_cast<double>(seeds[r]),
                 static_cast<double>(exact[r]) / static_cast<double>(spec.trials), s.mean,
                 *std::max_element(halluc[r].begin(), halluc[r].end()), total > 0 ? recovered[r] / total : 1.0});
    }
  }
  return t;
}

CsvTable run_seed_screen(const ExperimentSpec& spec) {
  require_kind(spec, ExperimentKind::seed_screen);
  const std::size_t noise = spec.noise.resolve(spec.codec.message_bits());
  CsvTable t;
  t.comments = header(spec);
  t.comments.push_back(fmt::format("candidates are grid values; partner_seeds={} noise_marks={}",
                                   hex_seeds(spec.partner_seeds), noise));
  t.columns = {"seed", "clean_fraction", "mean_hallucinations", "noisy_mean_hallucinations"};
  for (double sv : spec.grid) {
    const auto candidate = static_cast<std::uint32_t>(sv);
    if (std::find(spec.partner_seeds.begin(), spec.partner_seeds.end(), candidate) != spec.partner_seeds.end()) {
      continue;
    }
    CodecParams codec = spec.codec;
    codec.seeds = spec.partner_seeds;
    codec.seeds.push_back(candidate);
    std::size_t clean = 0;
    std::vector<double> halluc;
    std::vector<double> noisy;
    for (std::size_t trial = 0; trial < spec.trials; ++trial) {
      auto rng = RngStream::for_trial(spec.master_seed, trial);
      const auto msgs = random_messages(rng, spec.messages, codec.data_bits);
      const auto cw = encode_set(codec, msgs);
      const auto report = decode(codec, cw);
      std::size_t worst = 0;
      bool exact = true;
      for (const auto& sd : report.per_seed) {
        const auto h = count_hallucinations(sd.messages, msgs);
        worst = std::max(worst, h);
        exact = exact && h == 0 && count_missing(sd.messages, msgs) == 0;
      }
      if (exact) ++clean;
      halluc.push_back(static_cast<double>(worst));
      if (noise > 0) {
        const auto noisy_report = decode(codec, add_random_marks(cw, noise, rng));
        std::size_t w = 0;
        for (const auto& sd : noisy_report.per_seed) w = std::max(w, count_hallucinations(sd.messages, msgs));
        noisy.push_back(static_cast<double>(w));
      }
    }
    t.add_row({sv, static_cast<double>(clean) / static_cast<double>(spec.trials), mean_sd(halluc).mean,
               noise > 0 ? mean_sd(noisy).mean : kNaN});
  }
  return t;
}

CsvTable run_experiment(const ExperimentSpec& spec) {
  switch (spec.kind) {
    case ExperimentKind::noise_sweep:
      return run_noise_sweep(spec);
    case ExperimentKind::gap_sweep:
      return run_gap_sweep(spec);
    case ExperimentKind::marks_vs_messages:
      return run_marks_vs_messages(spec);
    case ExperimentKind::branch_profile:
      return run_branch_profile(spec);
    case ExperimentKind::model_curve:
      return run_model_curve(spec);
    case ExperimentKind::hamming_compare:
      return run_hamming_compare(spec);
    case ExperimentKind::multiseed:
      return run_multiseed(spec);
    case ExperimentKind::seed_screen:
      return run_seed_screen(spec);
  }
  throw std::invalid_argument("unhandled experiment kind");
}

}  // namespace ccode
