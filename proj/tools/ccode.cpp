// ccode: encode, decode and corrupt codeword files, run sweeps and model tables.

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccode/channel.hpp"
#include "ccode/codec.hpp"
#include "ccode/experiments.hpp"
#include "ccode/formats.hpp"
#include "ccode/model.hpp"

namespace {

using namespace ccode;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t parse_uint(const std::string& s, const char* what) {
  std::size_t used = 0;
  std::uint64_t v = 0;
  try {
    v = std::stoull(s, &used, 0);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || s.front() == '-') {
    throw UsageError(fmt::format("invalid {} '{}'", what, s));
  }
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw UsageError(fmt::format("invalid number '{}' in grid", s));
  return v;
}

/// Comma list whose items are values or start:stop:step ranges (stop inclusive).
std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split(text, ',')) {
    const auto parts = split(item, ':');
    if (parts.size() == 1 && item.find(':') == std::string::npos) {
      out.push_back(parse_double(item));
      continue;
    }
    if (parts.size() != 3) throw UsageError(fmt::format("grid range '{}' must be start:stop:step", item));
    const double a = parse_double(parts[0]);
    const double b = parse_double(parts[1]);
    const double step = parse_double(parts[2]);
    if (step <= 0 || b < a) throw UsageError(fmt::format("grid range '{}' is empty", item));
    const auto n = static_cast<long long>(std::floor((b - a) / step + 1e-9));
    for (long long i = 0; i <= n; ++i) out.push_back(a + static_cast<double>(i) * step);
  }
  if (out.empty()) throw UsageError("grid is empty");
  return out;
}

struct CodecOptions {
  int data_bits = 8;
  int checksum_bits = 2;
  int width = 11;
  std::string taps;
  std::string seed;
  std::string seeds;
  int clocks_per_bit = 1;

  void add_to(CLI::App& app) {
    app.add_option("--data-bits", data_bits, "Data bits per message")->capture_default_str();
    app.add_option("--checksum-bits", checksum_bits, "Zero checksum bits appended to each message")
        ->capture_default_str();
    app.add_option("--width", width, "Hash register width; codeword holds 2^width bits")->capture_default_str();
    app.add_option("--taps", taps, "Comma-separated LFSR tap positions (default 10,8)");
    app.add_option("--clocks-per-bit", clocks_per_bit, "LFSR clocks per absorbed bit")->capture_default_str();
    app.add_option("--seed", seed, "Hash seed, e.g. 0x001");
    app.add_option("--seeds", seeds, "Comma-separated hash seeds for multi-seed encoding");
  }

  CodecParams build() const {
    CodecParams p;
    p.data_bits = data_bits;
    p.checksum_bits = checksum_bits;
    p.hash.width = width;
    p.hash.clocks_per_bit = clocks_per_bit;
    if (!taps.empty()) {
      p.hash.taps.clear();
      for (const auto& t : split(taps, ',')) p.hash.taps.push_back(static_cast<int>(parse_uint(t, "tap")));
    }
    if (!seed.empty() && !seeds.empty()) throw UsageError("give --seed or --seeds, not both");
    if (!seed.empty()) p.seeds = {static_cast<std::uint32_t>(parse_uint(seed, "seed"))};
    if (!seeds.empty()) {
      p.seeds.clear();
      for (const auto& s : split(seeds, ',')) p.seeds.push_back(static_cast<std::uint32_t>(parse_uint(s, "seed")));
    }
    p.hash.seed = p.seeds.front();
    p.validate();
    return p;
  }
};

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError(fmt::format("cannot open '{}'", path));
  return in;
}

/// Runs `write` against --out, or stdout when no path is given.
template <typename F>
void with_output(const std::string& path, F&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw UsageError(fmt::format("cannot write '{}'", path));
  write(out);
}

Codeword load_codeword(const std::string& path, const CodecParams& codec) {
  auto in = open_in(path);
  Codeword cw = read_ccw(in);
  if (cw.width() != codec.width()) {
    throw UsageError(fmt::format("'{}' has W={} but --width is {}", path, cw.width(), codec.width()));
  }
  return cw;
}

void check_messages(const std::vector<Message>& msgs, const CodecParams& codec) {
  for (Message m : msgs) {
    if (m > codec.max_message()) {
      throw UsageError(fmt::format("message 0x{:x} does not fit in {} data bits", m, codec.data_bits));
    }
  }
}

std::optional<double> estimate(const std::function<double()>& f) {
  try {
    return f();
  } catch (const std::domain_error&) {
    return std::nullopt;
  }
}

std::string fmt_opt(const std::optional<double>& v) { return v ? fmt::format("{:.2f}", *v) : "n/a"; }

int run(int argc, char** argv) {
  CLI::App app{"Concurrent-code encoder, decoder and experiment harness"};
  app.require_subcommand(1);

  CodecOptions codec_opts;
  std::string in_path;
  std::string out_path;

  auto* enc = app.add_subcommand("encode", "Encode a message list into a CCW codeword");
  codec_opts.add_to(*enc);
  enc->add_option("--in", in_path, "Message list (one hex value per line)")->required();
  enc->add_option("--out", out_path, "Output CCW file (default stdout)");

  bool detect = false;
  std::optional<std::size_t> min_gap;
  auto* dec = app.add_subcommand("decode", "Decode a CCW codeword into a message list");
  codec_opts.add_to(*dec);
  dec->add_option("--in", in_path, "Input CCW file")->required();
  dec->add_option("--out", out_path, "Output message list (default stdout)");
  dec->add_flag("--detect-gaps", detect, "Treat long zero runs as erased spans");
  dec->add_option("--min-gap", min_gap, "Shortest zero run treated as a gap (implies --detect-gaps)");

  std::optional<double> noise_db;
  std::optional<std::size_t> noise_marks;
  double gap_frac = 0.0;
  std::string gap_start = "random";
  std::uint64_t rng_seed = 1;
  auto* cor = app.add_subcommand("corrupt", "Add noise marks and cut a gap");
  codec_opts.add_to(*cor);
  cor->add_option("--in", in_path, "Input CCW file")->required();
  cor->add_option("--out", out_path, "Output CCW file (default stdout)");
  auto* ndb = cor->add_option("--noise-db", noise_db, "Noise level; 0 dB adds one message worth of marks");
  cor->add_option("--noise-marks", noise_marks, "Exact number of noise marks")->excludes(ndb);
  cor->add_option("--gap-frac", gap_frac, "Fraction of the codeword to zero")->check(CLI::Range(0.0, 1.0));
  cor->add_option("--gap-start", gap_start, "Gap start position or 'random'")->capture_default_str();
  cor->add_option("--master-seed", rng_seed, "Random seed")->capture_default_str();

  ExperimentSpec spec;
  std::string kind_name;
  std::string grid_text;
  std::string partner_text;
  std::string gap_mode = "detect";
  std::string axis = "noise";
  std::string gap_start_exp = "random";
  std::optional<double> exp_noise_db;
  std::optional<std::size_t> exp_noise_marks;
  auto* exp = app.add_subcommand("experiment", "Run a Monte-Carlo sweep and write CSV");
  codec_opts.add_to(*exp);
  exp->add_option("kind", kind_name,
                  "noise_sweep | gap_sweep | marks_vs_messages | branch_profile | model_curve | "
                  "hamming_compare | multiseed | seed_screen")
      ->required();
  exp->add_option("--grid", grid_text, "Sweep values: comma list and/or start:stop:step ranges");
  exp->add_option("--trials", spec.trials, "Trials per grid point")->capture_default_str()->check(CLI::PositiveNumber);
  exp->add_option("--master-seed", spec.master_seed, "Master seed; trial t uses master XOR t")->capture_default_str();
  exp->add_option("--messages,-m", spec.messages, "Messages per trial")->capture_default_str();
  auto* endb = exp->add_option("--noise-db", exp_noise_db, "Extra noise for gap_sweep / seed_screen");
  exp->add_option("--noise-marks", exp_noise_marks, "Extra noise marks for gap_sweep / seed_screen")->excludes(endb);
  exp->add_option("--gap-frac", spec.gap_frac, "Fixed gap for branch_profile")->capture_default_str();
  exp->add_option("--gap-start", gap_start_exp, "Gap start position or 'random'")->capture_default_str();
  exp->add_option("--gap-mode", gap_mode, "detect | known")->capture_default_str();
  exp->add_option("--min-gap", spec.min_gap, "Gap detection threshold in bits");
  exp->add_option("--gap-min-messages", spec.gap_min_messages, "Message count the detection threshold assumes")
      ->capture_default_str();
  exp->add_option("--gap-p-max", spec.gap_p_max, "Chance-gap probability the detection threshold allows")
      ->capture_default_str();
  exp->add_option("--axis", axis, "hamming_compare axis: noise | gap")->capture_default_str();
  exp->add_option("--partner-seeds", partner_text, "seed_screen: seeds each candidate is paired with");
  exp->add_option("--curve", spec.curve, "model_curve table")->capture_default_str();
  exp->add_option("--out", out_path, "Output CSV (default stdout)");

  std::string curve;
  model::ModelParams mp;
  std::string a_mode = "continuous";
  std::string model_grid;
  auto* mod = app.add_subcommand("model", "Write a closed-form model table as CSV");
  mod->add_option("curve", curve, "branches | marks | threshold | gap_probability | load | snr")->required();
  mod->add_option("--m", mp.m, "Message count")->capture_default_str();
  mod->add_option("--L", mp.L, "Bits absorbed per message")->capture_default_str();
  mod->add_option("--k", mp.k, "Checksum bits")->capture_default_str();
  mod->add_option("--C", mp.C, "Codeword length")->capture_default_str();
  mod->add_option("--n", mp.n, "Noise fraction")->capture_default_str();
  mod->add_option("--g", mp.g, "Gap fraction")->capture_default_str();
  mod->add_option("--a-mode", a_mode, "floor | continuous")->capture_default_str();
  mod->add_option("--grid", model_grid, "Curve x values");
  mod->add_option("--out", out_path, "Output CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  if (enc->parsed()) {
    const auto codec = codec_opts.build();
    auto in = open_in(in_path);
    const auto msgs = read_message_list(in);
    check_messages(msgs, codec);
    const auto cw = encode_set(codec, msgs);
    with_output(out_path, [&](std::ostream& os) { write_ccw(os, cw); });
    return 0;
  }

  if (dec->parsed()) {
    const auto codec = codec_opts.build();
    const auto cw = load_codeword(in_path, codec);
    GapMask gaps;
    const bool use_gaps = detect || min_gap.has_value();
    if (use_gaps) {
      const std::size_t threshold = min_gap.value_or(gap_threshold(5.0, codec.codeword_size(), codec.message_bits(), 0.02));
      gaps = detect_gaps(cw, threshold);
    }
    const auto report = decode(codec, cw, gaps);
    const int L = codec.message_bits();
    const double C = static_cast<double>(codec.codeword_size());
    const double visible = C - static_cast<double>(gaps.total_length());
    const double marks = visible > 0 ? static_cast<double>(cw.mark_count()) * C / visible : 0.0;
    const double seeds = static_cast<double>(codec.seeds.size());
    const auto numeric = estimate([&] { return model::messages_from_marks_numeric(marks, L) / seeds; });
    const auto series = estimate([&] { return model::messages_from_marks_series(marks, L) / seeds; });
    with_output(out_path, [&](std::ostream& os) {
      write_message_list(os, report.messages, codec.data_bits);
      if (use_gaps) {
        for (const auto& iv : gaps.intervals()) os << fmt::format("# gap start={} length={}\n", iv.start, iv.length);
      }
      os << fmt::format("# decoded={} marks={} expected_m_numeric={} expected_m_series={}\n", report.messages.size(),
                        cw.mark_count(), fmt_opt(numeric), fmt_opt(series));
      if (numeric && static_cast<double>(report.messages.size()) + 0.5 < *numeric * 0.75) {
        os << "# warning: fewer messages decoded than the mark count suggests\n";
      }
    });
    return 0;
  }

  if (cor->parsed()) {
    const auto codec = codec_opts.build();
    auto cw = load_codeword(in_path, codec);
    RngStream rng(rng_seed);
    NoiseSpec noise{noise_db, noise_marks};
    const std::size_t count = noise.resolve(codec.message_bits());
    if (count > cw.size()) throw UsageError(fmt::format("{} noise marks exceed the codeword size", count));
    cw = add_random_marks(std::move(cw), count, rng);
    const auto length = static_cast<std::size_t>(std::llround(gap_frac * static_cast<double>(cw.size())));
    std::size_t start = 0;
    if (gap_start == "random") {
      start = static_cast<std::size_t>(rng.uniform_below(cw.size() - length + 1));
    } else {
      start = parse_uint(gap_start, "gap start");
    }
    cw = cut_gap(std::move(cw), start, length);
    with_output(out_path, [&](std::ostream& os) { write_ccw(os, cw); });
    return 0;
  }

  if (exp->parsed()) {
    spec.kind = parse_experiment_kind(kind_name);
    spec.codec = codec_opts.build();
    spec.noise = NoiseSpec{exp_noise_db, exp_noise_marks};
    if (gap_start_exp != "random") spec.gap_start = parse_uint(gap_start_exp, "gap start");
    if (gap_mode == "detect") {
      spec.gap_mode = GapMode::detect;
    } else if (gap_mode == "known") {
      spec.gap_mode = GapMode::known;
    } else {
      throw UsageError(fmt::format("unknown gap mode '{}'", gap_mode));
    }
    if (axis == "noise") {
      spec.hamming_axis = HammingAxis::noise;
    } else if (axis == "gap") {
      spec.hamming_axis = HammingAxis::gap;
    } else {
      throw UsageError(fmt::format("unknown axis '{}'", axis));
    }
    for (const auto& s : split(partner_text, ',')) {
      spec.partner_seeds.push_back(static_cast<std::uint32_t>(parse_uint(s, "partner seed")));
    }
    if (spec.kind == ExperimentKind::hamming_compare && spec.hamming_axis == HammingAxis::gap && grid_text.empty()) {
      grid_text = "0:0.5:0.03125";
    }
    spec.grid = grid_text.empty() ? default_grid(spec.kind, spec.curve) : parse_grid(grid_text);
    const auto table = run_experiment(spec);
    with_output(out_path, [&](std::ostream& os) { table.write(os); });
    return 0;
  }

  if (mod->parsed()) {
    spec.kind = ExperimentKind::model_curve;
    spec.curve = curve;
    if (a_mode == "floor") {
      mp.a_mode = model::AMode::floor;
    } else if (a_mode == "continuous") {
      mp.a_mode = model::AMode::continuous;
    } else {
      throw UsageError(fmt::format("unknown a-mode '{}'", a_mode));
    }
    spec.model = mp;
    spec.grid = model_grid.empty() ? default_grid(spec.kind, curve) : parse_grid(model_grid);
    const auto table = run_model_curve(spec);
    with_output(out_path, [&](std::ostream& os) { table.write(os); });
    return 0;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "ccode: error: " << e.what() << '\n';
    return 2;
  }
}
