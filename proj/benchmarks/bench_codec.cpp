#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "ccode/channel.hpp"
#include "ccode/codec.hpp"
#include "ccode/experiments.hpp"
#include "ccode/hamming_ref.hpp"

namespace {

using namespace ccode;

void BM_EncodeSet(benchmark::State& state) {
  CodecParams p;
  RngStream rng(1);
  const auto msgs = random_messages(rng, static_cast<std::size_t>(state.range(0)), p.data_bits);
  for (auto _ : state) benchmark::DoNotOptimize(encode_set(p, msgs));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EncodeSet)->Arg(1)->Arg(10)->Arg(80);

// range(0): messages, range(1): noise level in dB (-100 means none).
void BM_Decode(benchmark::State& state) {
  CodecParams p;
  RngStream rng(2);
  const auto msgs = random_messages(rng, static_cast<std::size_t>(state.range(0)), p.data_bits);
  auto cw = encode_set(p, msgs);
  if (state.range(1) > -100) cw = add_random_marks(cw, db_to_marks(static_cast<double>(state.range(1)), 10), rng);
  std::uint64_t calls = 0;
  for (auto _ : state) {
    const auto r = decode(p, cw);
    calls = r.hash_calls;
    benchmark::DoNotOptimize(r.messages.data());
  }
  state.counters["hash_calls"] = static_cast<double>(calls);
}
BENCHMARK(BM_Decode)
    ->Args({10, -100})
    ->Args({80, -100})
    ->Args({10, 10})
    ->Args({10, 18})
    ->Args({10, 20})
    ->Args({32, 18});

void BM_DecodeWithGap(benchmark::State& state) {
  CodecParams p;
  RngStream rng(3);
  const auto msgs = random_messages(rng, 30, p.data_bits);
  const std::size_t len = static_cast<std::size_t>(state.range(0)) * 2048 / 100;
  const auto cw = cut_gap(encode_set(p, msgs), 500, len);
  const auto gaps = detect_gaps(cw, 205);
  for (auto _ : state) benchmark::DoNotOptimize(decode(p, cw, gaps).messages.data());
}
BENCHMARK(BM_DecodeWithGap)->Arg(10)->Arg(40)->Arg(50);

void BM_HammingFrame(benchmark::State& state) {
  RngStream rng(4);
  std::vector<std::uint8_t> msgs(hamming::kSlots);
  for (auto& b : msgs) b = static_cast<std::uint8_t>(rng.uniform_below(256));
  for (auto _ : state) {
    const auto frame = hamming::encode_frame(msgs);
    benchmark::DoNotOptimize(hamming::decode_frame(frame, msgs).error_fraction);
  }
}
BENCHMARK(BM_HammingFrame);

}  // namespace

BENCHMARK_MAIN();
