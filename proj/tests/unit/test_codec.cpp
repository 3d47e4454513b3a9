#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "ccode/channel.hpp"
#include "ccode/codec.hpp"

using namespace ccode;

namespace {

// Default PRBS11 step written out with explicit taps.
std::uint32_t step11(std::uint32_t reg, unsigned bit) {
  const unsigned f = bit ^ ((reg >> 10) & 1U) ^ ((reg >> 8) & 1U);
  return ((reg << 1) & 0x7FFU) | f;
}

std::vector<std::uint32_t> oracle_addresses(Message msg, std::uint32_t seed, int data_bits, int k) {
  std::vector<std::uint32_t> out;
  std::uint32_t reg = seed;
  for (int i = 0; i < data_bits + k; ++i) {
    reg = step11(reg, i < data_bits ? static_cast<unsigned>((msg >> i) & 1U) : 0U);
    out.push_back(reg);
  }
  return out;
}

struct BruteDecode {
  std::vector<Message> messages;
  std::vector<std::size_t> branches;
  std::uint64_t hash_calls = 0;
};

// Enumerates every prefix of every message and keeps those whose addresses
// are all marked or inside the gap mask.
BruteDecode brute_decode(const Codeword& cw, const GapMask& gaps, std::uint32_t seed, int data_bits, int k) {
  const int L = data_bits + k;
  BruteDecode out;
  out.branches.assign(static_cast<std::size_t>(L), 0);
  auto ok = [&](std::uint32_t a) { return cw.test(a) || gaps.contains(a); };
  for (int i = 1; i <= L; ++i) {
    const int free_bits = std::min(i, data_bits);
    for (Message p = 0; p < (Message{1} << free_bits); ++p) {
      const auto addrs = oracle_addresses(p, seed, data_bits, k);
      bool alive = true;
      for (int r = 0; r < i && alive; ++r) alive = ok(addrs[static_cast<std::size_t>(r)]);
      if (alive) ++out.branches[static_cast<std::size_t>(i - 1)];
      if (alive && i == L) out.messages.push_back(p);
    }
  }
  std::size_t entering = 1;
  for (int i = 1; i <= L; ++i) {
    out.hash_calls += (i <= data_bits ? 2 : 1) * entering;
    entering = out.branches[static_cast<std::size_t>(i - 1)];
  }
  return out;
}

Codeword random_codeword(RngStream& rng, std::size_t marks) { return add_random_marks(Codeword(11), marks, rng); }

std::vector<Message> random_set(RngStream& rng, std::size_t m) {
  const auto d = rng.sample_distinct(m, 256);
  return {d.begin(), d.end()};
}

bool is_superset(std::vector<Message> big, std::vector<Message> small) {
  std::sort(big.begin(), big.end());
  std::sort(small.begin(), small.end());
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

}  // namespace

TEST_SUITE("codec") {
  TEST_CASE("params validation") {
    CodecParams p;
    CHECK(p.message_bits() == 10);
    CHECK(p.codeword_size() == 2048);
    CHECK(p.max_message() == 255);
    CHECK_NOTHROW(p.validate());
    p.data_bits = 60;
    p.checksum_bits = 5;
    CHECK_THROWS(p.validate());
    p = CodecParams{};
    p.seeds = {1, 1};
    CHECK_THROWS(p.validate());
    p.seeds = {};
    CHECK_THROWS(p.validate());
    p.seeds = {0};
    CHECK_THROWS(p.validate());
    p.seeds = {0x800};
    CHECK_THROWS(p.validate());
    p = CodecParams{};
    p.checksum_bits = -1;
    CHECK_THROWS(p.validate());
  }

  TEST_CASE("encode_message against the hand-stepped oracle") {
    CodecParams p;
    CHECK(encode_message(p, 0x00, 0x001) ==
          std::vector<std::uint32_t>{0x002, 0x004, 0x008, 0x010, 0x020, 0x040, 0x080, 0x100, 0x201, 0x402});
    CHECK(encode_message(p, 0x01, 0x001) ==
          std::vector<std::uint32_t>{0x003, 0x006, 0x00C, 0x018, 0x030, 0x060, 0x0C0, 0x180, 0x301, 0x603});
    for (Message m = 0; m < 256; ++m) {
      const auto a = encode_message(p, m, 0x001);
      CHECK(a.size() == 10);
      CHECK(a == oracle_addresses(m, 0x001, 8, 2));
      CHECK(encode_message(p, m, 0x2A5) == oracle_addresses(m, 0x2A5, 8, 2));
    }
  }

  TEST_CASE("encode_set marks and sharing") {
    CodecParams p;
    CHECK(encode_set(p, std::vector<Message>{}).mark_count() == 0);
    // 0x00 and 0x80 share their first seven absorbed bits.
    CHECK(encode_set(p, std::vector<Message>{0x00, 0x80}).mark_count() == 13);
    // 0b1011 and 0b0011 share the LSB-first prefixes "1" and "11".
    const auto shared = encode_set(p, std::vector<Message>{0x0B, 0x03}).mark_count();
    CHECK(shared < 20);
    CHECK(encode_set(p, std::vector<Message>{0x05, 0x05}) == encode_set(p, std::vector<Message>{0x05}));

    RngStream rng(3);
    for (int rep = 0; rep < 200; ++rep) {
      const auto msgs = random_set(rng, 2 + rng.uniform_below(40));
      std::set<std::uint32_t> distinct;
      for (auto m : msgs) {
        for (auto a : oracle_addresses(m, 0x001, 8, 2)) distinct.insert(a);
      }
      const auto cw = encode_set(p, msgs);
      CHECK(cw.mark_count() == distinct.size());
      CHECK(cw.mark_count() <= 10 * msgs.size());
      const bool share_first = std::any_of(msgs.begin(), msgs.end(), [&](Message a) {
        return std::count_if(msgs.begin(), msgs.end(), [&](Message b) { return (a & 1U) == (b & 1U); }) > 1;
      });
      if (share_first) CHECK(cw.mark_count() < 10 * msgs.size());
    }
  }

  TEST_CASE("detect_gaps") {
    Codeword ones(11);
    for (std::size_t j = 0; j < 2048; ++j) ones.set(j);
    CHECK(detect_gaps(ones, 1).empty());

    const auto all = detect_gaps(Codeword(11), 100);
    REQUIRE(all.intervals().size() == 1);
    CHECK(all.intervals()[0] == Interval{0, 2048});

    Codeword holes = ones;
    for (std::size_t j = 500; j < 1400; ++j) holes.reset(j);
    const auto one = detect_gaps(holes, 205);
    REQUIRE(one.intervals().size() == 1);
    CHECK(one.intervals()[0] == Interval{500, 900});

    // Run-length scan oracle on random sparse codewords.
    RngStream rng(9);
    for (int rep = 0; rep < 100; ++rep) {
      const auto cw = random_codeword(rng, 5 + rng.uniform_below(60));
      const std::size_t min_gap = 1 + rng.uniform_below(120);
      std::vector<Interval> expect;
      std::size_t run = 0;
      for (std::size_t j = 0; j <= cw.size(); ++j) {
        if (j < cw.size() && !cw.test(j)) {
          ++run;
          continue;
        }
        if (run >= min_gap) expect.push_back({j - run, run});
        run = 0;
      }
      CHECK(detect_gaps(cw, min_gap).intervals() == expect);
    }
    CHECK_THROWS(detect_gaps(ones, 0));
  }

  TEST_CASE("gap_threshold") {
    // Scan oracle over the block-probability formula.
    auto pb = [](double m, double E, double C, int L) {
      const double z = L * m - m * std::log2(m);
      return (C - E) / C * std::exp(-z * E / C);
    };
    auto scan = [&](double m, double C, int L, double pmax) {
      for (std::size_t E = 1; E < static_cast<std::size_t>(C); ++E) {
        if (pb(m, static_cast<double>(E), C, L) <= pmax) return E;
      }
      return static_cast<std::size_t>(C);
    };
    CHECK(pb(5, 205, 2048, 10) == doctest::Approx(0.02).epsilon(0.05));
    CHECK(pb(20, 102, 2048, 10) == doctest::Approx(0.003).epsilon(0.15));
    const auto e1 = gap_threshold(5, 2048, 10, 0.01);
    CHECK(e1 == scan(5, 2048, 10, 0.01));
    CHECK(e1 >= 235);
    CHECK(e1 <= 245);
    CHECK(gap_threshold(5, 2048, 10, 0.02) == scan(5, 2048, 10, 0.02));
    CHECK(gap_threshold(20, 2048, 10, 0.003) == scan(20, 2048, 10, 0.003));
    CHECK(gap_threshold(5, 2048, 10, 1e-300) == 2048);
    CHECK_THROWS(gap_threshold(5, 2048, 10, 0.0));
  }

  TEST_CASE("decode matches brute-force enumeration") {
    CodecParams p;
    RngStream rng(17);
    for (int rep = 0; rep < 60; ++rep) {
      auto cw = random_codeword(rng, 100 + rng.uniform_below(1100));
      GapMask gaps;
      if (rep % 3 == 1) {
        const std::size_t len = 1 + rng.uniform_below(600);
        const std::size_t start = rng.uniform_below(2048 - len + 1);
        cw = cut_gap(std::move(cw), start, len);
        gaps = GapMask({{start, len}}, 2048);
      }
      const auto r = decode(p, cw, gaps);
      const auto b = brute_decode(cw, gaps, 0x001, 8, 2);
      CHECK(r.messages == b.messages);
      CHECK(r.branches_per_round == b.branches);
      CHECK(r.hash_calls == b.hash_calls);
      REQUIRE(r.per_seed.size() == 1);
      CHECK(r.per_seed[0].hash_calls == b.hash_calls);
      CHECK(r.gaps == gaps);
    }
  }

  TEST_CASE("round trip with zero corruption") {
    CodecParams p;
    RngStream rng(23);
    for (int rep = 0; rep < 100; ++rep) {
      auto msgs = random_set(rng, 1 + rng.uniform_below(80));
      const auto r = decode(p, encode_set(p, msgs));
      std::sort(msgs.begin(), msgs.end());
      CHECK(r.messages == msgs);
      CHECK(count_hallucinations(r, msgs) == 0);
    }
    CHECK(decode(p, Codeword(11)).messages.empty());
  }

  TEST_CASE("gap supplied to the decoder keeps erased messages") {
    CodecParams p;
    const std::vector<Message> msgs = {0x00};
    auto cw = cut_gap(encode_set(p, msgs), 0x100, 0x301);
    CHECK(cw.mark_count() < 10);
    const GapMask gaps({{0x100, 0x301}}, 2048);
    const auto r = decode(p, cw, gaps);
    CHECK(std::find(r.messages.begin(), r.messages.end(), Message{0x00}) != r.messages.end());
    CHECK(decode(p, cw).messages.empty());
  }

  TEST_CASE("adding marks or widening gaps never removes messages") {
    CodecParams p;
    RngStream rng(31);
    for (int rep = 0; rep < 100; ++rep) {
      const auto msgs = random_set(rng, 1 + rng.uniform_below(30));
      const auto x = add_random_marks(encode_set(p, msgs), rng.uniform_below(400), rng);
      const auto y = add_random_marks(x, 1 + rng.uniform_below(400), rng);
      const auto dx = decode(p, x);
      const auto dy = decode(p, y);
      CHECK(is_superset(dx.messages, msgs));
      CHECK(is_superset(dy.messages, dx.messages));

      const std::size_t len = 1 + rng.uniform_below(400);
      const std::size_t start = rng.uniform_below(2048 - len);
      const GapMask small({{start, len}}, 2048);
      const std::size_t extra = std::min<std::size_t>(2048 - start - len, 1 + rng.uniform_below(200));
      const GapMask large({{start, len + extra}}, 2048);
      const auto cut = cut_gap(x, start, len + extra);
      CHECK(is_superset(decode(p, cut, large).messages, decode(p, cut, small).messages));
    }
  }

  TEST_CASE("branch counts obey the doubling and checksum bounds") {
    CodecParams p;
    RngStream rng(37);
    for (int rep = 0; rep < 100; ++rep) {
      const auto cw = random_codeword(rng, rng.uniform_below(2048));
      const auto r = decode(p, cw);
      const auto& b = r.branches_per_round;
      REQUIRE(b.size() == 10);
      std::size_t prev = 1;
      std::uint64_t calls = 0;
      for (std::size_t i = 0; i < b.size(); ++i) {
        const bool data_round = i < 8;
        CHECK(b[i] <= std::size_t{1} << (i + 1));
        CHECK(b[i] <= (data_round ? 2 * prev : prev));
        calls += (data_round ? 2 : 1) * prev;
        prev = b[i];
      }
      CHECK(r.hash_calls == calls);
      CHECK(r.messages.size() == b.back());
    }
  }

  TEST_CASE("hallucination and missing counts") {
    const std::vector<Message> truth = {1, 5, 9};
    CHECK(count_hallucinations(std::vector<Message>{1, 5, 9}, truth) == 0);
    CHECK(count_hallucinations(std::vector<Message>{1, 5, 9, 12}, truth) == 1);
    CHECK(count_missing(std::vector<Message>{1, 9}, truth) == 1);
    CHECK(count_missing(std::vector<Message>{}, truth) == 3);
  }

  TEST_CASE("multi-seed encode and decode") {
    CodecParams p;
    p.seeds = {0x001, 0x2A5};
    RngStream rng(41);
    const auto msgs = random_set(rng, 10);
    const auto cw = encode_set(p, msgs);
    CodecParams single = p;
    single.seeds = {0x001};
    CHECK(cw.contains(encode_set(single, msgs)));
    const auto r = decode(p, cw);
    REQUIRE(r.per_seed.size() == 2);
    CHECK(r.per_seed[0].seed == 0x001);
    CHECK(r.per_seed[1].seed == 0x2A5);
    for (const auto& s : r.per_seed) CHECK(is_superset(s.messages, msgs));
    CHECK(is_superset(r.messages, r.intersection()));
    CHECK(is_superset(r.intersection(), msgs));
    CHECK(r.hash_calls == r.per_seed[0].hash_calls + r.per_seed[1].hash_calls);
  }

  TEST_CASE("decode rejects a codeword of the wrong width") {
    CodecParams p;
    CHECK_THROWS_AS(decode(p, Codeword(10)), std::invalid_argument);
  }
}
