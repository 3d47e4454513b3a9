#include "ccode/codec.hpp"

#include <algorithm>
#include <iterator>
#include <set>
#include <stdexcept>
#include <string>

#include "ccode/model.hpp"

namespace ccode {

namespace {

struct Branch {
  Message value;
  HashState state;
};

std::vector<Message> sorted_unique(std::span<const Message> msgs) {
  std::vector<Message> v(msgs.begin(), msgs.end());
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

SeedDecode decode_one_seed(const CodecParams& params, const PrbsHash& hash, std::uint32_t seed,
                           const Codeword& received, const GapMask& gaps) {
  SeedDecode out;
  out.seed = seed;
  const int rounds = params.message_bits();
  out.branches_per_round.reserve(rounds);
  out.gap_retained_per_round.reserve(rounds);

  std::vector<Branch> frontier{{0, hash.init(seed)}};
  std::vector<Branch> next;
  for (int i = 0; i < rounds; ++i) {
    const bool data_round = i < params.data_bits;
    const unsigned extensions = data_round ? 2U : 1U;
    next.clear();
    std::size_t via_gap = 0;
    for (const Branch& br : frontier) {
      for (unsigned bit = 0; bit < extensions; ++bit) {
        const Absorbed r = hash.absorb(br.state, bit);
        ++out.hash_calls;
        bool keep = received.test(r.address);
        if (!keep && gaps.contains(r.address)) {
          keep = true;
          ++via_gap;
        }
        if (keep) next.push_back({br.value | (Message{bit} << i), r.state});
      }
    }
    frontier.swap(next);
    out.branches_per_round.push_back(frontier.size());
    out.gap_retained_per_round.push_back(via_gap);
  }

  out.messages.reserve(frontier.size());
  for (const Branch& br : frontier) out.messages.push_back(br.value);
  std::sort(out.messages.begin(), out.messages.end());
  return out;
}

}  // namespace

Message CodecParams::max_message() const {
  return data_bits >= 64 ? ~Message{0} : (Message{1} << data_bits) - 1;
}

void CodecParams::validate() const {
  hash.validate();
  if (data_bits < 1) throw std::invalid_argument("data_bits must be >= 1");
  if (checksum_bits < 0) throw std::invalid_argument("checksum_bits must be >= 0");
  if (message_bits() > 64) throw std::invalid_argument("data_bits + checksum_bits must be <= 64");
  if (seeds.empty()) throw std::invalid_argument("at least one hash seed is required");
  std::set<std::uint32_t> seen;
  for (std::uint32_t s : seeds) {
    if (s == 0 || s > hash.mask()) {
      throw std::invalid_argument("hash seed " + std::to_string(s) + " outside [1, 2^width - 1]");
    }
    if (!seen.insert(s).second) throw std::invalid_argument("duplicate hash seed " + std::to_string(s));
  }
}

std::vector<Message> DecodeReport::intersection() const {
  if (per_seed.empty()) return {};
  std::vector<Message> acc = per_seed.front().messages;
  for (std::size_t s = 1; s < per_seed.size(); ++s) {
    std::vector<Message> tmp;
    std::set_intersection(acc.begin(), acc.end(), per_seed[s].messages.begin(), per_seed[s].messages.end(),
                          std::back_inserter(tmp));
    acc.swap(tmp);
  }
  return acc;
}

std::vector<std::uint32_t> encode_message(const CodecParams& params, Message msg, std::uint32_t seed) {
  params.validate();
  if (msg > params.max_message()) {
    throw std::invalid_argument("message " + std::to_string(msg) + " does not fit in " +
                                std::to_string(params.data_bits) + " data bits");
  }
  const PrbsHash hash(params.hash);
  HashState s = hash.init(seed);
  std::vector<std::uint32_t> addresses;
  addresses.reserve(params.message_bits());
  for (int i = 0; i < params.message_bits(); ++i) {
    const unsigned bit = i < params.data_bits ? static_cast<unsigned>((msg >> i) & 1U) : 0U;
    const Absorbed r = hash.absorb(s, bit);
    s = r.state;
    addresses.push_back(r.address);
  }
  return addresses;
}

Codeword encode_set(const CodecParams& params, std::span<const Message> msgs) {
  params.validate();
  Codeword cw(params.width());
  for (std::uint32_t seed : params.seeds) {
    for (Message m : msgs) {
      for (std::uint32_t a : encode_message(params, m, seed)) cw.set(a);
    }
  }
  return cw;
}

GapMask detect_gaps(const Codeword& codeword, std::size_t min_gap) {
  if (min_gap < 1) throw std::invalid_argument("min_gap must be >= 1");
  std::vector<Interval> runs;
  const std::size_t n = codeword.size();
  std::size_t j = 0;
  while (j < n) {
    if (codeword.test(j)) {
      ++j;
      continue;
    }
    const std::size_t start = j;
    while (j < n && !codeword.test(j)) ++j;
    if (j - start >= min_gap) runs.push_back({start, j - start});
  }
  return GapMask(std::move(runs), n);
}

std::size_t gap_threshold(double m_min, std::size_t C, int L, double p_max) {
  if (m_min < 1.0) throw std::invalid_argument("gap_threshold needs m_min >= 1");
  if (!(p_max > 0.0 && p_max < 1.0)) throw std::invalid_argument("gap_threshold needs 0 < p_max < 1");
  const double c = static_cast<double>(C);
  for (std::size_t e = 1; e < C; ++e) {
    if (model::gap_block_probability(m_min, static_cast<double>(e), c, L) <= p_max) return e;
  }
  return C;
}

DecodeReport decode(const CodecParams& params, const Codeword& received, const GapMask& gaps) {
  params.validate();
  if (received.width() != params.width()) {
    throw std::invalid_argument("codeword has 2^" + std::to_string(received.width()) + " positions, expected 2^" +
                                std::to_string(params.width()));
  }
  const auto t0 = std::chrono::steady_clock::now();
  const PrbsHash hash(params.hash);

  DecodeReport report;
  report.gaps = gaps;
  report.branches_per_round.assign(params.message_bits(), 0);
  for (std::uint32_t seed : params.seeds) {
    SeedDecode sd = decode_one_seed(params, hash, seed, received, gaps);
    for (std::size_t i = 0; i < sd.branches_per_round.size(); ++i) {
      report.branches_per_round[i] += sd.branches_per_round[i];
    }
    report.hash_calls += sd.hash_calls;
    report.messages.insert(report.messages.end(), sd.messages.begin(), sd.messages.end());
    report.per_seed.push_back(std::move(sd));
  }
  report.messages = sorted_unique(report.messages);
  report.duration = std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - t0);
  return report;
}

std::size_t count_hallucinations(std::span<const Message> decoded, std::span<const Message> truth) {
  const std::vector<Message> t = sorted_unique(truth);
  std::size_t n = 0;
  for (Message m : sorted_unique(decoded)) {
    if (!std::binary_search(t.begin(), t.end(), m)) ++n;
  }
  return n;
}

std::size_t count_hallucinations(const DecodeReport& report, std::span<const Message> truth) {
  return count_hallucinations(report.messages, truth);
}

std::size_t count_missing(std::span<const Message> decoded, std::span<const Message> truth) {
  const std::vector<Message> d = sorted_unique(decoded);
  std::size_t n = 0;
  for (Message m : sorted_unique(truth)) {
    if (!std::binary_search(d.begin(), d.end(), m)) ++n;
  }
  return n;
}

}  // namespace ccode
