#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace ccode {

/// Fixed-length bit array of 2^width positions. A set bit is a mark.
class Codeword {
 public:
  Codeword() = default;
  explicit Codeword(int width);

  int width() const { return width_; }
  std::size_t size() const { return size_; }

  bool test(std::size_t j) const { return (words_[j >> 6] >> (j & 63U)) & 1U; }
  void set(std::size_t j) { words_[j >> 6] |= std::uint64_t{1} << (j & 63U); }
  void reset(std::size_t j) { words_[j >> 6] &= ~(std::uint64_t{1} << (j & 63U)); }

  std::size_t mark_count() const;

  /// Bitwise OR. Widths must match.
  Codeword& operator|=(const Codeword& other);

  /// True when every mark of `other` is also set here.
  bool contains(const Codeword& other) const;

  const std::vector<std::uint64_t>& words() const { return words_; }

  friend bool operator==(const Codeword&, const Codeword&) = default;

 private:
  int width_ = 0;
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

struct Interval {
  std::size_t start = 0;
  std::size_t length = 0;

  std::size_t end() const { return start + length; }
  bool contains(std::size_t j) const { return j >= start && j < start + length; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Sorted, non-overlapping set of erased intervals inside [0, C).
class GapMask {
 public:
  GapMask() = default;

  /// Validates ordering, overlap and bounds against `codeword_size`.
  GapMask(std::vector<Interval> intervals, std::size_t codeword_size);

  const std::vector<Interval>& intervals() const { return intervals_; }
  bool empty() const { return intervals_.empty(); }
  std::size_t total_length() const;

  /// Binary search over the sorted intervals.
  bool contains(std::size_t j) const;

  friend bool operator==(const GapMask&, const GapMask&) = default;

 private:
  std::vector<Interval> intervals_;
};

}  // namespace ccode
