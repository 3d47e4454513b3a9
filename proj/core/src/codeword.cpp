#include "ccode/codeword.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>
#include <utility>

namespace ccode {

Codeword::Codeword(int width) : width_(width) {
  if (width < 2 || width > 30) {
    throw std::invalid_argument("codeword width must be in [2, 30], got " + std::to_string(width));
  }
  size_ = std::size_t{1} << width;
  words_.assign((size_ + 63) / 64, 0);
}

std::size_t Codeword::mark_count() const {
  std::size_t n = 0;
  for (std::uint64_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

Codeword& Codeword::operator|=(const Codeword& other) {
  if (other.width_ != width_) {
    throw std::invalid_argument("codeword width mismatch in OR");
  }
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

bool Codeword::contains(const Codeword& other) const {
  if (other.width_ != width_) return false;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((other.words_[i] & ~words_[i]) != 0) return false;
  }
  return true;
}

GapMask::GapMask(std::vector<Interval> intervals, std::size_t codeword_size)
    : intervals_(std::move(intervals)) {
  std::size_t prev_end = 0;
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    const auto& iv = intervals_[i];
    if (iv.length == 0) throw std::invalid_argument("gap interval of zero length");
    if (iv.end() > codeword_size) throw std::out_of_range("gap interval exceeds codeword");
    if (i > 0 && iv.start < prev_end) throw std::invalid_argument("gap intervals unsorted or overlapping");
    prev_end = iv.end();
  }
}

std::size_t GapMask::total_length() const {
  std::size_t n = 0;
  for (const auto& iv : intervals_) n += iv.length;
  return n;
}

bool GapMask::contains(std::size_t j) const {
  // First interval whose end is beyond j.
  auto it = std::upper_bound(intervals_.begin(), intervals_.end(), j,
                             [](std::size_t v, const Interval& iv) { return v < iv.end(); });
  return it != intervals_.end() && it->contains(j);
}

}  // namespace ccode
