#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccode/codec.hpp"
#include "ccode/codeword.hpp"

namespace ccode {

/// Thrown for malformed codeword or message-list input.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// CCW v1: header `CCW v1 W=<int> marks=<int>`, then 2^W/4 lowercase hex
/// digits on one line. Bit j lives in bit (j mod 4) of digit floor(j / 4).
void write_ccw(std::ostream& os, const Codeword& codeword);
std::string to_ccw(const Codeword& codeword);

/// Rejects bad headers, digit counts, non-hex characters and a marks field
/// that disagrees with the payload.
Codeword read_ccw(std::istream& is);
Codeword parse_ccw(const std::string& text);

/// One hex value per line. Blank lines and `#` comments are skipped.
std::vector<Message> read_message_list(std::istream& is);
void write_message_list(std::ostream& os, const std::vector<Message>& msgs, int data_bits = 8);

}  // namespace ccode
