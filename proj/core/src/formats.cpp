#include "ccode/formats.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace ccode {

namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

void write_ccw(std::ostream& os, const Codeword& codeword) {
  os << "CCW v1 W=" << codeword.width() << " marks=" << codeword.mark_count() << '\n';
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string hex(codeword.size() / 4, '0');
  for (std::size_t d = 0; d < hex.size(); ++d) {
    unsigned v = 0;
    for (unsigned b = 0; b < 4; ++b) v |= static_cast<unsigned>(codeword.test(4 * d + b)) << b;
    hex[d] = kDigits[v];
  }
  os << hex << '\n';
}

std::string to_ccw(const Codeword& codeword) {
  std::ostringstream os;
  write_ccw(os, codeword);
  return os.str();
}

Codeword read_ccw(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw FormatError("empty codeword file");
  int width = 0;
  long long marks = -1;
  {
    std::istringstream hs(trim(header));
    std::string magic, version, wfield, mfield, extra;
    hs >> magic >> version >> wfield >> mfield;
    if (magic != "CCW" || version != "v1") throw FormatError("expected header 'CCW v1 ...', got '" + header + "'");
    if (wfield.rfind("W=", 0) != 0 || mfield.rfind("marks=", 0) != 0 || (hs >> extra)) {
      throw FormatError("malformed CCW header '" + header + "'");
    }
    const auto wstr = wfield.substr(2);
    const auto mstr = mfield.substr(6);
    auto [wp, wec] = std::from_chars(wstr.data(), wstr.data() + wstr.size(), width);
    auto [mp, mec] = std::from_chars(mstr.data(), mstr.data() + mstr.size(), marks);
    if (wec != std::errc{} || wp != wstr.data() + wstr.size() || mec != std::errc{} ||
        mp != mstr.data() + mstr.size()) {
      throw FormatError("malformed CCW header '" + header + "'");
    }
    if (width < 2 || width > 30) throw FormatError("CCW width W=" + std::to_string(width) + " unsupported");
  }

  std::string payload;
  std::string line;
  while (std::getline(is, line)) payload += trim(line);

  Codeword cw(width);
  if (payload.size() != cw.size() / 4) {
    throw FormatError(fmt::format("CCW payload has {} hex digits, expected {}", payload.size(), cw.size() / 4));
  }
  for (std::size_t d = 0; d < payload.size(); ++d) {
    const int v = hex_value(payload[d]);
    if (v < 0) throw FormatError(fmt::format("non-hex character '{}' in CCW payload", payload[d]));
    for (unsigned b = 0; b < 4; ++b) {
      if ((v >> b) & 1) cw.set(4 * d + b);
    }
  }
  if (static_cast<long long>(cw.mark_count()) != marks) {
    throw FormatError(fmt::format("CCW header says marks={} but payload has {}", marks, cw.mark_count()));
  }
  return cw;
}

Codeword parse_ccw(const std::string& text) {
  std::istringstream is(text);
  return read_ccw(is);
}

std::vector<Message> read_message_list(std::istream& is) {
  std::vector<Message> out;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::string t = trim(line);
    if (t.empty()) continue;
    if (t.size() > 2 && t[0] == '0' && (t[1] == 'x' || t[1] == 'X')) t = t.substr(2);
    Message v = 0;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v, 16);
    if (ec != std::errc{} || p != t.data() + t.size()) {
      throw FormatError(fmt::format("line {}: '{}' is not a hex message", lineno, trim(line)));
    }
    out.push_back(v);
  }
  return out;
}

void write_message_list(std::ostream& os, const std::vector<Message>& msgs, int data_bits) {
  const int digits = std::max(1, (data_bits + 3) / 4);
  for (Message m : msgs) os << fmt::format("{:0{}x}\n", m, digits);
}

}  // namespace ccode
