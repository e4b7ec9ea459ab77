#include <stdexcept>

#include "iodc/bytes.hpp"
#include "iodc/error.hpp"

namespace iodc {

std::string to_hex(ByteView data) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(data.size() * 2);
  for (auto b : data) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xF]);
  }
  return out;
}

Bytes from_hex(std::string_view hex) {
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  if (hex.size() % 2 != 0) throw std::invalid_argument("odd-length hex string");
  Bytes out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const int hi = nibble(hex[2 * i]);
    const int lo = nibble(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw std::invalid_argument("invalid hex digit");
    out[i] = static_cast<std::uint8_t>(hi << 4 | lo);
  }
  return out;
}

std::uint8_t ByteReader::get_u8() { return get(1)[0]; }

std::uint32_t ByteReader::get_u32le() {
  auto b = get(4);
  return static_cast<std::uint32_t>(b[0]) | static_cast<std::uint32_t>(b[1]) << 8 |
         static_cast<std::uint32_t>(b[2]) << 16 | static_cast<std::uint32_t>(b[3]) << 24;
}

ByteView ByteReader::get(std::size_t n) {
  if (n > remaining()) throw Error(ErrorCode::TruncatedFile, "unexpected end of data");
  auto view = data_.subspan(pos_, n);
  pos_ += n;
  return view;
}

void ByteReader::expect_end() const {
  if (remaining() != 0) throw Error(ErrorCode::TruncatedFile, "trailing bytes after record");
}

}  // namespace iodc
