#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace iodc {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;
using Bytes32 = std::array<std::uint8_t, 32>;

inline ByteView as_bytes(std::string_view s) noexcept {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

std::string to_hex(ByteView data);
Bytes from_hex(std::string_view hex);

// Append-only little-endian writer used by every wire and file format.
class ByteWriter {
 public:
  void put_u8(std::uint8_t v) { buf_.push_back(v); }
  void put_u32le(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void put(ByteView data) { buf_.insert(buf_.end(), data.begin(), data.end()); }
  void put(std::string_view s) { put(as_bytes(s)); }

  const Bytes& bytes() const& noexcept { return buf_; }
  Bytes take() && noexcept { return std::move(buf_); }

 private:
  Bytes buf_;
};

// Bounds-checked cursor; every short read throws TruncatedFile.
class ByteReader {
 public:
  explicit ByteReader(ByteView data) noexcept : data_(data) {}

  std::uint8_t get_u8();
  std::uint32_t get_u32le();
  ByteView get(std::size_t n);
  template <std::size_t N>
  std::array<std::uint8_t, N> get_array() {
    auto view = get(N);
    std::array<std::uint8_t, N> out{};
    std::copy(view.begin(), view.end(), out.begin());
    return out;
  }

  std::size_t remaining() const noexcept { return data_.size() - pos_; }
  std::size_t position() const noexcept { return pos_; }
  // Length mismatches in either direction are reported as TruncatedFile.
  void expect_end() const;

 private:
  ByteView data_;
  std::size_t pos_ = 0;
};

}  // namespace iodc
