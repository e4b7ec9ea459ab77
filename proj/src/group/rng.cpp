#include <sodium.h>

#include <cstdlib>
#include <cstring>

#include "iodc/error.hpp"
#include "iodc/rng.hpp"

namespace iodc {

void ensure_sodium() {
  static const bool ok = sodium_init() >= 0;
  if (!ok) throw Error(ErrorCode::RngFailure, "libsodium initialisation failed");
}

std::uint32_t Rng::next_u32() {
  std::uint8_t b[4];
  fill(b);
  return static_cast<std::uint32_t>(b[0]) | static_cast<std::uint32_t>(b[1]) << 8 |
         static_cast<std::uint32_t>(b[2]) << 16 | static_cast<std::uint32_t>(b[3]) << 24;
}

std::uint32_t Rng::uniform(std::uint32_t bound) {
  // Reject the top partial bucket so every residue is equally likely.
  const std::uint32_t limit = static_cast<std::uint32_t>(-bound) % bound;
  for (;;) {
    const std::uint32_t x = next_u32();
    if (x >= limit) return x % bound;
  }
}

SystemRng::SystemRng() { ensure_sodium(); }

void SystemRng::fill(std::span<std::uint8_t> out) { randombytes_buf(out.data(), out.size()); }

SeededRng::SeededRng(std::uint64_t seed) {
  ensure_sodium();
  std::uint8_t material[20] = {'i', 'o', 'd', 'c', '-', 't', 'e', 's', 't', '-', 'r', 'n'};
  for (int i = 0; i < 8; ++i) material[12 + i] = static_cast<std::uint8_t>(seed >> (8 * i));
  crypto_hash_sha256(key_.data(), material, sizeof(material));
}

void SeededRng::refill() {
  static const std::uint8_t nonce[crypto_stream_chacha20_ietf_NONCEBYTES] = {};
  std::memset(buf_, 0, sizeof(buf_));
  crypto_stream_chacha20_ietf_xor_ic(buf_, buf_, sizeof(buf_), nonce, block_++, key_.data());
  pos_ = 0;
}

void SeededRng::fill(std::span<std::uint8_t> out) {
  for (auto& b : out) {
    if (pos_ == sizeof(buf_)) refill();
    b = buf_[pos_++];
  }
}

}  // namespace iodc
