#include <sodium.h>

#include "iodc/group.hpp"

namespace iodc {
namespace {

void put_len(std::uint8_t out[4], std::size_t n) {
  for (int i = 0; i < 4; ++i) out[i] = static_cast<std::uint8_t>(n >> (8 * i));
}

}  // namespace

Scalar hash_to_scalar(HashTag tag, std::span<const ByteView> parts) {
  ensure_sodium();
  crypto_hash_sha512_state st;
  crypto_hash_sha512_init(&st);
  const auto t = static_cast<std::uint8_t>(tag);
  crypto_hash_sha512_update(&st, &t, 1);
  for (const auto& part : parts) {
    std::uint8_t len[4];
    put_len(len, part.size());
    crypto_hash_sha512_update(&st, len, sizeof(len));
    crypto_hash_sha512_update(&st, part.data(), part.size());
  }
  std::uint8_t digest[64];
  crypto_hash_sha512_final(&st, digest);
  return Scalar::reduce_wide(ByteView(digest, sizeof(digest)));
}

Scalar hash_to_scalar(HashTag tag, std::initializer_list<ByteView> parts) {
  return hash_to_scalar(tag, std::span<const ByteView>(parts.begin(), parts.size()));
}

Bytes32 hash32(HashTag tag, std::initializer_list<ByteView> parts) {
  ensure_sodium();
  crypto_hash_sha256_state st;
  crypto_hash_sha256_init(&st);
  const auto t = static_cast<std::uint8_t>(tag);
  crypto_hash_sha256_update(&st, &t, 1);
  for (const auto& part : parts) {
    std::uint8_t len[4];
    put_len(len, part.size());
    crypto_hash_sha256_update(&st, len, sizeof(len));
    crypto_hash_sha256_update(&st, part.data(), part.size());
  }
  Bytes32 out{};
  crypto_hash_sha256_final(&st, out.data());
  return out;
}

Scalar random_scalar(Rng& rng) {
  std::uint8_t wide[64];
  for (;;) {
    rng.fill(wide);
    Scalar s = Scalar::reduce_wide(ByteView(wide, sizeof(wide)));
    if (!s.is_zero()) {
      sodium_memzero(wide, sizeof(wide));
      return s;
    }
  }
}

}  // namespace iodc
