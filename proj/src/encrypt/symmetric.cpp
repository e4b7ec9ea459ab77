#include "iodc/symmetric.hpp"

#include <sodium.h>

#include <stdexcept>

#include "iodc/rng.hpp"

namespace iodc {

Bytes hkdf_sha256(ByteView ikm, ByteView salt, ByteView info, std::size_t out_len) {
  ensure_sodium();
  constexpr std::size_t kHashLen = crypto_auth_hmacsha256_BYTES;
  if (out_len > 255 * kHashLen) throw std::invalid_argument("HKDF output too long");

  std::uint8_t zero_salt[kHashLen] = {};
  const std::uint8_t* salt_ptr = salt.empty() ? zero_salt : salt.data();
  const std::size_t salt_len = salt.empty() ? kHashLen : salt.size();

  std::uint8_t prk[kHashLen];
  crypto_auth_hmacsha256_state st;
  crypto_auth_hmacsha256_init(&st, salt_ptr, salt_len);
  crypto_auth_hmacsha256_update(&st, ikm.data(), ikm.size());
  crypto_auth_hmacsha256_final(&st, prk);

  Bytes out;
  out.reserve(out_len);
  std::uint8_t block[kHashLen];
  std::size_t block_len = 0;
  for (std::uint8_t counter = 1; out.size() < out_len; ++counter) {
    crypto_auth_hmacsha256_init(&st, prk, sizeof(prk));
    crypto_auth_hmacsha256_update(&st, block, block_len);
    crypto_auth_hmacsha256_update(&st, info.data(), info.size());
    crypto_auth_hmacsha256_update(&st, &counter, 1);
    crypto_auth_hmacsha256_final(&st, block);
    block_len = kHashLen;
    const std::size_t take = std::min(kHashLen, out_len - out.size());
    out.insert(out.end(), block, block + take);
  }
  sodium_memzero(prk, sizeof(prk));
  sodium_memzero(block, sizeof(block));
  return out;
}

Bytes chacha20_xor(const Bytes32& key, const Nonce12& nonce, std::uint32_t counter,
                   ByteView data) {
  ensure_sodium();
  Bytes out(data.size());
  if (!data.empty()) {
    crypto_stream_chacha20_ietf_xor_ic(out.data(), data.data(), data.size(), nonce.data(),
                                       counter, key.data());
  }
  return out;
}

Bytes32 poly1305_key_gen(const Bytes32& key, const Nonce12& nonce) {
  ensure_sodium();
  std::uint8_t block[64] = {};
  crypto_stream_chacha20_ietf_xor_ic(block, block, sizeof(block), nonce.data(), 0, key.data());
  Bytes32 out{};
  std::copy(block, block + 32, out.begin());
  sodium_memzero(block, sizeof(block));
  return out;
}

Tag16 poly1305(const Bytes32& one_time_key, ByteView message) {
  ensure_sodium();
  Tag16 tag{};
  crypto_onetimeauth_poly1305(tag.data(), message.data(), message.size(), one_time_key.data());
  return tag;
}

bool tags_equal(const Tag16& a, const Tag16& b) noexcept {
  return crypto_verify_16(a.data(), b.data()) == 0;
}

}  // namespace iodc
