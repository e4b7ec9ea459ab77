#pragma once

// Symmetric building blocks, all backed by libsodium: HKDF-SHA256, the
// RFC 7539 ChaCha20 stream cipher and the Poly1305 one-time authenticator.

#include <array>
#include <cstdint>
#include <string_view>

#include "iodc/bytes.hpp"

namespace iodc {

using Tag16 = std::array<std::uint8_t, 16>;
using Nonce12 = std::array<std::uint8_t, 12>;

// RFC 5869 extract-then-expand. An empty salt means HashLen zero bytes.
Bytes hkdf_sha256(ByteView ikm, ByteView salt, ByteView info, std::size_t out_len);

// XOR data with the ChaCha20 keystream starting at block `counter`.
Bytes chacha20_xor(const Bytes32& key, const Nonce12& nonce, std::uint32_t counter,
                   ByteView data);

// First 32 bytes of ChaCha20 block 0 under (key, nonce), per RFC 7539 2.6.
Bytes32 poly1305_key_gen(const Bytes32& key, const Nonce12& nonce);

Tag16 poly1305(const Bytes32& one_time_key, ByteView message);

bool tags_equal(const Tag16& a, const Tag16& b) noexcept;  // constant time

}  // namespace iodc
