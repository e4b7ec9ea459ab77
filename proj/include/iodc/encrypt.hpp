#pragma once

// ECIES over self-certified keys with a designated BPV table.
//
// The sender holds a table of (r'_i, r'_i G, r'_i X) for the receiver's
// reconstructed key X, so encryption is two subset sums:
//   (r, R, S) <- DBPV online;  (k_enc, k_mac) = KDF(S)
//   c = ChaCha20(k_enc, m);    tag = Poly1305(c) keyed from k_mac
// and the receiver recovers S = x R with one scalar multiplication. The MAC
// covers c only. The cipher nonce is fixed at zero because k_enc is never
// reused: every message gets a fresh ephemeral R.

#include <array>

#include "iodc/bpv.hpp"
#include "iodc/bytes.hpp"
#include "iodc/group.hpp"
#include "iodc/selfcert.hpp"
#include "iodc/symmetric.hpp"

namespace iodc {

inline constexpr std::string_view kEciesKdfInfo = "IODCRYPT-ECIES-v1";
inline constexpr std::size_t kTagLen = 16;
inline constexpr std::size_t kCiphertextOverhead = kElementLen + kTagLen;

struct Ciphertext {
  GroupElement R;
  Bytes c;
  Tag16 tag{};

  // Bytes on the wire: R || c || tag.
  std::size_t wire_size() const noexcept { return kElementLen + c.size() + kTagLen; }
  Bytes wire() const;

  // "IODCENC1" || group_id || R || u32le(|c|) || c || tag
  Bytes encode_file() const;
  static Ciphertext decode_file(ByteView bytes);
};

struct SymKeys {
  Bytes32 k_enc{};
  Bytes32 k_mac{};
};

struct SenderContext {
  DesignatedTable table;
  IdentityRecord receiver;

  // Table entries plus the sender's 32-byte private key.
  std::size_t memory_footprint() const noexcept;
};

SenderContext enc_kg_sender(const IdentityRecord& receiver, const GroupElement& D,
                            const BpvParams& params, Rng& rng, OpCounter& ctr);

// Pairs a loaded designated table with its receiver record. Throws
// OwnerBindingMismatch when the table was built for someone else, and
// InvalidDesignatedPoint when its point is not the receiver's key under D.
SenderContext bind_sender(DesignatedTable table, const IdentityRecord& receiver,
                          const GroupElement& D);

// HKDF-SHA256(ikm = encode(S), salt = empty, info = kEciesKdfInfo) -> 64 bytes.
SymKeys kdf(const GroupElement& S);

Ciphertext encrypt(const SenderContext& ctx, ByteView message, Rng& rng, OpCounter& ctr);
Bytes decrypt(const SelfCertKeypair& keypair, const Ciphertext& ct, OpCounter& ctr);

// Textbook ECIES with fresh r * G and r * X; same wire format.
Ciphertext reference_encrypt(const GroupElement& X, ByteView message, Rng& rng, OpCounter& ctr);

}  // namespace iodc
