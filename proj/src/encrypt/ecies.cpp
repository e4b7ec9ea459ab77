#include "iodc/encrypt.hpp"

#include <sodium.h>

#include <cstring>
#include <limits>

#include "iodc/error.hpp"

namespace iodc {
namespace {

constexpr char kEncMagic[8] = {'I', 'O', 'D', 'C', 'E', 'N', 'C', '1'};
constexpr Nonce12 kZeroNonce{};
// Block 0 of the MAC key's stream yields the Poly1305 key; the message
// stream starts at block 1 as in the RFC 7539 AEAD layout.
constexpr std::uint32_t kFirstDataBlock = 1;

Tag16 mac(const SymKeys& keys, ByteView c) {
  Bytes32 otk = poly1305_key_gen(keys.k_mac, kZeroNonce);
  Tag16 tag = poly1305(otk, c);
  sodium_memzero(otk.data(), otk.size());
  return tag;
}

Ciphertext seal(const GroupElement& R, const GroupElement& S, ByteView message) {
  if (message.size() > std::numeric_limits<std::uint32_t>::max())
    throw std::length_error("message exceeds 2^32 - 1 bytes");
  SymKeys keys = kdf(S);
  Ciphertext ct{R, chacha20_xor(keys.k_enc, kZeroNonce, kFirstDataBlock, message), {}};
  ct.tag = mac(keys, ct.c);
  sodium_memzero(&keys, sizeof(keys));
  return ct;
}

}  // namespace

Bytes Ciphertext::wire() const {
  ByteWriter w;
  w.put(R.encode());
  w.put(c);
  w.put(tag);
  return std::move(w).take();
}

Bytes Ciphertext::encode_file() const {
  ByteWriter w;
  w.put(ByteView(reinterpret_cast<const std::uint8_t*>(kEncMagic), sizeof(kEncMagic)));
  w.put_u8(kGroupId);
  w.put(R.encode());
  w.put_u32le(static_cast<std::uint32_t>(c.size()));
  w.put(c);
  w.put(tag);
  return std::move(w).take();
}

Ciphertext Ciphertext::decode_file(ByteView bytes) {
  ByteReader r(bytes);
  if (bytes.size() < sizeof(kEncMagic) ||
      std::memcmp(r.get(sizeof(kEncMagic)).data(), kEncMagic, sizeof(kEncMagic)) != 0)
    throw Error(ErrorCode::BadMagic, "not an IODCENC1 ciphertext file");
  if (r.get_u8() != kGroupId) throw Error(ErrorCode::UnsupportedVersion, "unknown group id");
  Ciphertext ct;
  ct.R = GroupElement::decode(r.get(kElementLen));
  const std::uint32_t len = r.get_u32le();
  const auto c = r.get(len);
  ct.c.assign(c.begin(), c.end());
  ct.tag = r.get_array<kTagLen>();
  r.expect_end();
  return ct;
}

std::size_t SenderContext::memory_footprint() const noexcept {
  return table.entry_payload_bytes() + kScalarLen;
}

SenderContext enc_kg_sender(const IdentityRecord& receiver, const GroupElement& D,
                            const BpvParams& params, Rng& rng, OpCounter& ctr) {
  validate_record(receiver);
  const GroupElement X = reconstruct_pub(receiver, D, ctr);
  auto table = dbpv_offline(params, X, owner_binding(receiver), rng, ctr);
  return {std::move(table), receiver};
}

SenderContext bind_sender(DesignatedTable table, const IdentityRecord& receiver,
                          const GroupElement& D) {
  validate_record(receiver);
  if (sodium_memcmp(table.owner_binding.data(), owner_binding(receiver).data(), 32) != 0)
    throw Error(ErrorCode::OwnerBindingMismatch, "table was built for a different receiver");
  if (!(table.designated_point == reconstruct_pub(receiver, D)))
    throw Error(ErrorCode::InvalidDesignatedPoint,
                "table point is not the receiver's key under this system key");
  return {std::move(table), receiver};
}

SymKeys kdf(const GroupElement& S) {
  if (S.is_identity()) throw Error(ErrorCode::InvalidSharedPoint, "shared point is the identity");
  const auto ikm = S.encode();
  Bytes okm = hkdf_sha256(ikm, {}, as_bytes(kEciesKdfInfo), 64);
  SymKeys keys;
  std::copy(okm.begin(), okm.begin() + 32, keys.k_enc.begin());
  std::copy(okm.begin() + 32, okm.end(), keys.k_mac.begin());
  sodium_memzero(okm.data(), okm.size());
  return keys;
}

Ciphertext encrypt(const SenderContext& ctx, ByteView message, Rng& rng, OpCounter& ctr) {
  const DbpvSample sample = dbpv_online(ctx.table, rng, ctr);
  return seal(sample.R, sample.S, message);
}

Bytes decrypt(const SelfCertKeypair& keypair, const Ciphertext& ct, OpCounter& ctr) {
  const GroupElement S = scalar_mult(keypair.x, ct.R, ctr);
  if (S.is_identity()) throw Error(ErrorCode::MacMismatch, "ciphertext failed authentication");
  SymKeys keys = kdf(S);
  const Tag16 expected = mac(keys, ct.c);
  if (!tags_equal(expected, ct.tag)) {
    sodium_memzero(&keys, sizeof(keys));
    throw Error(ErrorCode::MacMismatch, "ciphertext failed authentication");
  }
  Bytes m = chacha20_xor(keys.k_enc, kZeroNonce, kFirstDataBlock, ct.c);
  sodium_memzero(&keys, sizeof(keys));
  return m;
}

Ciphertext reference_encrypt(const GroupElement& X, ByteView message, Rng& rng,
                             OpCounter& ctr) {
  const Scalar r = random_scalar(rng);
  return seal(scalar_mult(r, GroupElement::generator(), ctr), scalar_mult(r, X, ctr), message);
}

}  // namespace iodc
