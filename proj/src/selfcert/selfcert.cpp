#include "iodc/selfcert.hpp"

#include <sodium.h>

#include <algorithm>

#include "iodc/error.hpp"
#include "iodc/symmetric.hpp"

namespace iodc {
namespace {

constexpr std::string_view kHangInfo = "IODCRYPT-AQHANG-v1";

void check_id(ByteView id) {
  if (id.empty() || id.size() > kMaxIdentityLen)
    throw Error(ErrorCode::InvalidIdentity, "identity must be 1..255 bytes");
}

}  // namespace

Bytes IdentityRecord::encode() const {
  check_id(id);
  ByteWriter w;
  w.put_u8(static_cast<std::uint8_t>(id.size()));
  w.put(id);
  w.put(U.encode());
  return std::move(w).take();
}

IdentityRecord IdentityRecord::decode(ByteReader& reader) {
  const std::uint8_t len = reader.get_u8();
  const auto id = reader.get(len);
  IdentityRecord rec{Bytes(id.begin(), id.end()), GroupElement::decode(reader.get(kElementLen))};
  validate_record(rec);
  return rec;
}

IdentityRecord IdentityRecord::decode(ByteView bytes) {
  ByteReader r(bytes);
  auto rec = decode(r);
  r.expect_end();
  return rec;
}

void validate_record(const IdentityRecord& record) {
  check_id(record.id);
  if (record.U.is_identity())
    throw Error(ErrorCode::InvalidIdentity, "identity record carries the identity point");
}

Scalar identity_hash(const IdentityRecord& record) {
  const auto u = record.U.encode();
  return hash_to_scalar(HashTag::Key, {ByteView(record.id), ByteView(u)});
}

Bytes32 owner_binding(const IdentityRecord& record) {
  const auto u = record.U.encode();
  return hash32(HashTag::OwnerBinding, {ByteView(record.id), ByteView(u)});
}

KgcKeypair kgc_setup(Rng& rng) {
  OpCounter ctr;
  const Scalar d = random_scalar(rng);
  return {d, scalar_mult(d, GroupElement::generator(), ctr)};
}

SelfCertKeypair aq_kg(const KgcKeypair& kgc, ByteView id, Rng& rng) {
  check_id(id);
  OpCounter ctr;
  Scalar b = random_scalar(rng);
  IdentityRecord record{Bytes(id.begin(), id.end()),
                        scalar_mult(b, GroupElement::generator(), ctr)};
  const Scalar x = identity_hash(record) * b + kgc.d;
  sodium_memzero(&b, sizeof(b));
  GroupElement xD = scalar_mult(x, kgc.D, ctr);
  return {std::move(record), x, xD};
}

bool key_ver(const IdentityRecord& record, const Scalar& x, const GroupElement& D) {
  if (record.id.empty() || record.id.size() > kMaxIdentityLen || record.U.is_identity())
    return false;
  return GroupElement::generator().mul(x) == reconstruct_pub(record, D);
}

GroupElement reconstruct_pub(const IdentityRecord& record, const GroupElement& D,
                             OpCounter& ctr) {
  return point_add(scalar_mult(identity_hash(record), record.U, ctr), D, ctr);
}

GroupElement reconstruct_pub(const IdentityRecord& record, const GroupElement& D) {
  OpCounter ctr;
  return reconstruct_pub(record, D, ctr);
}

GroupElement aq_shared_static(const SelfCertKeypair& me, const IdentityRecord& peer,
                              const GroupElement& D, OpCounter& ctr) {
  validate_record(peer);
  if (me.cached_xD) {
    // x * (h U + D) = (x h) U + x D
    const Scalar xh = me.x * identity_hash(peer);
    return point_add(scalar_mult(xh, peer.U, ctr), *me.cached_xD, ctr);
  }
  return scalar_mult(me.x, reconstruct_pub(peer, D, ctr), ctr);
}

Bytes HangMessage::encode() const {
  ByteWriter w;
  w.put(record.encode());
  w.put(T.encode());
  return std::move(w).take();
}

HangMessage HangMessage::decode(ByteView bytes) {
  ByteReader r(bytes);
  HangMessage m{IdentityRecord::decode(r), GroupElement::decode(r.get(kElementLen))};
  r.expect_end();
  return m;
}

HangInitiation aq_hang_initiate(const SelfCertKeypair& me, Rng& rng, OpCounter& ctr,
                                const PrecompTable* table) {
  if (table) {
    auto sample = bpv_online(*table, rng, ctr);
    return {sample.r, {me.record, sample.R}};
  }
  const Scalar t = random_scalar(rng);
  return {t, {me.record, scalar_mult(t, GroupElement::generator(), ctr)}};
}

SessionKey aq_hang_finalize(const SelfCertKeypair& me, const HangInitiation& mine,
                            const HangMessage& peer, const GroupElement& D, OpCounter& ctr) {
  validate_record(peer.record);
  if (peer.T.is_identity())
    throw Error(ErrorCode::InvalidEphemeral, "peer ephemeral is the identity");

  const GroupElement k_static = aq_shared_static(me, peer.record, D, ctr);
  const GroupElement k_eph = scalar_mult(mine.t, peer.T, ctr);
  if (k_eph.is_identity())
    throw Error(ErrorCode::InvalidEphemeral, "ephemeral Diffie-Hellman value is the identity");

  Bytes a = mine.message.encode();
  Bytes b = peer.encode();
  if (b < a) std::swap(a, b);

  SessionKey out;
  out.transcript_hash = hash32(HashTag::HangTranscript, {ByteView(a), ByteView(b)});

  ByteWriter ikm;
  ikm.put(k_static.encode());
  ikm.put(k_eph.encode());
  const Bytes okm = hkdf_sha256(ikm.bytes(), out.transcript_hash, as_bytes(kHangInfo), 32);
  std::copy(okm.begin(), okm.end(), out.key.begin());
  return out;
}

Bytes32 session_fingerprint(const SessionKey& key) {
  return hash32(HashTag::Fingerprint, {ByteView(key.key), ByteView(key.transcript_hash)});
}

}  // namespace iodc
