#include "iodc/keyfiles.hpp"

#include <cstring>
#include <string>

#include "iodc/error.hpp"

namespace iodc {
namespace {

ByteReader open(ByteView bytes, const char (&magic)[9]) {
  ByteReader r(bytes);
  if (bytes.size() < 9 || std::memcmp(bytes.data(), magic, 8) != 0)
    throw Error(ErrorCode::BadMagic, std::string("not an ") + magic + " file");
  r.get(8);
  if (r.get_u8() != kGroupId) throw Error(ErrorCode::UnsupportedVersion, "unknown group id");
  return r;
}

ByteWriter start(const char (&magic)[9]) {
  ByteWriter w;
  w.put(std::string_view(magic, 8));
  w.put_u8(kGroupId);
  return w;
}

GroupElement get_point(ByteReader& r) { return GroupElement::decode(r.get(kElementLen)); }
Scalar get_scalar(ByteReader& r) { return Scalar::from_bytes(r.get(kScalarLen)); }

}  // namespace

Bytes encode_system_public(const GroupElement& D) {
  auto w = start("IODCSYSP");
  w.put(D.encode());
  return std::move(w).take();
}

GroupElement decode_system_public(ByteView bytes) {
  auto r = open(bytes, "IODCSYSP");
  auto D = get_point(r);
  r.expect_end();
  return D;
}

Bytes encode_kgc_secret(const KgcKeypair& kgc) {
  auto w = start("IODCKGCK");
  w.put(kgc.d.to_bytes());
  w.put(kgc.D.encode());
  return std::move(w).take();
}

KgcKeypair decode_kgc_secret(ByteView bytes) {
  auto r = open(bytes, "IODCKGCK");
  KgcKeypair kgc;
  kgc.d = get_scalar(r);
  kgc.D = get_point(r);
  r.expect_end();
  return kgc;
}

Bytes encode_drone_secret(const SelfCertKeypair& key, const GroupElement& D) {
  auto w = start("IODCDRNK");
  w.put_u8(static_cast<std::uint8_t>(key.record.id.size()));
  w.put(key.record.id);
  w.put(key.x.to_bytes());
  w.put(key.record.U.encode());
  w.put((key.cached_xD ? *key.cached_xD : D.mul(key.x)).encode());
  return std::move(w).take();
}

SelfCertKeypair decode_drone_secret(ByteView bytes) {
  auto r = open(bytes, "IODCDRNK");
  const std::uint8_t len = r.get_u8();
  const auto id = r.get(len);
  SelfCertKeypair key;
  key.record.id.assign(id.begin(), id.end());
  key.x = get_scalar(r);
  key.record.U = get_point(r);
  key.cached_xD = get_point(r);
  r.expect_end();
  validate_record(key.record);
  return key;
}

Bytes encode_identity_file(const IdentityRecord& record) {
  auto w = start("IODCIDR1");
  w.put(record.encode());
  return std::move(w).take();
}

IdentityRecord decode_identity_file(ByteView bytes) {
  auto r = open(bytes, "IODCIDR1");
  auto rec = IdentityRecord::decode(r);
  r.expect_end();
  return rec;
}

}  // namespace iodc
