#include <sodium.h>

#include <cstring>

#include "iodc/bpv.hpp"
#include "iodc/error.hpp"

namespace iodc {
namespace {

constexpr char kMagic[8] = {'I', 'O', 'D', 'C', 'B', 'P', 'V', '1'};
constexpr std::uint8_t kKindStandard = 0x00;
constexpr std::uint8_t kKindDesignated = 0x01;
constexpr std::size_t kHeaderLen = 8 + 1 + 1 + 4 + 4;
constexpr std::size_t kHashLen = 32;

Bytes32 sha256(ByteView data) {
  ensure_sodium();
  Bytes32 out{};
  crypto_hash_sha256(out.data(), data.data(), data.size());
  return out;
}

void put_header(ByteWriter& w, std::uint8_t kind, const BpvParams& params) {
  w.put(ByteView(reinterpret_cast<const std::uint8_t*>(kMagic), sizeof(kMagic)));
  w.put_u8(kGroupId);
  w.put_u8(kind);
  w.put_u32le(params.k);
  w.put_u32le(params.v);
}

Bytes finish(ByteWriter&& w) {
  Bytes out = std::move(w).take();
  const auto digest = sha256(out);
  out.insert(out.end(), digest.begin(), digest.end());
  return out;
}

}  // namespace

Bytes serialize_table(const PrecompTable& table) {
  ByteWriter w;
  put_header(w, kKindStandard, table.params);
  for (const auto& e : table.entries) {
    w.put(e.r.to_bytes());
    w.put(e.R.encode());
  }
  return finish(std::move(w));
}

Bytes serialize_table(const DesignatedTable& table) {
  ByteWriter w;
  put_header(w, kKindDesignated, table.params);
  w.put(table.designated_point.encode());
  w.put(table.owner_binding);
  for (const auto& e : table.entries) {
    w.put(e.r.to_bytes());
    w.put(e.R.encode());
    w.put(e.S.encode());
  }
  return finish(std::move(w));
}

AnyTable deserialize_table(ByteView bytes, const TableLoadOptions& opts) {
  if (bytes.size() < sizeof(kMagic))
    throw Error(ErrorCode::TruncatedFile, "table file shorter than its magic");
  if (std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0)
    throw Error(ErrorCode::BadMagic, "not an IODCBPV1 table file");
  if (bytes.size() < kHeaderLen + kHashLen)
    throw Error(ErrorCode::TruncatedFile, "table file shorter than its header");

  // The integrity hash is checked before any header field is trusted.
  const auto body = bytes.first(bytes.size() - kHashLen);
  const auto digest = sha256(body);
  if (sodium_memcmp(digest.data(), bytes.data() + body.size(), kHashLen) != 0)
    throw Error(ErrorCode::IntegrityMismatch, "table integrity hash mismatch");

  ByteReader r(body);
  r.get(sizeof(kMagic));
  if (r.get_u8() != kGroupId) throw Error(ErrorCode::UnsupportedVersion, "unknown group id");
  const std::uint8_t kind = r.get_u8();
  if (kind != kKindStandard && kind != kKindDesignated)
    throw Error(ErrorCode::UnsupportedVersion, "unknown table kind");
  const std::uint32_t k = r.get_u32le();
  const std::uint32_t v = r.get_u32le();
  const BpvParams params = BpvParams::make(k, v, opts.policy);

  const std::size_t entry_len =
      kind == kKindStandard ? kScalarLen + kElementLen : kScalarLen + 2 * kElementLen;
  const std::size_t prefix = kind == kKindStandard ? 0 : kElementLen + 32;
  if (r.remaining() != prefix + static_cast<std::size_t>(k) * entry_len)
    throw Error(ErrorCode::TruncatedFile, "table length does not match its header");

  if (kind == kKindStandard) {
    PrecompTable table{params, {}};
    table.entries.reserve(k);
    for (std::uint32_t i = 0; i < k; ++i) {
      Scalar s = Scalar::from_bytes(r.get(kScalarLen));
      GroupElement p = GroupElement::decode(r.get(kElementLen));
      table.entries.push_back({s, p});
    }
    r.expect_end();
    if (opts.verify_entries) check_table(table);
    return table;
  }

  DesignatedTable table{params, GroupElement::decode(r.get(kElementLen)), {}, {}};
  const auto binding = r.get(32);
  std::copy(binding.begin(), binding.end(), table.owner_binding.begin());
  if (table.designated_point.is_identity())
    throw Error(ErrorCode::InvalidDesignatedPoint, "designated point is the identity");
  table.entries.reserve(k);
  for (std::uint32_t i = 0; i < k; ++i) {
    Scalar s = Scalar::from_bytes(r.get(kScalarLen));
    GroupElement R = GroupElement::decode(r.get(kElementLen));
    GroupElement S = GroupElement::decode(r.get(kElementLen));
    table.entries.push_back({s, R, S});
  }
  r.expect_end();
  if (opts.verify_entries) check_table(table);
  return table;
}

PrecompTable deserialize_standard_table(ByteView bytes, const TableLoadOptions& opts) {
  auto any = deserialize_table(bytes, opts);
  if (auto* t = std::get_if<PrecompTable>(&any)) return std::move(*t);
  throw Error(ErrorCode::UnsupportedVersion, "expected a standard table, found a designated one");
}

DesignatedTable deserialize_designated_table(ByteView bytes, const TableLoadOptions& opts) {
  auto any = deserialize_table(bytes, opts);
  if (auto* t = std::get_if<DesignatedTable>(&any)) return std::move(*t);
  throw Error(ErrorCode::UnsupportedVersion, "expected a designated table, found a standard one");
}

}  // namespace iodc
