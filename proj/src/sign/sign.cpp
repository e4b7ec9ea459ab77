#include "iodc/sign.hpp"

#include <omp.h>

#include <cstring>

#include "iodc/error.hpp"

namespace iodc {
namespace {

constexpr char kSigMagic[8] = {'I', 'O', 'D', 'C', 'S', 'I', 'G', '1'};

Scalar challenge(ByteView message, const GroupElement& R) {
  const auto r = R.encode();
  return hash_to_scalar(HashTag::Sig, {message, ByteView(r)});
}

// R' = e X + s G; accept iff e == H(SIG, m, R').
bool check(const GroupElement& X, ByteView message, const Signature& sig, OpCounter& ctr) {
  const GroupElement r_prime = point_add(scalar_mult(sig.e, X, ctr),
                                         scalar_mult(sig.s, GroupElement::generator(), ctr), ctr);
  return challenge(message, r_prime) == sig.e;
}

}  // namespace

std::array<std::uint8_t, kSignatureLen> Signature::to_bytes() const {
  std::array<std::uint8_t, kSignatureLen> out{};
  const auto sb = s.to_bytes();
  const auto eb = e.to_bytes();
  std::copy(sb.begin(), sb.end(), out.begin());
  std::copy(eb.begin(), eb.end(), out.begin() + kScalarLen);
  return out;
}

std::optional<Signature> Signature::try_from_bytes(ByteView bytes) noexcept {
  if (bytes.size() != kSignatureLen) return std::nullopt;
  auto s = Scalar::try_from_bytes(bytes.first(kScalarLen));
  auto e = Scalar::try_from_bytes(bytes.subspan(kScalarLen));
  if (!s || !e) return std::nullopt;
  return Signature{*s, *e};
}

Signature Signature::from_bytes(ByteView bytes) {
  auto sig = try_from_bytes(bytes);
  if (!sig) throw Error(ErrorCode::MalformedSignature, "signature is not two canonical scalars");
  return *sig;
}

std::size_t SignerContext::memory_footprint() const noexcept {
  return table.entry_payload_bytes() + kScalarLen;
}

VerifierContext VerifierContext::make(const IdentityRecord& record, const GroupElement& D) {
  validate_record(record);
  return {record, D, reconstruct_pub(record, D)};
}

SignerContext sign_kg(const KgcKeypair& kgc, ByteView id, const BpvParams& params, Rng& rng,
                      OpCounter& ctr) {
  auto keypair = aq_kg(kgc, id, rng);
  auto table = bpv_offline(params, rng, ctr);
  return {std::move(keypair), std::move(table)};
}

Signature sign(const SignerContext& ctx, ByteView message, Rng& rng, OpCounter& ctr) {
  const BpvSample nonce = bpv_online(ctx.table, rng, ctr);
  const Scalar e = challenge(message, nonce.R);
  return {nonce.r - e * ctx.keypair.x, e};
}

bool verify(const VerifierContext& vctx, ByteView message, const Signature& sig,
            OpCounter& ctr) {
  return check(vctx.cached_X, message, sig, ctr);
}

Signature reference_sign(const Scalar& x, ByteView message, Rng& rng, OpCounter& ctr) {
  const Scalar r = random_scalar(rng);
  const GroupElement R = scalar_mult(r, GroupElement::generator(), ctr);
  const Scalar e = challenge(message, R);
  return {r - e * x, e};
}

bool reference_verify(const GroupElement& X, ByteView message, const Signature& sig,
                      OpCounter& ctr) {
  return check(X, message, sig, ctr);
}

std::vector<std::uint8_t> verify_many(const VerifierContext& vctx,
                                      std::span<const SignedMessage> batch, OpCounter& ctr) {
  std::vector<std::uint8_t> ok(batch.size(), 0);
  const auto n = static_cast<std::int64_t>(batch.size());
#pragma omp parallel
  {
    OpCounter local;
#pragma omp for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < n; ++i) {
      ok[i] = check(vctx.cached_X, batch[i].message, batch[i].sig, local) ? 1 : 0;
    }
#pragma omp critical
    ctr += local;
  }
  return ok;
}

std::vector<std::uint8_t> verify_many_serial(const VerifierContext& vctx,
                                             std::span<const SignedMessage> batch,
                                             OpCounter& ctr) {
  std::vector<std::uint8_t> ok;
  ok.reserve(batch.size());
  for (const auto& item : batch) ok.push_back(check(vctx.cached_X, item.message, item.sig, ctr));
  return ok;
}

Bytes SignatureFile::encode() const {
  if (signer_id.empty() || signer_id.size() > kMaxIdentityLen)
    throw Error(ErrorCode::InvalidIdentity, "signer id must be 1..255 bytes");
  ByteWriter w;
  w.put(ByteView(reinterpret_cast<const std::uint8_t*>(kSigMagic), sizeof(kSigMagic)));
  w.put_u8(kGroupId);
  w.put_u8(static_cast<std::uint8_t>(signer_id.size()));
  w.put(signer_id);
  w.put(sig.to_bytes());
  return std::move(w).take();
}

SignatureFile SignatureFile::decode(ByteView bytes) {
  ByteReader r(bytes);
  if (bytes.size() < sizeof(kSigMagic) ||
      std::memcmp(r.get(sizeof(kSigMagic)).data(), kSigMagic, sizeof(kSigMagic)) != 0)
    throw Error(ErrorCode::BadMagic, "not an IODCSIG1 signature file");
  if (r.get_u8() != kGroupId) throw Error(ErrorCode::UnsupportedVersion, "unknown group id");
  const std::uint8_t len = r.get_u8();
  if (len == 0) throw Error(ErrorCode::InvalidIdentity, "empty signer id");
  const auto id = r.get(len);
  SignatureFile out{Bytes(id.begin(), id.end()), Signature::from_bytes(r.get(kSignatureLen))};
  r.expect_end();
  return out;
}

}  // namespace iodc
