#pragma once

// Schnorr signatures over self-certified keys with BPV nonces.
//
//   sign:   (r, R) <- BPV online;  e = H(SIG, m, R);  s = r - e x
//   verify: R' = e X + s G with X reconstructed from (id, U, D); accept iff
//           e = H(SIG, m, R')
//
// Signing performs v - 1 point additions and no scalar multiplication.
// reference_sign / reference_verify are the textbook variant with a fresh
// r * G per signature; they share the wire format and serve as oracle and
// speed baseline.

#include <optional>
#include <span>
#include <vector>

#include "iodc/bpv.hpp"
#include "iodc/bytes.hpp"
#include "iodc/group.hpp"
#include "iodc/selfcert.hpp"

namespace iodc {

inline constexpr std::size_t kSignatureLen = 64;

struct Signature {
  Scalar s;
  Scalar e;

  // s || e, each a 32-byte little-endian canonical scalar.
  std::array<std::uint8_t, kSignatureLen> to_bytes() const;
  // Throws MalformedSignature on wrong length or non-canonical halves.
  static Signature from_bytes(ByteView bytes);
  static std::optional<Signature> try_from_bytes(ByteView bytes) noexcept;

  bool operator==(const Signature&) const = default;
};

struct SignerContext {
  SelfCertKeypair keypair;
  PrecompTable table;

  // Table entries plus the 32-byte private key.
  std::size_t memory_footprint() const noexcept;
};

struct VerifierContext {
  IdentityRecord record;
  GroupElement D;
  GroupElement cached_X;

  static VerifierContext make(const IdentityRecord& record, const GroupElement& D);
};

SignerContext sign_kg(const KgcKeypair& kgc, ByteView id, const BpvParams& params, Rng& rng,
                      OpCounter& ctr);

Signature sign(const SignerContext& ctx, ByteView message, Rng& rng, OpCounter& ctr);
bool verify(const VerifierContext& vctx, ByteView message, const Signature& sig, OpCounter& ctr);

Signature reference_sign(const Scalar& x, ByteView message, Rng& rng, OpCounter& ctr);
bool reference_verify(const GroupElement& X, ByteView message, const Signature& sig,
                      OpCounter& ctr);

struct SignedMessage {
  ByteView message;
  Signature sig;
};

// Batch check of independent (message, signature) pairs against one verifier.
// verify_many splits the batch across OpenMP threads; verify_many_serial is the
// single-threaded reference. Result i is 1 iff pair i verifies.
std::vector<std::uint8_t> verify_many(const VerifierContext& vctx,
                                      std::span<const SignedMessage> batch, OpCounter& ctr);
std::vector<std::uint8_t> verify_many_serial(const VerifierContext& vctx,
                                             std::span<const SignedMessage> batch,
                                             OpCounter& ctr);

// "IODCSIG1" detached-signature file.
struct SignatureFile {
  Bytes signer_id;
  Signature sig;

  Bytes encode() const;
  static SignatureFile decode(ByteView bytes);
};

}  // namespace iodc
