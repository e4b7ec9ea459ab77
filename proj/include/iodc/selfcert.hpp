#pragma once

// Arazi-Qi self-certified keys. The KGC issues (id, U, x) with
//   x = H(KEY, id, U) * b + d,   U = b * G,
// so anyone holding the system key D can reconstruct the public key
//   X = H(KEY, id, U) * U + D = x * G
// from the identity record alone. No certificate travels on the wire.

#include <optional>
#include <string>

#include "iodc/bpv.hpp"
#include "iodc/bytes.hpp"
#include "iodc/group.hpp"
#include "iodc/rng.hpp"

namespace iodc {

inline constexpr std::size_t kMaxIdentityLen = 255;

struct KgcKeypair {
  Scalar d;
  GroupElement D;
};

struct IdentityRecord {
  Bytes id;
  GroupElement U;

  // Wire form: id_len (1B) || id || U (32B).
  Bytes encode() const;
  static IdentityRecord decode(ByteReader& reader);
  static IdentityRecord decode(ByteView bytes);

  std::string id_string() const { return {id.begin(), id.end()}; }
};

// Throws InvalidIdentity for an empty or oversized id, or an identity U.
void validate_record(const IdentityRecord& record);

struct SelfCertKeypair {
  IdentityRecord record;
  Scalar x;
  std::optional<GroupElement> cached_xD;
};

struct SessionKey {
  Bytes32 key{};
  Bytes32 transcript_hash{};

  bool operator==(const SessionKey&) const = default;
};

// H(KEY, id, encode(U)); the one canonical hash behind both H(ID, U) and
// H(ID || U).
Scalar identity_hash(const IdentityRecord& record);
Bytes32 owner_binding(const IdentityRecord& record);

KgcKeypair kgc_setup(Rng& rng);
SelfCertKeypair aq_kg(const KgcKeypair& kgc, ByteView id, Rng& rng);

bool key_ver(const IdentityRecord& record, const Scalar& x, const GroupElement& D);

GroupElement reconstruct_pub(const IdentityRecord& record, const GroupElement& D,
                             OpCounter& ctr);
GroupElement reconstruct_pub(const IdentityRecord& record, const GroupElement& D);

// Uses the cached x*D when present: one scalar multiplication instead of two.
GroupElement aq_shared_static(const SelfCertKeypair& me, const IdentityRecord& peer,
                              const GroupElement& D, OpCounter& ctr);

// AQ-Hang ephemeral exchange. Each side sends its record plus an ephemeral
// T = t * G; the session key is HKDF over the static AQ secret, the fresh ECDH
// value t_me * T_peer and a role-independent transcript hash.
struct HangMessage {
  IdentityRecord record;
  GroupElement T;

  Bytes encode() const;
  static HangMessage decode(ByteView bytes);
};

struct HangInitiation {
  Scalar t;
  HangMessage message;
};

// With a table, T comes from bpv_online and costs no scalar multiplication.
HangInitiation aq_hang_initiate(const SelfCertKeypair& me, Rng& rng, OpCounter& ctr,
                                const PrecompTable* table = nullptr);

SessionKey aq_hang_finalize(const SelfCertKeypair& me, const HangInitiation& mine,
                            const HangMessage& peer, const GroupElement& D, OpCounter& ctr);

Bytes32 session_fingerprint(const SessionKey& key);

}  // namespace iodc
