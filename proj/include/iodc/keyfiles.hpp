#pragma once

// On-disk key formats. Each file is an 8-byte magic, the group id byte and a
// fixed body:
//   IODCSYSP  D
//   IODCKGCK  d || D
//   IODCDRNK  id_len || id || x || U || x*D
//   IODCIDR1  id_len || id || U
// Decoding checks structure and encodings only; key_ver is a separate step.

#include "iodc/bytes.hpp"
#include "iodc/group.hpp"
#include "iodc/selfcert.hpp"

namespace iodc {

Bytes encode_system_public(const GroupElement& D);
GroupElement decode_system_public(ByteView bytes);

Bytes encode_kgc_secret(const KgcKeypair& kgc);
KgcKeypair decode_kgc_secret(ByteView bytes);

// A keypair without cached_xD is written with x*D computed from D.
Bytes encode_drone_secret(const SelfCertKeypair& key, const GroupElement& D);
SelfCertKeypair decode_drone_secret(ByteView bytes);

Bytes encode_identity_file(const IdentityRecord& record);
IdentityRecord decode_identity_file(ByteView bytes);

}  // namespace iodc
