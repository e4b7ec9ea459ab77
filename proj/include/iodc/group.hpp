#pragma once

// Prime-order group used by every protocol in the library: ristretto255 over
// the twisted Edwards curve -x^2 + y^2 = 1 + d x^2 y^2 (d = -121665/121666).
// Points carry extended coordinates internally and a canonical 32-byte
// encoding on the wire; scalars live in Z_N with N = 2^252 + 2774...8493.
//
// Constant time is best effort: the scalar-multiplication window lookup and
// field selects avoid secret-dependent branches, but nothing here has been
// audited for side channels.

#include <array>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>

#include "iodc/bytes.hpp"
#include "iodc/detail/field25519.hpp"
#include "iodc/rng.hpp"

namespace iodc {

inline constexpr std::uint8_t kGroupId = 0x01;
inline constexpr std::size_t kElementLen = 32;
inline constexpr std::size_t kScalarLen = 32;

// Hash domain tags. KEY and SIG are fixed by the key and signature formats.
enum class HashTag : std::uint8_t {
  Key = 0x01,
  Sig = 0x02,
  OwnerBinding = 0x03,
  HangTranscript = 0x04,
  Fingerprint = 0x05,
};

class Scalar {
 public:
  constexpr Scalar() = default;

  static Scalar from_u64(std::uint64_t v);
  // Canonical 32-byte little-endian; throws MalformedScalar when >= N.
  static Scalar from_bytes(ByteView bytes);
  static std::optional<Scalar> try_from_bytes(ByteView bytes) noexcept;
  // Wide reduction of a 64-byte little-endian integer.
  static Scalar reduce_wide(ByteView bytes64);

  Bytes32 to_bytes() const;
  bool is_zero() const noexcept;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }

  bool operator==(const Scalar& o) const noexcept { return limbs_ == o.limbs_; }

  // Least-significant limb first.
  const std::array<std::uint64_t, 4>& limbs() const noexcept { return limbs_; }

 private:
  explicit constexpr Scalar(std::array<std::uint64_t, 4> l) : limbs_(l) {}

  std::array<std::uint64_t, 4> limbs_{};
};

// N as a canonical scalar encoding would overflow, so it is exposed as bytes.
const Bytes32& group_order_bytes();

struct OpCounter {
  std::uint64_t scalar_mults = 0;
  std::uint64_t point_adds = 0;

  void reset() noexcept { *this = {}; }
  OpCounter& operator+=(const OpCounter& o) noexcept {
    scalar_mults += o.scalar_mults;
    point_adds += o.point_adds;
    return *this;
  }
};

class GroupElement {
 public:
  GroupElement();  // identity

  static GroupElement identity();
  static const GroupElement& generator();

  // Throws MalformedElement for non-canonical or invalid encodings.
  static GroupElement decode(ByteView bytes);
  static std::optional<GroupElement> try_decode(ByteView bytes) noexcept;
  Bytes32 encode() const;

  bool is_identity() const;
  GroupElement negate() const;

  // Ristretto equality (compares cosets, not raw coordinates).
  bool operator==(const GroupElement& o) const;

  // Uncounted primitives. Protocol code goes through point_add/scalar_mult so
  // OpCounter sees every operation.
  GroupElement add(const GroupElement& o) const;
  GroupElement dbl() const;
  GroupElement mul(const Scalar& k) const;

 private:
  GroupElement(const detail::Fe& x, const detail::Fe& y, const detail::Fe& z,
               const detail::Fe& t)
      : x_(x), y_(y), z_(z), t_(t) {}

  detail::Fe x_, y_, z_, t_;
};

struct GroupDescriptor {
  std::uint8_t group_id;
  Bytes32 order_N;  // little-endian
  GroupElement generator_G;
  std::size_t element_len;
  std::size_t scalar_len;
};

const GroupDescriptor& default_group();

GroupElement scalar_mult(const Scalar& k, const GroupElement& p, OpCounter& ctr);
GroupElement point_add(const GroupElement& p, const GroupElement& q, OpCounter& ctr);

// SHA-512(tag || for each part: u32le(len) || part) reduced mod N.
Scalar hash_to_scalar(HashTag tag, std::span<const ByteView> parts);
Scalar hash_to_scalar(HashTag tag, std::initializer_list<ByteView> parts);

// SHA-256 under the same framing; used for bindings and transcripts.
Bytes32 hash32(HashTag tag, std::initializer_list<ByteView> parts);

// Uniform in [1, N-1].
Scalar random_scalar(Rng& rng);

inline Bytes32 encode_element(const GroupElement& p) { return p.encode(); }
inline GroupElement decode_element(ByteView bytes) { return GroupElement::decode(bytes); }

}  // namespace iodc
