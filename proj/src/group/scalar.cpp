#include <stdexcept>

#include "iodc/error.hpp"
#include "iodc/group.hpp"

namespace iodc {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using Limbs = std::array<u64, 4>;

// N = 2^252 + 27742317777372353535851937790883648493
constexpr Limbs kOrder = {0x5812631a5cf5d3edULL, 0x14def9dea2f79cd6ULL, 0, 0x1000000000000000ULL};
// R^2 mod N, R = 2^256
constexpr Limbs kR2 = {0xa40611e3449c0f01ULL, 0xd00e1ba768859347ULL, 0xceec73d217f5be65ULL,
                       0x0399411b7c309a3dULL};
// -N^{-1} mod 2^64
constexpr u64 kN0 = 0xd2b51da312547e1bULL;
constexpr Limbs kTwo252 = {0, 0, 0, 0x1000000000000000ULL};
constexpr Limbs kTwo504 = {0xe2edf685ab128969ULL, 0x680392762298a31dULL, 0x3dceec73d217f5beULL,
                           0x01b399411b7c309aULL};

bool geq_order(const Limbs& a) {
  for (int i = 3; i >= 0; --i) {
    if (a[i] != kOrder[i]) return a[i] > kOrder[i];
  }
  return true;
}

Limbs sub_order(const Limbs& a) {
  Limbs r{};
  u64 borrow = 0;
  for (int i = 0; i < 4; ++i) {
    u128 d = (u128)a[i] - kOrder[i] - borrow;
    r[i] = (u64)d;
    borrow = (u64)(d >> 127);
  }
  return r;
}

// Montgomery product a*b*R^{-1} mod N for a, b < N (CIOS).
Limbs mont_mul(const Limbs& a, const Limbs& b) {
  u64 t[6] = {0, 0, 0, 0, 0, 0};
  for (int i = 0; i < 4; ++i) {
    u64 c = 0;
    for (int j = 0; j < 4; ++j) {
      u128 s = (u128)t[j] + (u128)a[j] * b[i] + c;
      t[j] = (u64)s;
      c = (u64)(s >> 64);
    }
    u128 s = (u128)t[4] + c;
    t[4] = (u64)s;
    t[5] = (u64)(s >> 64);

    const u64 m = t[0] * kN0;
    s = (u128)t[0] + (u128)m * kOrder[0];
    c = (u64)(s >> 64);
    for (int j = 1; j < 4; ++j) {
      s = (u128)t[j] + (u128)m * kOrder[j] + c;
      t[j - 1] = (u64)s;
      c = (u64)(s >> 64);
    }
    s = (u128)t[4] + c;
    t[3] = (u64)s;
    t[4] = t[5] + (u64)(s >> 64);
  }
  Limbs r = {t[0], t[1], t[2], t[3]};
  if (t[4] != 0 || geq_order(r)) r = sub_order(r);
  return r;
}

Limbs mul_mod(const Limbs& a, const Limbs& b) { return mont_mul(mont_mul(a, b), kR2); }

Limbs add_mod(const Limbs& a, const Limbs& b) {
  Limbs r{};
  u64 c = 0;
  for (int i = 0; i < 4; ++i) {
    u128 s = (u128)a[i] + b[i] + c;
    r[i] = (u64)s;
    c = (u64)(s >> 64);
  }
  // a + b < 2N < 2^254, so no carry out.
  if (geq_order(r)) r = sub_order(r);
  return r;
}

Limbs sub_mod(const Limbs& a, const Limbs& b) {
  Limbs r{};
  u64 borrow = 0;
  for (int i = 0; i < 4; ++i) {
    u128 d = (u128)a[i] - b[i] - borrow;
    r[i] = (u64)d;
    borrow = (u64)(d >> 127);
  }
  if (borrow) {
    u64 c = 0;
    for (int i = 0; i < 4; ++i) {
      u128 s = (u128)r[i] + kOrder[i] + c;
      r[i] = (u64)s;
      c = (u64)(s >> 64);
    }
  }
  return r;
}

Limbs load_limbs(const std::uint8_t* p, std::size_t words) {
  Limbs r{};
  for (std::size_t i = 0; i < words; ++i) {
    u64 w = 0;
    for (int j = 7; j >= 0; --j) w = (w << 8) | p[8 * i + j];
    r[i] = w;
  }
  return r;
}

}  // namespace

Scalar Scalar::from_u64(std::uint64_t v) { return Scalar(Limbs{v, 0, 0, 0}); }

std::optional<Scalar> Scalar::try_from_bytes(ByteView bytes) noexcept {
  if (bytes.size() != kScalarLen) return std::nullopt;
  Limbs l = load_limbs(bytes.data(), 4);
  if (geq_order(l)) return std::nullopt;
  return Scalar(l);
}

Scalar Scalar::from_bytes(ByteView bytes) {
  auto s = try_from_bytes(bytes);
  if (!s) throw Error(ErrorCode::MalformedScalar, "scalar encoding is not canonical");
  return *s;
}

Scalar Scalar::reduce_wide(ByteView bytes) {
  if (bytes.size() != 64) throw std::invalid_argument("reduce_wide expects 64 bytes");
  u64 w[8];
  for (int i = 0; i < 8; ++i) {
    u64 x = 0;
    for (int j = 7; j >= 0; --j) x = (x << 8) | bytes[8 * i + j];
    w[i] = x;
  }
  constexpr u64 kLow60 = (u64{1} << 60) - 1;
  // w = lo + mid * 2^252 + hi * 2^504 with lo, mid < 2^252 < N.
  Limbs lo = {w[0], w[1], w[2], w[3] & kLow60};
  Limbs mid{};
  for (int i = 0; i < 4; ++i) mid[i] = (w[3 + i] >> 60) | (w[4 + i] << 4);
  mid[3] &= kLow60;
  Limbs hi = {w[7] >> 56, 0, 0, 0};

  Limbs r = add_mod(lo, mul_mod(mid, kTwo252));
  r = add_mod(r, mul_mod(hi, kTwo504));
  return Scalar(r);
}

Bytes32 Scalar::to_bytes() const {
  Bytes32 out{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 8; ++j) out[8 * i + j] = static_cast<std::uint8_t>(limbs_[i] >> (8 * j));
  return out;
}

bool Scalar::is_zero() const noexcept {
  return (limbs_[0] | limbs_[1] | limbs_[2] | limbs_[3]) == 0;
}

Scalar Scalar::operator+(const Scalar& o) const { return Scalar(add_mod(limbs_, o.limbs_)); }
Scalar Scalar::operator-(const Scalar& o) const { return Scalar(sub_mod(limbs_, o.limbs_)); }
Scalar Scalar::operator*(const Scalar& o) const { return Scalar(mul_mod(limbs_, o.limbs_)); }
Scalar Scalar::operator-() const { return Scalar(sub_mod(Limbs{}, limbs_)); }

const Bytes32& group_order_bytes() {
  static const Bytes32 bytes = [] {
    Bytes32 out{};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 8; ++j) out[8 * i + j] = static_cast<std::uint8_t>(kOrder[i] >> (8 * j));
    return out;
  }();
  return bytes;
}

}  // namespace iodc
