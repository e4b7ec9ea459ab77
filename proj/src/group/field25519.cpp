#include "iodc/detail/field25519.hpp"

#include <cstring>

namespace iodc::detail {
namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr u64 kMask51 = (u64{1} << 51) - 1;

u64 load64(const std::uint8_t* p) {
  u64 r = 0;
  for (int i = 7; i >= 0; --i) r = (r << 8) | p[i];
  return r;
}

Fe carry(Fe f) {
  u64 c;
  c = f.v[0] >> 51; f.v[0] &= kMask51; f.v[1] += c;
  c = f.v[1] >> 51; f.v[1] &= kMask51; f.v[2] += c;
  c = f.v[2] >> 51; f.v[2] &= kMask51; f.v[3] += c;
  c = f.v[3] >> 51; f.v[3] &= kMask51; f.v[4] += c;
  c = f.v[4] >> 51; f.v[4] &= kMask51; f.v[0] += c * 19;
  return f;
}

Fe sq_n(Fe a, int n) {
  for (int i = 0; i < n; ++i) a = fe_sq(a);
  return a;
}

Fe from_hex_le(const char* hex) {
  std::uint8_t b[32];
  for (int i = 0; i < 32; ++i) {
    auto nib = [](char c) -> std::uint8_t {
      return static_cast<std::uint8_t>(c <= '9' ? c - '0' : c - 'a' + 10);
    };
    b[i] = static_cast<std::uint8_t>(nib(hex[2 * i]) << 4 | nib(hex[2 * i + 1]));
  }
  return fe_from_bytes(b);
}

// Shared prefix of the inversion and square-root addition chains.
// Returns z^(2^250 - 1) and stores z^11 in z11.
Fe pow_2_250_1(const Fe& z, Fe& z11) {
  Fe z2 = fe_sq(z);
  Fe z8 = sq_n(z2, 2);
  Fe z9 = fe_mul(z, z8);
  z11 = fe_mul(z2, z9);
  Fe z22 = fe_sq(z11);
  Fe z_5_0 = fe_mul(z9, z22);
  Fe z_10_0 = fe_mul(sq_n(z_5_0, 5), z_5_0);
  Fe z_20_0 = fe_mul(sq_n(z_10_0, 10), z_10_0);
  Fe z_40_0 = fe_mul(sq_n(z_20_0, 20), z_20_0);
  Fe z_50_0 = fe_mul(sq_n(z_40_0, 10), z_10_0);
  Fe z_100_0 = fe_mul(sq_n(z_50_0, 50), z_50_0);
  Fe z_200_0 = fe_mul(sq_n(z_100_0, 100), z_100_0);
  return fe_mul(sq_n(z_200_0, 50), z_50_0);
}

}  // namespace

Fe fe_zero() { return Fe{{0, 0, 0, 0, 0}}; }
Fe fe_one() { return Fe{{1, 0, 0, 0, 0}}; }

Fe fe_from_bytes(const std::uint8_t in[32]) {
  Fe f;
  f.v[0] = load64(in) & kMask51;
  f.v[1] = (load64(in + 6) >> 3) & kMask51;
  f.v[2] = (load64(in + 12) >> 6) & kMask51;
  f.v[3] = (load64(in + 19) >> 1) & kMask51;
  f.v[4] = (load64(in + 24) >> 12) & kMask51;
  return f;
}

std::array<std::uint8_t, 32> fe_to_bytes(const Fe& in) {
  Fe f = carry(carry(in));
  // f < 2^255 + small; subtract p once if f >= p.
  u64 q = (f.v[0] + 19) >> 51;
  q = (f.v[1] + q) >> 51;
  q = (f.v[2] + q) >> 51;
  q = (f.v[3] + q) >> 51;
  q = (f.v[4] + q) >> 51;
  f.v[0] += 19 * q;
  u64 c;
  c = f.v[0] >> 51; f.v[0] &= kMask51; f.v[1] += c;
  c = f.v[1] >> 51; f.v[1] &= kMask51; f.v[2] += c;
  c = f.v[2] >> 51; f.v[2] &= kMask51; f.v[3] += c;
  c = f.v[3] >> 51; f.v[3] &= kMask51; f.v[4] += c;
  f.v[4] &= kMask51;

  u64 w[4] = {
      f.v[0] | (f.v[1] << 51),
      (f.v[1] >> 13) | (f.v[2] << 38),
      (f.v[2] >> 26) | (f.v[3] << 25),
      (f.v[3] >> 39) | (f.v[4] << 12),
  };
  std::array<std::uint8_t, 32> out{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 8; ++j) out[8 * i + j] = static_cast<std::uint8_t>(w[i] >> (8 * j));
  return out;
}

Fe fe_add(const Fe& a, const Fe& b) {
  Fe r;
  for (int i = 0; i < 5; ++i) r.v[i] = a.v[i] + b.v[i];
  return carry(r);
}

Fe fe_sub(const Fe& a, const Fe& b) {
  // a + 4p - b keeps every limb non-negative for b limbs below 2^53.
  Fe r;
  r.v[0] = a.v[0] + 0x1FFFFFFFFFFFB4ULL - b.v[0];
  for (int i = 1; i < 5; ++i) r.v[i] = a.v[i] + 0x1FFFFFFFFFFFFCULL - b.v[i];
  return carry(r);
}

Fe fe_neg(const Fe& a) { return fe_sub(fe_zero(), a); }

Fe fe_mul(const Fe& a, const Fe& b) {
  const u64 a0 = a.v[0], a1 = a.v[1], a2 = a.v[2], a3 = a.v[3], a4 = a.v[4];
  const u64 b0 = b.v[0], b1 = b.v[1], b2 = b.v[2], b3 = b.v[3], b4 = b.v[4];
  const u64 b1_19 = b1 * 19, b2_19 = b2 * 19, b3_19 = b3 * 19, b4_19 = b4 * 19;

  u128 r0 = (u128)a0 * b0 + (u128)a1 * b4_19 + (u128)a2 * b3_19 + (u128)a3 * b2_19 + (u128)a4 * b1_19;
  u128 r1 = (u128)a0 * b1 + (u128)a1 * b0 + (u128)a2 * b4_19 + (u128)a3 * b3_19 + (u128)a4 * b2_19;
  u128 r2 = (u128)a0 * b2 + (u128)a1 * b1 + (u128)a2 * b0 + (u128)a3 * b4_19 + (u128)a4 * b3_19;
  u128 r3 = (u128)a0 * b3 + (u128)a1 * b2 + (u128)a2 * b1 + (u128)a3 * b0 + (u128)a4 * b4_19;
  u128 r4 = (u128)a0 * b4 + (u128)a1 * b3 + (u128)a2 * b2 + (u128)a3 * b1 + (u128)a4 * b0;

  Fe out;
  r1 += (u64)(r0 >> 51); out.v[0] = (u64)r0 & kMask51;
  r2 += (u64)(r1 >> 51); out.v[1] = (u64)r1 & kMask51;
  r3 += (u64)(r2 >> 51); out.v[2] = (u64)r2 & kMask51;
  r4 += (u64)(r3 >> 51); out.v[3] = (u64)r3 & kMask51;
  u64 c = (u64)(r4 >> 51); out.v[4] = (u64)r4 & kMask51;
  out.v[0] += c * 19;
  c = out.v[0] >> 51; out.v[0] &= kMask51; out.v[1] += c;
  return out;
}

Fe fe_sq(const Fe& a) { return fe_mul(a, a); }

Fe fe_invert(const Fe& a) {
  Fe z11;
  Fe t = pow_2_250_1(a, z11);
  return fe_mul(sq_n(t, 5), z11);  // 2^255 - 21 = p - 2
}

Fe fe_pow22523(const Fe& a) {
  Fe z11;
  Fe t = pow_2_250_1(a, z11);
  return fe_mul(sq_n(t, 2), a);  // 2^252 - 3
}

bool fe_is_zero(const Fe& a) {
  auto b = fe_to_bytes(a);
  std::uint8_t acc = 0;
  for (auto x : b) acc |= x;
  return acc == 0;
}

bool fe_is_negative(const Fe& a) { return (fe_to_bytes(a)[0] & 1) != 0; }

bool fe_equal(const Fe& a, const Fe& b) {
  auto x = fe_to_bytes(a);
  auto y = fe_to_bytes(b);
  std::uint8_t acc = 0;
  for (int i = 0; i < 32; ++i) acc |= static_cast<std::uint8_t>(x[i] ^ y[i]);
  return acc == 0;
}

void fe_cmov(Fe& dst, const Fe& src, bool cond) {
  const u64 mask = u64{0} - static_cast<u64>(cond);
  for (int i = 0; i < 5; ++i) dst.v[i] ^= mask & (dst.v[i] ^ src.v[i]);
}

Fe fe_abs(const Fe& a) {
  Fe r = a;
  fe_cmov(r, fe_neg(a), fe_is_negative(a));
  return r;
}

bool fe_sqrt_ratio_m1(Fe& out, const Fe& u, const Fe& v) {
  const Fe v3 = fe_mul(fe_sq(v), v);
  const Fe v7 = fe_mul(fe_sq(v3), v);
  Fe r = fe_mul(fe_mul(u, v3), fe_pow22523(fe_mul(u, v7)));
  const Fe check = fe_mul(v, fe_sq(r));

  const Fe neg_u = fe_neg(u);
  const bool correct = fe_equal(check, u);
  const bool flipped = fe_equal(check, neg_u);
  const bool flipped_i = fe_equal(check, fe_mul(neg_u, fe_sqrt_m1()));

  fe_cmov(r, fe_mul(fe_sqrt_m1(), r), flipped || flipped_i);
  out = fe_abs(r);
  return correct || flipped;
}

const Fe& fe_d() {
  static const Fe k = from_hex_le("a3785913ca4deb75abd841414d0a700098e879777940c78c73fe6f2bee6c0352");
  return k;
}

const Fe& fe_2d() {
  static const Fe k = from_hex_le("59f1b226949bd6eb56b183829a14e00030d1f3eef2808e19e7fcdf56dcd90624");
  return k;
}

const Fe& fe_sqrt_m1() {
  static const Fe k = from_hex_le("b0a00e4a271beec478e42fad0618432fa7d7fb3d99004d2b0bdfc14f8024832b");
  return k;
}

const Fe& fe_invsqrt_a_minus_d() {
  static const Fe k = from_hex_le("ea405d80aafdc899be72415a17162f9d40d801fe917bc216a2fcafcf05896c78");
  return k;
}

}  // namespace iodc::detail
