#pragma once

#include <array>
#include <cstdint>

// Arithmetic in GF(2^255 - 19), five 51-bit limbs. Limbs are kept below
// 2^52 between operations; fe_to_bytes produces the canonical encoding.

namespace iodc::detail {

struct Fe {
  std::uint64_t v[5];
};

Fe fe_zero();
Fe fe_one();
Fe fe_from_bytes(const std::uint8_t in[32]);  // ignores bit 255
std::array<std::uint8_t, 32> fe_to_bytes(const Fe& f);

Fe fe_add(const Fe& a, const Fe& b);
Fe fe_sub(const Fe& a, const Fe& b);
Fe fe_neg(const Fe& a);
Fe fe_mul(const Fe& a, const Fe& b);
Fe fe_sq(const Fe& a);
Fe fe_invert(const Fe& a);
Fe fe_pow22523(const Fe& a);  // a^((p-5)/8)

bool fe_is_zero(const Fe& a);
bool fe_is_negative(const Fe& a);  // low bit of canonical encoding
bool fe_equal(const Fe& a, const Fe& b);

// Constant-time conditional assignment: dst = cond ? src : dst.
void fe_cmov(Fe& dst, const Fe& src, bool cond);
Fe fe_abs(const Fe& a);

// sqrt(u/v) per the ristretto255 SQRT_RATIO_M1 routine. Returns whether u/v
// was square; the root is always the non-negative one.
bool fe_sqrt_ratio_m1(Fe& out, const Fe& u, const Fe& v);

const Fe& fe_d();
const Fe& fe_2d();
const Fe& fe_sqrt_m1();
const Fe& fe_invsqrt_a_minus_d();

}  // namespace iodc::detail
