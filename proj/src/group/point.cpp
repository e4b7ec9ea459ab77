#include <cstring>

#include "iodc/error.hpp"
#include "iodc/group.hpp"

namespace iodc {

using namespace detail;

namespace {

const GroupElement& identity_point() {
  static const GroupElement p;
  return p;
}

}  // namespace

GroupElement::GroupElement() : x_(fe_zero()), y_(fe_one()), z_(fe_one()), t_(fe_zero()) {}

GroupElement GroupElement::identity() { return identity_point(); }

const GroupElement& GroupElement::generator() {
  static const GroupElement g = [] {
    // Ed25519 base point (y = 4/5, x even).
    auto fe = [](const char* hex) {
      auto b = from_hex(hex);
      return fe_from_bytes(b.data());
    };
    Fe x = fe("1ad5258f602d56c9b2a7259560c72c695cdcd6fd31e2a4c0fe536ecdd3366921");
    Fe y = fe("5866666666666666666666666666666666666666666666666666666666666666");
    return GroupElement(x, y, fe_one(), fe_mul(x, y));
  }();
  return g;
}

std::optional<GroupElement> GroupElement::try_decode(ByteView bytes) noexcept {
  if (bytes.size() != kElementLen) return std::nullopt;
  const Fe s = fe_from_bytes(bytes.data());
  const auto canonical = fe_to_bytes(s);
  if (std::memcmp(canonical.data(), bytes.data(), kElementLen) != 0) return std::nullopt;
  if (fe_is_negative(s)) return std::nullopt;

  const Fe ss = fe_sq(s);
  const Fe u1 = fe_sub(fe_one(), ss);
  const Fe u2 = fe_add(fe_one(), ss);
  const Fe u2_sq = fe_sq(u2);
  const Fe v = fe_sub(fe_neg(fe_mul(fe_d(), fe_sq(u1))), u2_sq);

  Fe invsqrt;
  const bool was_square = fe_sqrt_ratio_m1(invsqrt, fe_one(), fe_mul(v, u2_sq));
  const Fe den_x = fe_mul(invsqrt, u2);
  const Fe den_y = fe_mul(fe_mul(invsqrt, den_x), v);

  const Fe x = fe_abs(fe_mul(fe_add(s, s), den_x));
  const Fe y = fe_mul(u1, den_y);
  const Fe t = fe_mul(x, y);
  if (!was_square || fe_is_negative(t) || fe_is_zero(y)) return std::nullopt;
  return GroupElement(x, y, fe_one(), t);
}

GroupElement GroupElement::decode(ByteView bytes) {
  auto p = try_decode(bytes);
  if (!p) throw Error(ErrorCode::MalformedElement, "invalid group element encoding");
  return *p;
}

Bytes32 GroupElement::encode() const {
  const Fe u1 = fe_mul(fe_add(z_, y_), fe_sub(z_, y_));
  const Fe u2 = fe_mul(x_, y_);
  Fe invsqrt;
  fe_sqrt_ratio_m1(invsqrt, fe_one(), fe_mul(u1, fe_sq(u2)));
  const Fe den1 = fe_mul(invsqrt, u1);
  const Fe den2 = fe_mul(invsqrt, u2);
  const Fe z_inv = fe_mul(fe_mul(den1, den2), t_);

  const Fe ix = fe_mul(x_, fe_sqrt_m1());
  const Fe iy = fe_mul(y_, fe_sqrt_m1());
  const Fe enchanted = fe_mul(den1, fe_invsqrt_a_minus_d());
  const bool rotate = fe_is_negative(fe_mul(t_, z_inv));

  Fe x = x_;
  Fe y = y_;
  Fe den_inv = den2;
  fe_cmov(x, iy, rotate);
  fe_cmov(y, ix, rotate);
  fe_cmov(den_inv, enchanted, rotate);
  fe_cmov(y, fe_neg(y), fe_is_negative(fe_mul(x, z_inv)));

  return fe_to_bytes(fe_abs(fe_mul(den_inv, fe_sub(z_, y))));
}

bool GroupElement::is_identity() const { return fe_is_zero(x_) || fe_is_zero(y_); }

GroupElement GroupElement::negate() const {
  return GroupElement(fe_neg(x_), y_, z_, fe_neg(t_));
}

bool GroupElement::operator==(const GroupElement& o) const {
  const bool a = fe_equal(fe_mul(x_, o.y_), fe_mul(y_, o.x_));
  const bool b = fe_equal(fe_mul(y_, o.y_), fe_mul(x_, o.x_));
  return a || b;
}

GroupElement GroupElement::add(const GroupElement& o) const {
  // Complete twisted Edwards addition, a = -1 (add-2008-hwcd-3).
  const Fe a = fe_mul(fe_sub(y_, x_), fe_sub(o.y_, o.x_));
  const Fe b = fe_mul(fe_add(y_, x_), fe_add(o.y_, o.x_));
  const Fe c = fe_mul(fe_mul(t_, fe_2d()), o.t_);
  const Fe zz = fe_mul(z_, o.z_);
  const Fe d = fe_add(zz, zz);
  const Fe e = fe_sub(b, a);
  const Fe f = fe_sub(d, c);
  const Fe g = fe_add(d, c);
  const Fe h = fe_add(b, a);
  return GroupElement(fe_mul(e, f), fe_mul(g, h), fe_mul(f, g), fe_mul(e, h));
}

GroupElement GroupElement::dbl() const {
  const Fe a = fe_sq(x_);
  const Fe b = fe_sq(y_);
  const Fe zz = fe_sq(z_);
  const Fe c = fe_add(zz, zz);
  const Fe h = fe_add(a, b);
  const Fe e = fe_sub(h, fe_sq(fe_add(x_, y_)));
  const Fe g = fe_sub(a, b);
  const Fe f = fe_add(c, g);
  return GroupElement(fe_mul(e, f), fe_mul(g, h), fe_mul(f, g), fe_mul(e, h));
}

GroupElement GroupElement::mul(const Scalar& k) const {
  // Fixed 4-bit window; every window scans the full table.
  GroupElement table[16];
  table[1] = *this;
  for (int i = 2; i < 16; ++i) table[i] = table[i - 1].add(*this);

  const auto bytes = k.to_bytes();
  GroupElement acc;
  for (int w = 63; w >= 0; --w) {
    if (w != 63) acc = acc.dbl().dbl().dbl().dbl();
    const unsigned nibble = (bytes[w / 2] >> (4 * (w % 2))) & 0xF;
    GroupElement sel;
    for (unsigned i = 0; i < 16; ++i) {
      const bool hit = (i == nibble);
      fe_cmov(sel.x_, table[i].x_, hit);
      fe_cmov(sel.y_, table[i].y_, hit);
      fe_cmov(sel.z_, table[i].z_, hit);
      fe_cmov(sel.t_, table[i].t_, hit);
    }
    acc = acc.add(sel);
  }
  return acc;
}

const GroupDescriptor& default_group() {
  static const GroupDescriptor desc{kGroupId, group_order_bytes(), GroupElement::generator(),
                                    kElementLen, kScalarLen};
  return desc;
}

GroupElement scalar_mult(const Scalar& k, const GroupElement& p, OpCounter& ctr) {
  ++ctr.scalar_mults;
  return p.mul(k);
}

GroupElement point_add(const GroupElement& p, const GroupElement& q, OpCounter& ctr) {
  ++ctr.point_adds;
  return p.add(q);
}

}  // namespace iodc
