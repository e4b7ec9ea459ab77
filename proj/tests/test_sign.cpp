#include <doctest.h>

#include <set>

#include "iodc/error.hpp"
#include "iodc/sign.hpp"

using namespace iodc;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an iodc::Error");
  return ErrorCode::Usage;
}

struct Fixture {
  SeededRng rng{50};
  KgcKeypair kgc = kgc_setup(rng);
  OpCounter setup;
  SignerContext signer = sign_kg(kgc, as_bytes("drone-7"), BpvParams::standard(), rng, setup);
  VerifierContext vctx = VerifierContext::make(signer.keypair.record, kgc.D);
  GroupElement X = GroupElement::generator().mul(signer.keypair.x);
};

}  // namespace

TEST_CASE_FIXTURE(Fixture, "sign_kg bundles a valid key and table") {
  CHECK(key_ver(signer.keypair.record, signer.keypair.x, kgc.D));
  CHECK_NOTHROW(check_table(signer.table));
  CHECK(signer.memory_footprint() == 16416);
  CHECK(setup.scalar_mults >= 256);
  CHECK(vctx.cached_X == X);
}

TEST_CASE_FIXTURE(Fixture, "sign performs no scalar multiplication") {
  const Bytes m = {'h', 'i'};
  for (int i = 0; i < 100; ++i) {
    OpCounter ctr;
    const auto sig = sign(signer, m, rng, ctr);
    CHECK(ctr.scalar_mults == 0);
    CHECK(ctr.point_adds == 27);
    OpCounter vc;
    CHECK(verify(vctx, m, sig, vc));
    CHECK(vc.scalar_mults == 2);
    CHECK(vc.point_adds == 1);
    OpCounter rc;
    CHECK(reference_verify(X, m, sig, rc));
  }
}

TEST_CASE_FIXTURE(Fixture, "empty message") {
  OpCounter ctr;
  const auto sig = sign(signer, ByteView{}, rng, ctr);
  CHECK(verify(vctx, ByteView{}, sig, ctr));
  CHECK_FALSE(verify(vctx, as_bytes("x"), sig, ctr));
}

TEST_CASE_FIXTURE(Fixture, "tampered messages and wrong identities fail") {
  const auto other = aq_kg(kgc, as_bytes("drone-8"), rng);
  const auto other_v = VerifierContext::make(other.record, kgc.D);
  OpCounter ctr;
  for (int i = 0; i < 1000; ++i) {
    Bytes m(1 + rng.uniform(200));
    rng.fill(m);
    const auto sig = sign(signer, m, rng, ctr);
    REQUIRE(verify(vctx, m, sig, ctr));
    Bytes bad = m;
    const auto bit = rng.uniform(static_cast<std::uint32_t>(m.size() * 8));
    bad[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
    CHECK_FALSE(verify(vctx, bad, sig, ctr));
    if (i < 100) CHECK_FALSE(verify(other_v, m, sig, ctr));
  }
}

TEST_CASE_FIXTURE(Fixture, "reference signer is interchangeable") {
  for (int i = 0; i < 100; ++i) {
    Bytes m(32);
    rng.fill(m);
    OpCounter ctr;
    const auto sig = reference_sign(signer.keypair.x, m, rng, ctr);
    CHECK(ctr.scalar_mults == 1);
    CHECK(ctr.point_adds == 0);
    CHECK(reference_verify(X, m, sig, ctr));
    CHECK(verify(vctx, m, sig, ctr));
    CHECK(sig.to_bytes().size() == sign(signer, m, rng, ctr).to_bytes().size());
  }
}

TEST_CASE_FIXTURE(Fixture, "signature encoding") {
  OpCounter ctr;
  const auto sig = sign(signer, as_bytes("m"), rng, ctr);
  const auto wire = sig.to_bytes();
  CHECK(wire.size() == 64);
  const auto s = sig.s.to_bytes();
  const auto e = sig.e.to_bytes();
  CHECK(std::equal(s.begin(), s.end(), wire.begin()));
  CHECK(std::equal(e.begin(), e.end(), wire.begin() + 32));
  CHECK(Signature::from_bytes(wire) == sig);

  CHECK(code_of([&] { Signature::from_bytes(ByteView(wire.data(), 63)); }) ==
        ErrorCode::MalformedSignature);
  auto bad = wire;
  std::fill(bad.begin() + 32, bad.end(), 0xFF);
  CHECK(code_of([&] { Signature::from_bytes(bad); }) == ErrorCode::MalformedSignature);
  CHECK_FALSE(Signature::try_from_bytes(bad).has_value());
}

TEST_CASE_FIXTURE(Fixture, "nonces never repeat across 10000 signatures") {
  // R is recoverable by the verifier as e*X + s*G; distinct (s, e) with the
  // same message would imply a repeat only if R repeats, so compare R.
  std::set<Bytes32> seen;
  const Bytes m = {1, 2, 3};
  OpCounter ctr;
  for (int i = 0; i < 10000; ++i) {
    const auto sig = sign(signer, m, rng, ctr);
    seen.insert(X.mul(sig.e).add(GroupElement::generator().mul(sig.s)).encode());
  }
  CHECK(seen.size() == 10000);
}

TEST_CASE_FIXTURE(Fixture, "random 64-byte strings are never accepted") {
  const Bytes m = {'m'};
  std::vector<Signature> sigs;
  int malformed = 0;
  for (int i = 0; i < 100000; ++i) {
    std::array<std::uint8_t, 64> raw{};
    rng.fill(raw);
    if (auto sig = Signature::try_from_bytes(raw)) {
      sigs.push_back(*sig);
    } else {
      ++malformed;
    }
  }
  std::vector<SignedMessage> batch;
  for (const auto& s : sigs) batch.push_back({m, s});
  OpCounter ctr;
  const auto results = verify_many(vctx, batch, ctr);
  CHECK(std::count(results.begin(), results.end(), 1) == 0);
  CHECK(ctr.scalar_mults == 2 * batch.size());
  MESSAGE("decoded " << sigs.size() << " candidate signatures, " << malformed
                     << " rejected at decode");
}

TEST_CASE_FIXTURE(Fixture, "parallel and serial batch verification agree") {
  std::vector<Bytes> msgs(300);
  std::vector<SignedMessage> batch;
  OpCounter ctr;
  for (std::size_t i = 0; i < msgs.size(); ++i) {
    msgs[i] = Bytes(16);
    rng.fill(msgs[i]);
    auto sig = sign(signer, msgs[i], rng, ctr);
    if (i % 3 == 0) sig.e = sig.e + Scalar::from_u64(1);
    batch.push_back({msgs[i], sig});
  }
  OpCounter c1, c2;
  const auto par = verify_many(vctx, batch, c1);
  const auto ser = verify_many_serial(vctx, batch, c2);
  CHECK(par == ser);
  CHECK(c1.scalar_mults == c2.scalar_mults);
  for (std::size_t i = 0; i < par.size(); ++i) CHECK(par[i] == (i % 3 == 0 ? 0 : 1));
}

TEST_CASE_FIXTURE(Fixture, "detached signature file") {
  OpCounter ctr;
  const SignatureFile file{signer.keypair.record.id, sign(signer, as_bytes("doc"), rng, ctr)};
  const Bytes bytes = file.encode();
  CHECK(bytes.size() == 8 + 1 + 1 + 7 + 64);
  CHECK(std::string(bytes.begin(), bytes.begin() + 8) == "IODCSIG1");
  const auto back = SignatureFile::decode(bytes);
  CHECK(back.signer_id == file.signer_id);
  CHECK(back.sig == file.sig);
  CHECK(back.encode() == bytes);

  Bytes bad = bytes;
  bad[0] = 'X';
  CHECK(code_of([&] { SignatureFile::decode(bad); }) == ErrorCode::BadMagic);
  CHECK(code_of([&] { SignatureFile::decode(ByteView(bytes.data(), bytes.size() - 1)); }) ==
        ErrorCode::TruncatedFile);
}
