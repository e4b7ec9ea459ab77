// End-to-end acceptance run. One PASS/FAIL line per criterion; the exit code
// is the number of failures.

#include <sodium.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "iodc/bench.hpp"
#include "iodc/encrypt.hpp"
#include "iodc/error.hpp"
#include "iodc/keyfiles.hpp"
#include "iodc/sign.hpp"

using namespace iodc;
using boost::multiprecision::cpp_int;

namespace {

struct Verdict {
  bool ok;
  std::string detail;
};

int failures = 0;

void criterion(int n, const char* name, double budget_s, const std::function<Verdict()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("unexpected exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > budget_s) {
    v.ok = false;
    v.detail += " [over time budget]";
  }
  if (!v.ok) ++failures;
  std::printf("%s %2d %-28s %6.2fs  %s\n", v.ok ? "PASS" : "FAIL", n, name, secs, v.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* spec, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), spec, args...);
  return buf;
}

template <typename Fn>
bool throws_code(ErrorCode code, Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}

void flip_bit(Bytes& b, std::size_t bit) { b[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8)); }

double log2_int(const cpp_int& x) {
  const auto msb = boost::multiprecision::msb(x);
  if (msb < 60) return std::log2(static_cast<double>(x));
  const unsigned shift = static_cast<unsigned>(msb) - 60;
  return std::log2(static_cast<double>(static_cast<cpp_int>(x >> shift))) + shift;
}

}  // namespace

int main() {
  ensure_sodium();
  SeededRng rng(20261015);

  criterion(1, "energy-arithmetic", 1, [] {
    double worst = 0;
    int within = 0;
    const auto& rows = embedded_reference_rows();
    for (const auto& row : rows) {
      const auto e = project_energy_cycles(profile_by_name(row.platform), row.cycles);
      const double dev = std::abs(e.energy_joules * 1e3 - row.energy_mj) / row.energy_mj;
      worst = std::max(worst, dev);
      within += dev <= 0.02;
    }
    const auto sig = project_energy_cycles(DeviceProfile::avr(), 2'490'000);
    return Verdict{within == static_cast<int>(rows.size()) && rows.size() == 12,
                   fmt("%d/%zu rows within 2%%, worst %.2f%%; 2,490,000 AVR cycles -> %.2f mJ",
                       within, rows.size(), worst * 100, sig.energy_joules * 1e3)};
  });

  criterion(2, "memory-figures", 1, [&] {
    OpCounter ctr;
    const auto kgc = kgc_setup(rng);
    const auto signer = sign_kg(kgc, as_bytes("drone-1"), BpvParams::standard(), rng, ctr);
    const auto receiver = aq_kg(kgc, as_bytes("zsp-1"), rng);
    const auto sender = enc_kg_sender(receiver.record, kgc.D, BpvParams::standard(), rng, ctr);
    const auto a = signer.memory_footprint(), b = sender.memory_footprint();
    return Verdict{a == 16416 && b == 24608,
                   fmt("BPV signer %zu bytes (expect 16416), DBPV sender %zu bytes (expect 24608)", a, b)};
  });

  criterion(3, "implicit-cert-soundness", 30, [&] {
    const auto kgc = kgc_setup(rng);
    const auto other = kgc_setup(rng);
    int honest = 0, rejected = 0;
    for (int i = 0; i < 1000; ++i) {
      const std::string id = "drone-" + std::to_string(i);
      const auto key = aq_kg(kgc, as_bytes(id), rng);
      honest += key_ver(key.record, key.x, kgc.D);
      auto rec = key.record;
      auto x = key.x;
      auto D = kgc.D;
      switch (i % 4) {
        case 0: x = x + Scalar::from_u64(1 + rng.uniform(1000)); break;
        case 1: rec.U = rec.U.add(GroupElement::generator()); break;
        case 2: rec.id.back() ^= static_cast<std::uint8_t>(1 + rng.uniform(255)); break;
        case 3: D = other.D; break;
      }
      rejected += !key_ver(rec, x, D);
    }
    return Verdict{honest == 1000 && rejected == 1000,
                   fmt("%d/1000 honest keys verify, %d/1000 single-field tampers rejected",
                       honest, rejected)};
  });

  criterion(4, "shared-secret-symmetry", 30, [&] {
    const auto kgc = kgc_setup(rng);
    int symmetric = 0, oracle = 0, cached = 0;
    for (int i = 0; i < 1000; ++i) {
      const auto a = aq_kg(kgc, as_bytes("a"), rng);
      const auto b = aq_kg(kgc, as_bytes("b"), rng);
      OpCounter ctr;
      const auto kab = aq_shared_static(a, b.record, kgc.D, ctr);
      const auto kba = aq_shared_static(b, a.record, kgc.D, ctr);
      auto plain = a;
      plain.cached_xD.reset();
      const auto uncached = aq_shared_static(plain, b.record, kgc.D, ctr);
      symmetric += kab == kba;
      oracle += kab == GroupElement::generator().mul(a.x * b.x);
      cached += kab.encode() == uncached.encode();
    }
    return Verdict{symmetric == 1000 && oracle == 1000 && cached == 1000,
                   fmt("K_ab = K_ba %d/1000, = (x_a x_b)G %d/1000, cached == uncached %d/1000",
                       symmetric, oracle, cached)};
  });

  criterion(5, "signature-oracle-equivalence", 60, [&] {
    OpCounter ctr;
    const auto kgc = kgc_setup(rng);
    const auto signer = sign_kg(kgc, as_bytes("drone-7"), BpvParams::standard(), rng, ctr);
    const auto vctx = VerifierContext::make(signer.keypair.record, kgc.D);
    const auto X = GroupElement::generator().mul(signer.keypair.x);
    int both = 0, tamper_rejected = 0;
    for (int i = 0; i < 1000; ++i) {
      Bytes m(1 + rng.uniform(256));
      rng.fill(m);
      const auto sig = sign(signer, m, rng, ctr);
      both += verify(vctx, m, sig, ctr) && reference_verify(X, m, sig, ctr);
      flip_bit(m, rng.uniform(static_cast<std::uint32_t>(m.size() * 8)));
      tamper_rejected += !verify(vctx, m, sig, ctr);
    }

    // Random 64-byte strings: most fail canonical decoding, the rest go
    // through the verifier.
    const Bytes m = {'m'};
    std::vector<SignedMessage> batch;
    for (int i = 0; i < 100000; ++i) {
      std::array<std::uint8_t, 64> raw{};
      rng.fill(raw);
      if (auto s = Signature::try_from_bytes(raw)) batch.push_back({m, *s});
    }
    const std::size_t decoded = batch.size();
    // Uniform canonical (s, e) pairs as well, so the verifier sees real volume.
    for (int i = 0; i < 10000; ++i) batch.push_back({m, {random_scalar(rng), random_scalar(rng)}});
    const auto results = verify_many(vctx, batch, ctr);
    const auto accepted = std::count(results.begin(), results.end(), 1);
    return Verdict{both == 1000 && tamper_rejected == 1000 && accepted == 0,
                   fmt("%d/1000 verify under both verifiers, %d/1000 tampers rejected, "
                       "%ld accepted of 1e5 random strings (%zu decoded) + 1e4 random scalar pairs",
                       both, tamper_rejected, static_cast<long>(accepted), decoded)};
  });

  criterion(6, "zero-online-emul", 10, [&] {
    OpCounter setup;
    const auto kgc = kgc_setup(rng);
    const auto signer = sign_kg(kgc, as_bytes("drone-7"), BpvParams::standard(), rng, setup);
    const auto vctx = VerifierContext::make(signer.keypair.record, kgc.D);
    const auto receiver = aq_kg(kgc, as_bytes("zsp-1"), rng);
    const auto sender = enc_kg_sender(receiver.record, kgc.D, BpvParams::standard(), rng, setup);
    const std::uint64_t v = BpvParams::standard().v;
    int sign_ok = 0, enc_ok = 0, dec_ok = 0, ver_ok = 0;
    const Bytes m(64, 0x5A);
    for (int i = 0; i < 1000; ++i) {
      OpCounter cs, ce;
      const auto sig = sign(signer, m, rng, cs);
      sign_ok += cs.scalar_mults == 0 && cs.point_adds == v - 1;
      const auto ct = encrypt(sender, m, rng, ce);
      enc_ok += ce.scalar_mults == 0 && ce.point_adds == 2 * (v - 1);
      if (i < 200) {
        OpCounter cd, cv;
        decrypt(receiver, ct, cd);
        dec_ok += cd.scalar_mults == 1;
        verify(vctx, m, sig, cv);
        ver_ok += cv.scalar_mults == 2;
      }
    }
    return Verdict{sign_ok == 1000 && enc_ok == 1000 && dec_ok == 200 && ver_ok == 200,
                   fmt("sign (0, %llu) %d/1000, encrypt (0, %llu) %d/1000, decrypt 1 mult %d/200, "
                       "verify 2 mults %d/200",
                       static_cast<unsigned long long>(v - 1), sign_ok,
                       static_cast<unsigned long long>(2 * (v - 1)), enc_ok, dec_ok, ver_ok)};
  });

  criterion(7, "hybrid-encryption", 60, [&] {
    OpCounter ctr;
    const auto kgc = kgc_setup(rng);
    const auto receiver = aq_kg(kgc, as_bytes("zsp-1"), rng);
    const auto stranger = aq_kg(kgc, as_bytes("zsp-2"), rng);
    const auto sender = enc_kg_sender(receiver.record, kgc.D, BpvParams::standard(), rng, ctr);
    int round_trips = 0, tamper_mac = 0, wrong_mac = 0, overhead_ok = 0;
    for (int i = 0; i < 1000; ++i) {
      Bytes m(i == 0 ? 0 : i == 1 ? 4096 : rng.uniform(4097));
      rng.fill(m);
      const auto ct = encrypt(sender, m, rng, ctr);
      round_trips += decrypt(receiver, ct, ctr) == m;
      overhead_ok += ct.wire().size() - m.size() == 48;

      auto bad = ct;
      Bytes body = bad.c;
      body.insert(body.end(), bad.tag.begin(), bad.tag.end());
      flip_bit(body, rng.uniform(static_cast<std::uint32_t>(body.size() * 8)));
      bad.c.assign(body.begin(), body.end() - kTagLen);
      std::copy(body.end() - kTagLen, body.end(), bad.tag.begin());
      Bytes leaked;
      tamper_mac += throws_code(ErrorCode::MacMismatch, [&] { leaked = decrypt(receiver, bad, ctr); }) &&
                    leaked.empty();
      wrong_mac += throws_code(ErrorCode::MacMismatch, [&] { leaked = decrypt(stranger, ct, ctr); }) &&
                   leaked.empty();
    }
    return Verdict{round_trips == 1000 && tamper_mac == 1000 && wrong_mac == 1000 &&
                       overhead_ok == 1000,
                   fmt("%d/1000 round trips (0-4096 B), %d/1000 bit tampers and %d/1000 wrong "
                       "recipients -> MacMismatch, overhead 48 B %d/1000",
                       round_trips, tamper_mac, wrong_mac, overhead_ok)};
  });

  criterion(8, "desk-scale-speedup", 60, [&] {
    const auto fast = run_bench(BenchOp::Sign, 1000, rng);
    const auto slow = run_bench(BenchOp::ReferenceSign, 1000, rng);
    const double ratio = slow.median_seconds / fast.median_seconds;
    return Verdict{fast.median_seconds < slow.median_seconds && ratio >= 1.2,
                   fmt("sign %.1f us vs reference_sign %.1f us median, ratio %.2fx (need >= 1.2x)",
                       fast.median_seconds * 1e6, slow.median_seconds * 1e6, ratio)};
  });

  criterion(9, "subset-space-accounting", 1, [] {
    auto binom = [](unsigned k, unsigned v) {
      cpp_int num = 1, den = 1;
      for (unsigned i = 0; i < v; ++i) {
        num *= k - i;
        den *= i + 1;
      }
      return cpp_int(num / den);
    };
    const double s = subset_space_bits(BpvParams::standard());
    const double l = subset_space_bits(BpvParams::large());
    const double os = log2_int(binom(256, 28));
    const double ol = log2_int(binom(1024, 18));
    const bool ok = std::abs(s - os) / os <= 1e-6 && std::abs(l - ol) / ol <= 1e-6;
    return Verdict{ok, fmt("log2 C(256,28) = %.6f, log2 C(1024,18) = %.6f (oracle %.6f, %.6f); "
                           "claimed 2^128 -> shortfall %.2f and %.2f bits",
                           s, l, os, ol, 128 - s, 128 - l)};
  });

  criterion(10, "serialization-robustness", 30, [&] {
    OpCounter ctr;
    const auto kgc = kgc_setup(rng);
    const auto drone = aq_kg(kgc, as_bytes("drone-7"), rng);
    const auto receiver = aq_kg(kgc, as_bytes("zsp-1"), rng);
    const auto table = bpv_offline(BpvParams::standard(), rng, ctr);
    const auto sender = enc_kg_sender(receiver.record, kgc.D, BpvParams::standard(), rng, ctr);
    SignerContext signer{drone, table};

    int exact = 0;
    const Bytes t1 = serialize_table(table);
    exact += serialize_table(deserialize_standard_table(t1)) == t1;
    const Bytes t2 = serialize_table(sender.table);
    exact += serialize_table(deserialize_designated_table(t2)) == t2;
    const Bytes k1 = encode_system_public(kgc.D);
    exact += encode_system_public(decode_system_public(k1)) == k1;
    const Bytes k2 = encode_kgc_secret(kgc);
    exact += encode_kgc_secret(decode_kgc_secret(k2)) == k2;
    const Bytes k3 = encode_drone_secret(drone, kgc.D);
    exact += encode_drone_secret(decode_drone_secret(k3), kgc.D) == k3;
    const Bytes k4 = encode_identity_file(drone.record);
    exact += encode_identity_file(decode_identity_file(k4)) == k4;
    const Bytes s1 = SignatureFile{drone.record.id, sign(signer, as_bytes("doc"), rng, ctr)}.encode();
    exact += SignatureFile::decode(s1).encode() == s1;
    const Bytes c1 = encrypt(sender, as_bytes("frame"), rng, ctr).encode_file();
    exact += Ciphertext::decode_file(c1).encode_file() == c1;

    int detected = 0, via_hash = 0;
    for (int i = 0; i < 1000; ++i) {
      Bytes bad = i % 2 ? t1 : t2;
      flip_bit(bad, rng.uniform(static_cast<std::uint32_t>(bad.size() * 8)));
      try {
        deserialize_table(bad);
      } catch (const Error& e) {
        ++detected;
        via_hash += e.code() == ErrorCode::IntegrityMismatch;
      }
    }
    return Verdict{exact == 8 && detected == 1000,
                   fmt("%d/8 formats round-trip bit-exactly; %d/1000 single-bit table corruptions "
                       "detected (%d by the integrity hash)",
                       exact, detected, via_hash)};
  });

  std::printf("%s: %d of 10 criteria failed\n", failures ? "FAILED" : "ALL PASSED", failures);
  return failures;
}
