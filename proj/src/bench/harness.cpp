#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <memory>
#include <sstream>

#include <json.hpp>

#include "iodc/bench.hpp"
#include "iodc/encrypt.hpp"
#include "iodc/error.hpp"
#include "iodc/selfcert.hpp"
#include "iodc/sign.hpp"

namespace iodc {
namespace {

struct OpSpec {
  BenchOp op;
  std::string_view name;
};

constexpr OpSpec kOps[] = {
    {BenchOp::BpvOnline, "bpv_online"},
    {BenchOp::DbpvOnline, "dbpv_online"},
    {BenchOp::Sign, "sign"},
    {BenchOp::Verify, "verify"},
    {BenchOp::ReferenceSign, "reference_sign"},
    {BenchOp::Encrypt, "encrypt"},
    {BenchOp::Decrypt, "decrypt"},
    {BenchOp::AqShared, "aq_shared"},
    {BenchOp::AqHang, "aq_hang"},
};

using Call = std::function<void(OpCounter&)>;

// Everything one benchmark needs, built once outside the timed region.
struct Fixture {
  Call call;
  std::size_t memory_bytes = 0;
  std::string bandwidth;
};

Fixture make_fixture(BenchOp op, Rng& rng, const BenchConfig& cfg) {
  OpCounter setup;
  const KgcKeypair kgc = kgc_setup(rng);
  const auto alice = std::make_shared<SelfCertKeypair>(aq_kg(kgc, as_bytes("drone-a"), rng));
  const auto bob = std::make_shared<SelfCertKeypair>(aq_kg(kgc, as_bytes("zsp-b"), rng));
  const auto message = std::make_shared<Bytes>(cfg.message_len);
  rng.fill(*message);
  const std::size_t key_only = kScalarLen;
  const std::string ct_bandwidth =
      "32 + " + std::to_string(cfg.message_len) + " + 16 = " +
      std::to_string(kCiphertextOverhead + cfg.message_len);

  switch (op) {
    case BenchOp::BpvOnline: {
      auto table = std::make_shared<PrecompTable>(bpv_offline(cfg.params, rng, setup));
      return {[table, &rng](OpCounter& c) { bpv_online(*table, rng, c); },
              table->entry_payload_bytes(), "-"};
    }
    case BenchOp::DbpvOnline: {
      auto table = std::make_shared<DesignatedTable>(
          dbpv_offline(cfg.params, reconstruct_pub(bob->record, kgc.D),
                       owner_binding(bob->record), rng, setup));
      return {[table, &rng](OpCounter& c) { dbpv_online(*table, rng, c); },
              table->entry_payload_bytes(), "-"};
    }
    case BenchOp::Sign: {
      auto ctx = std::make_shared<SignerContext>(
          SignerContext{*alice, bpv_offline(cfg.params, rng, setup)});
      return {[ctx, message, &rng](OpCounter& c) { sign(*ctx, *message, rng, c); },
              ctx->memory_footprint(), "64"};
    }
    case BenchOp::Verify: {
      auto ctx = std::make_shared<SignerContext>(
          SignerContext{*alice, bpv_offline(cfg.params, rng, setup)});
      auto vctx = std::make_shared<VerifierContext>(VerifierContext::make(alice->record, kgc.D));
      const Signature sig = sign(*ctx, *message, rng, setup);
      return {[vctx, message, sig](OpCounter& c) {
                if (!verify(*vctx, *message, sig, c))
                  throw Error(ErrorCode::VerifyFailed, "benchmark signature rejected");
              },
              key_only, "64"};
    }
    case BenchOp::ReferenceSign:
      return {[alice, message, &rng](OpCounter& c) { reference_sign(alice->x, *message, rng, c); },
              key_only, "64"};
    case BenchOp::Encrypt: {
      auto ctx = std::make_shared<SenderContext>(
          enc_kg_sender(bob->record, kgc.D, cfg.params, rng, setup));
      return {[ctx, message, &rng](OpCounter& c) { encrypt(*ctx, *message, rng, c); },
              ctx->memory_footprint(), ct_bandwidth};
    }
    case BenchOp::Decrypt: {
      SenderContext ctx = enc_kg_sender(bob->record, kgc.D, cfg.params, rng, setup);
      auto ct = std::make_shared<Ciphertext>(encrypt(ctx, *message, rng, setup));
      return {[bob, ct](OpCounter& c) { decrypt(*bob, *ct, c); }, key_only, ct_bandwidth};
    }
    case BenchOp::AqShared:
      return {[alice, bob, D = kgc.D](OpCounter& c) { aq_shared_static(*alice, bob->record, D, c); },
              key_only, "32"};
    case BenchOp::AqHang: {
      auto table = std::make_shared<PrecompTable>(bpv_offline(cfg.params, rng, setup));
      OpCounter scratch;
      const auto peer = std::make_shared<HangInitiation>(aq_hang_initiate(*bob, rng, scratch));
      return {[alice, table, peer, D = kgc.D, &rng](OpCounter& c) {
                const auto mine = aq_hang_initiate(*alice, rng, c, table.get());
                aq_hang_finalize(*alice, mine, peer->message, D, c);
              },
              table->entry_payload_bytes() + kScalarLen, "32"};
    }
  }
  throw Error(ErrorCode::UnknownOp, "unhandled benchmark op");
}

std::string fmt_double(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

}  // namespace

BenchOp parse_bench_op(std::string_view name) {
  for (const auto& spec : kOps) {
    if (spec.name == name) return spec.op;
  }
  throw Error(ErrorCode::UnknownOp, "unknown benchmark op '" + std::string(name) + "'");
}

std::string_view bench_op_name(BenchOp op) {
  for (const auto& spec : kOps) {
    if (spec.op == op) return spec.name;
  }
  return "?";
}

const std::vector<BenchOp>& all_bench_ops() {
  static const std::vector<BenchOp> ops = [] {
    std::vector<BenchOp> out;
    for (const auto& spec : kOps) out.push_back(spec.op);
    return out;
  }();
  return ops;
}

BenchResult run_bench(BenchOp op, std::size_t iterations, Rng& rng, const BenchConfig& cfg) {
  if (iterations < kMinBenchIterations)
    throw Error(ErrorCode::InvalidMeasurement, "need at least 10 benchmark iterations");
  Fixture fx = make_fixture(op, rng, cfg);

  BenchResult result;
  result.op_name = std::string(bench_op_name(op));
  result.iterations = iterations;
  result.memory_bytes = fx.memory_bytes;
  result.bandwidth = fx.bandwidth;

  for (std::size_t i = 0; i < kBenchWarmup; ++i) {
    OpCounter c;
    fx.call(c);
  }

  std::vector<double> samples;
  samples.reserve(iterations);
  for (std::size_t i = 0; i < iterations; ++i) {
    OpCounter c;
    const auto t0 = std::chrono::steady_clock::now();
    fx.call(c);
    const auto t1 = std::chrono::steady_clock::now();
    samples.push_back(std::chrono::duration<double>(t1 - t0).count());
    if (i == 0) {
      result.scalar_mults = c.scalar_mults;
      result.point_adds = c.point_adds;
    }
  }
  const auto mid = samples.begin() + static_cast<std::ptrdiff_t>(samples.size() / 2);
  std::nth_element(samples.begin(), mid, samples.end());
  double median = *mid;
  if (samples.size() % 2 == 0) median = (median + *std::max_element(samples.begin(), mid)) / 2;
  result.median_seconds = median;
  return result;
}

std::string to_json_line(const BenchResult& r, const std::optional<EnergyReport>& energy) {
  nlohmann::json j = {
      {"op", r.op_name},
      {"iterations", r.iterations},
      {"median_seconds", r.median_seconds},
      {"scalar_mults", r.scalar_mults},
      {"point_adds", r.point_adds},
      {"memory_bytes", r.memory_bytes},
      {"bandwidth", r.bandwidth},
  };
  if (energy) {
    j["profile"] = energy->profile.name;
    j["energy_joules"] = energy->energy_joules;
    j["projected_cycles"] = r.median_seconds * energy->profile.clock_hz;
  }
  return j.dump();
}

std::string to_json_line(const EmbeddedReferenceRow& row, const EnergyReport& energy) {
  nlohmann::json j = {
      {"platform", row.platform},
      {"protocol", row.protocol},
      {"cycles", row.cycles},
      {"time_seconds", energy.time_seconds},
      {"memory_bytes", row.memory_bytes},
      {"bandwidth", row.bandwidth},
      {"energy_mj", energy.energy_joules * 1e3},
      {"reported_energy_mj", row.energy_mj},
  };
  return j.dump();
}

std::string format_bench_table(const std::vector<BenchResult>& rows,
                               const std::optional<DeviceProfile>& profile) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof(line), "%-16s %12s %8s %8s %10s %-22s %14s\n", "op", "time (us)",
                "Emul", "Eadd", "memory", "bandwidth",
                profile ? ("energy (mJ)@" + profile->name).c_str() : "energy (mJ)");
  out << line;
  for (const auto& r : rows) {
    std::string energy = "-";
    if (profile) energy = fmt_double("%.6f", profile->voltage * profile->current * r.median_seconds * 1e3);
    std::snprintf(line, sizeof(line), "%-16s %12.2f %8llu %8llu %10zu %-22s %14s\n",
                  r.op_name.c_str(), r.median_seconds * 1e6,
                  static_cast<unsigned long long>(r.scalar_mults),
                  static_cast<unsigned long long>(r.point_adds), r.memory_bytes,
                  r.bandwidth.c_str(), energy.c_str());
    out << line;
  }
  return out.str();
}

std::string format_reference_table(const std::vector<EmbeddedReferenceRow>& rows) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof(line), "%-5s %-20s %12s %12s %8s %-18s %12s %12s\n", "plat",
                "protocol", "cycles", "time (ms)", "memory", "bandwidth", "energy (mJ)",
                "reported");
  out << line;
  for (const auto& row : rows) {
    const auto e = project_energy_cycles(profile_by_name(row.platform), row.cycles);
    std::snprintf(line, sizeof(line), "%-5s %-20s %12.0f %12.3f %8zu %-18s %12.3f %12.2f\n",
                  std::string(row.platform).c_str(), std::string(row.protocol).c_str(),
                  row.cycles, e.time_seconds * 1e3, row.memory_bytes,
                  std::string(row.bandwidth).c_str(), e.energy_joules * 1e3, row.energy_mj);
    out << line;
  }
  return out.str();
}

}  // namespace iodc
