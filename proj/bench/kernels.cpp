// Serial vs OpenMP timing for the data-parallel kernels: table construction
// and batch verification. Thread count follows OMP_NUM_THREADS.

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <vector>

#include <CLI11.hpp>

#include "iodc/bpv.hpp"
#include "iodc/selfcert.hpp"
#include "iodc/sign.hpp"

using namespace iodc;

namespace {

double median_seconds(int reps, const std::function<void()>& fn) {
  std::vector<double> t;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    t.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  std::sort(t.begin(), t.end());
  return t[t.size() / 2];
}

void row(const char* name, double serial, double parallel) {
  std::printf("%-22s %12.3f %12.3f %8.2fx\n", name, serial * 1e3, parallel * 1e3,
              serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Serial vs OpenMP kernel timings"};
  int reps = 5;
  std::string params_name = "standard";
  std::size_t batch_size = 2000;
  app.add_option("--reps", reps, "Repetitions per kernel")->capture_default_str();
  app.add_option("--params", params_name, "standard or large")->capture_default_str();
  app.add_option("--batch", batch_size, "Signatures per verify batch")->capture_default_str();
  CLI11_PARSE(app, argc, argv);
  const BpvParams params = params_name == "large" ? BpvParams::large() : BpvParams::standard();

  SeededRng rng(1);
  const KgcKeypair kgc = kgc_setup(rng);
  const SelfCertKeypair receiver = aq_kg(kgc, as_bytes("zsp-1"), rng);
  const GroupElement X = reconstruct_pub(receiver.record, kgc.D);
  const Bytes32 binding = owner_binding(receiver.record);

  std::printf("threads: %d, k=%u v=%u, batch=%zu\n", omp_get_max_threads(), params.k, params.v,
              batch_size);
  std::printf("%-22s %12s %12s %9s\n", "kernel", "serial ms", "openmp ms", "speedup");

  OpCounter ctr;
  row("bpv_offline",
      median_seconds(reps, [&] { SeededRng r(2); bpv_offline_serial(params, r, ctr); }),
      median_seconds(reps, [&] { SeededRng r(2); bpv_offline(params, r, ctr); }));
  row("dbpv_offline",
      median_seconds(reps, [&] { SeededRng r(3); dbpv_offline_serial(params, X, binding, r, ctr); }),
      median_seconds(reps, [&] { SeededRng r(3); dbpv_offline(params, X, binding, r, ctr); }));

  const SignerContext signer = sign_kg(kgc, as_bytes("drone-7"), params, rng, ctr);
  const VerifierContext vctx = VerifierContext::make(signer.keypair.record, kgc.D);
  std::vector<Bytes> messages(batch_size, Bytes(32));
  std::vector<SignedMessage> batch;
  for (auto& m : messages) {
    rng.fill(m);
    batch.push_back({m, sign(signer, m, rng, ctr)});
  }
  std::size_t accepted = 0;
  row("verify_many",
      median_seconds(reps, [&] { verify_many_serial(vctx, batch, ctr); }),
      median_seconds(reps, [&] {
        const auto ok = verify_many(vctx, batch, ctr);
        accepted = static_cast<std::size_t>(std::count(ok.begin(), ok.end(), 1));
      }));
  if (accepted != batch.size()) {
    std::fprintf(stderr, "batch verification rejected %zu honest signatures\n",
                 batch.size() - accepted);
    return 1;
  }
  return 0;
}
