#pragma once

// Host timing harness plus the E = V * I * t energy projection used to map
// cycle counts measured on embedded targets to millijoules.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "iodc/bpv.hpp"
#include "iodc/group.hpp"
#include "iodc/rng.hpp"

namespace iodc {

struct DeviceProfile {
  std::string name;
  double voltage;   // volts
  double current;   // amperes
  double clock_hz;  // hertz

  static DeviceProfile avr();  // ATmega2560: 5 V, 20 mA, 16 MHz
  static DeviceProfile arm();  // STM32F4: 3.3 V, 40 mA, 168 MHz
  static DeviceProfile host(double voltage, double current, double clock_hz);

  // Throws InvalidMeasurement unless every field is strictly positive.
  void validate() const;
};

DeviceProfile profile_by_name(std::string_view name);

struct EnergyReport {
  DeviceProfile profile;
  double time_seconds;
  double energy_joules;  // voltage * current * time_seconds
};

EnergyReport project_energy_cycles(const DeviceProfile& profile, double cycles);
EnergyReport project_energy_seconds(const DeviceProfile& profile, double seconds);

enum class BenchOp {
  BpvOnline,
  DbpvOnline,
  Sign,
  Verify,
  ReferenceSign,
  Encrypt,
  Decrypt,
  AqShared,
  AqHang,
};

// Throws UnknownOp.
BenchOp parse_bench_op(std::string_view name);
std::string_view bench_op_name(BenchOp op);
const std::vector<BenchOp>& all_bench_ops();

struct BenchResult {
  std::string op_name;
  std::size_t iterations = 0;
  double median_seconds = 0;
  std::uint64_t scalar_mults = 0;  // per call
  std::uint64_t point_adds = 0;    // per call
  std::size_t memory_bytes = 0;    // co-stored table + private key, 0 if none
  std::string bandwidth;           // bytes on the wire, as in the cost tables
};

inline constexpr std::size_t kBenchWarmup = 10;
inline constexpr std::size_t kMinBenchIterations = 10;

struct BenchConfig {
  BpvParams params = BpvParams::standard();
  std::size_t message_len = 32;
};

// Single-threaded; iterations must be >= 10 (InvalidMeasurement otherwise).
BenchResult run_bench(BenchOp op, std::size_t iterations, Rng& rng, const BenchConfig& cfg = {});

// Cycle counts, footprints and energies measured on the embedded targets for
// the protocols in this library (AVR at 16 MHz, ARM Cortex-M4 at 168 MHz).
struct EmbeddedReferenceRow {
  std::string_view platform;  // "avr" or "arm"
  std::string_view protocol;
  double cycles;
  std::size_t memory_bytes;
  std::string_view bandwidth;
  double energy_mj;
};

const std::vector<EmbeddedReferenceRow>& embedded_reference_rows();

// Output: one JSON object per line, or an aligned text table.
std::string to_json_line(const BenchResult& r, const std::optional<EnergyReport>& energy);
std::string to_json_line(const EmbeddedReferenceRow& row, const EnergyReport& energy);
std::string format_bench_table(const std::vector<BenchResult>& rows,
                               const std::optional<DeviceProfile>& profile);
std::string format_reference_table(const std::vector<EmbeddedReferenceRow>& rows);

}  // namespace iodc
