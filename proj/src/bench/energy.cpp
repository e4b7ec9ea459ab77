#include <cmath>
#include <string>

#include "iodc/bench.hpp"
#include "iodc/error.hpp"

namespace iodc {

DeviceProfile DeviceProfile::avr() { return {"avr", 5.0, 0.020, 16e6}; }
DeviceProfile DeviceProfile::arm() { return {"arm", 3.3, 0.040, 168e6}; }

DeviceProfile DeviceProfile::host(double voltage, double current, double clock_hz) {
  DeviceProfile p{"host", voltage, current, clock_hz};
  p.validate();
  return p;
}

void DeviceProfile::validate() const {
  auto positive = [](double x) { return std::isfinite(x) && x > 0; };
  if (!positive(voltage) || !positive(current) || !positive(clock_hz))
    throw Error(ErrorCode::InvalidMeasurement,
                "device profile '" + name + "' needs positive voltage, current and clock");
}

DeviceProfile profile_by_name(std::string_view name) {
  if (name == "avr") return DeviceProfile::avr();
  if (name == "arm") return DeviceProfile::arm();
  throw Error(ErrorCode::InvalidMeasurement,
              "unknown built-in profile '" + std::string(name) + "' (host needs explicit V/I/clock)");
}

EnergyReport project_energy_seconds(const DeviceProfile& profile, double seconds) {
  profile.validate();
  if (!std::isfinite(seconds) || seconds <= 0)
    throw Error(ErrorCode::InvalidMeasurement, "execution time must be positive");
  return {profile, seconds, profile.voltage * profile.current * seconds};
}

EnergyReport project_energy_cycles(const DeviceProfile& profile, double cycles) {
  profile.validate();
  if (!std::isfinite(cycles) || cycles <= 0)
    throw Error(ErrorCode::InvalidMeasurement, "cycle count must be positive");
  return project_energy_seconds(profile, cycles / profile.clock_hz);
}

const std::vector<EmbeddedReferenceRow>& embedded_reference_rows() {
  static const std::vector<EmbeddedReferenceRow> rows = {
      {"avr", "AQ", 6'940'000, 32, "32", 43.38},
      {"avr", "BPV-AQ-Hang", 9'140'000, 16416, "32", 57.14},
      {"avr", "BPV-SC-Schnorr.Sig", 2'490'000, 16416, "64", 15.57},
      {"avr", "BPV-SC-Schnorr.Ver", 8'310'000, 32, "64", 51.94},
      {"avr", "DBPV-SC-ECIES.Enc", 4'290'000, 24608, "32 + |c| + |MAC|", 26.80},
      {"avr", "DBPV-SC-ECIES.Dec", 6'980'000, 32, "32 + |c| + |MAC|", 43.61},
      {"arm", "AQ", 556'000, 32, "32", 0.44},
      {"arm", "BPV-AQ-Hang", 764'000, 16416, "32", 0.60},
      {"arm", "BPV-SC-Schnorr.Sig", 302'000, 16416, "64", 0.24},
      {"arm", "BPV-SC-Schnorr.Ver", 695'000, 32, "64", 0.55},
      {"arm", "DBPV-SC-ECIES.Enc", 374'000, 24608, "32 + |c| + |MAC|", 0.29},
      {"arm", "DBPV-SC-ECIES.Dec", 570'000, 32, "32 + |c| + |MAC|", 0.45},
  };
  return rows;
}

}  // namespace iodc
