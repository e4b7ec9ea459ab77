#include <doctest.h>
#include <sys/stat.h>

#include <filesystem>
#include <json.hpp>

#include "iodc/cli.hpp"
#include "iodc/keyfiles.hpp"

using namespace iodc;
namespace fs = std::filesystem;

namespace {

struct TempHome {
  fs::path dir;

  TempHome() {
    std::string tmpl = (fs::temp_directory_path() / "iodc-cli-XXXXXX").string();
    REQUIRE(::mkdtemp(tmpl.data()) != nullptr);
    dir = tmpl;
  }
  ~TempHome() {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }

  CommandOutcome run(std::vector<std::string> args) const {
    args.insert(args.begin(), {"iodcrypt", "--home", (dir / "keys").string()});
    return run_command(args);
  }

  fs::path file(const std::string& name) const { return dir / name; }

  void write(const std::string& name, std::string_view content) const {
    cli::write_file_atomic(file(name), as_bytes(content), false);
  }

  Bytes read(const fs::path& p) const { return cli::read_file(p); }

  void setup_pair() const {
    REQUIRE(run({"kgc", "init"}).exit_code == 0);
    REQUIRE(run({"kgc", "issue", "--id", "drone-7"}).exit_code == 0);
    REQUIRE(run({"kgc", "issue", "--id", "zsp-1"}).exit_code == 0);
  }
};

void flip_byte(const fs::path& p, std::size_t offset) {
  Bytes b = cli::read_file(p);
  REQUIRE(offset < b.size());
  b[offset] ^= 0x01;
  cli::write_file_atomic(p, b, false);
}

bool starts_with(const std::string& s, std::string_view prefix) {
  return s.rfind(prefix, 0) == 0;
}

}  // namespace

TEST_CASE("kgc init, issue and keyver") {
  TempHome h;
  h.setup_pair();
  const auto ok = h.run({"keyver", "--id", "drone-7"});
  CHECK(ok.exit_code == 0);
  CHECK(ok.stdout_payload.find("verifies") != std::string::npos);

  struct stat st{};
  REQUIRE(::stat((h.dir / "keys" / "drone-7.key").c_str(), &st) == 0);
  CHECK((st.st_mode & 0777) == 0600);
  REQUIRE(::stat((h.dir / "keys" / "kgc.key").c_str(), &st) == 0);
  CHECK((st.st_mode & 0777) == 0600);
  for (const auto& entry : fs::directory_iterator(h.dir / "keys"))
    CHECK(entry.path().string().find(".tmp") == std::string::npos);

  CHECK(h.run({"kgc", "init"}).exit_code == 2);

  // Low bit of the first byte of x: still canonical, no longer the right key.
  flip_byte(h.dir / "keys" / "drone-7.key", 8 + 1 + 1 + 7);
  const auto bad = h.run({"keyver", "--id", "drone-7"});
  CHECK(bad.exit_code == 1);
  CHECK(starts_with(bad.stderr_diagnostics, "KeyVerFailed"));
}

TEST_CASE("sign and verify pipeline") {
  TempHome h;
  h.setup_pair();
  h.write("report.txt", "waypoint 12 reached");
  REQUIRE(h.run({"table", "gen", "--id", "drone-7"}).exit_code == 0);
  const auto signed_out = h.run({"sign", "--id", "drone-7", "--in", h.file("report.txt").string()});
  REQUIRE(signed_out.exit_code == 0);
  CHECK(h.run({"verify", "--in", h.file("report.txt").string()}).exit_code == 0);

  flip_byte(h.file("report.txt"), 3);
  const auto bad = h.run({"verify", "--in", h.file("report.txt").string()});
  CHECK(bad.exit_code == 1);
  CHECK(starts_with(bad.stderr_diagnostics, "VerifyFailed"));

  SUBCASE("signing without a table is an I/O error") {
    CHECK(h.run({"sign", "--id", "zsp-1", "--in", h.file("report.txt").string()}).exit_code == 3);
  }
  SUBCASE("a corrupted table is rejected") {
    flip_byte(h.dir / "keys" / "drone-7.bpv", 500);
    const auto r = h.run({"sign", "--id", "drone-7", "--in", h.file("report.txt").string()});
    CHECK(r.exit_code == 1);
    CHECK(starts_with(r.stderr_diagnostics, "IntegrityMismatch"));
  }
}

TEST_CASE("encrypt and decrypt pipeline") {
  TempHome h;
  h.setup_pair();
  const std::string body = "telemetry frame\n\x01\x02\x03";
  h.write("frame.bin", body);
  REQUIRE(h.run({"encrypt", "--to", "zsp-1", "--in", h.file("frame.bin").string()}).exit_code == 0);
  CHECK(fs::exists(h.dir / "keys" / "to-zsp-1.dbpv"));
  const auto ct_size = fs::file_size(h.file("frame.bin.enc"));
  CHECK(ct_size == 8 + 1 + 4 + body.size() + 48);

  const auto dec = h.run({"decrypt", "--id", "zsp-1", "--in", h.file("frame.bin.enc").string()});
  CHECK(dec.exit_code == 0);
  CHECK(dec.stdout_payload == body);

  const auto to_file = h.run({"decrypt", "--id", "zsp-1", "--in", h.file("frame.bin.enc").string(),
                              "--out", h.file("frame.out").string()});
  CHECK(to_file.exit_code == 0);
  CHECK(h.read(h.file("frame.out")) == Bytes(body.begin(), body.end()));

  const auto wrong = h.run({"decrypt", "--id", "drone-7", "--in", h.file("frame.bin.enc").string()});
  CHECK(wrong.exit_code == 1);
  CHECK(starts_with(wrong.stderr_diagnostics, "MacMismatch"));
  CHECK(wrong.stdout_payload.empty());

  flip_byte(h.file("frame.bin.enc"), 8 + 1 + 32 + 4 + 2);
  const auto bad = h.run({"decrypt", "--id", "zsp-1", "--in", h.file("frame.bin.enc").string()});
  CHECK(bad.exit_code == 1);
  CHECK(starts_with(bad.stderr_diagnostics, "MacMismatch"));
  CHECK(bad.stdout_payload.empty());

  // A designated table only works for the identity it was built for.
  const auto mismatch =
      h.run({"encrypt", "--to", "drone-7", "--in", h.file("frame.bin").string(), "--table",
             (h.dir / "keys" / "to-zsp-1.dbpv").string()});
  CHECK(mismatch.exit_code == 1);
  CHECK(starts_with(mismatch.stderr_diagnostics, "OwnerBindingMismatch"));
}

TEST_CASE("explicit designated table generation") {
  TempHome h;
  h.setup_pair();
  const auto r = h.run({"--json", "table", "gen", "--designated", "--to", "zsp-1"});
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.stdout_payload);
  CHECK(j["scalar_mults"] == 512 + 1);
  CHECK(j["bytes"] == 18 + 64 + 256 * 96 + 32);
  CHECK(h.run({"table", "gen", "--designated"}).exit_code == 2);
}

TEST_CASE("exchange demo") {
  TempHome h;
  h.setup_pair();
  const auto first = h.run({"--json", "exchange", "drone-7", "zsp-1"});
  REQUIRE(first.exit_code == 0);
  const auto j1 = nlohmann::json::parse(first.stdout_payload);
  CHECK(j1["fingerprint_a"] == j1["fingerprint_b"]);

  const auto second = h.run({"--json", "exchange", (h.dir / "keys" / "drone-7.key").string(),
                             (h.dir / "keys" / "zsp-1.key").string()});
  REQUIRE(second.exit_code == 0);
  const auto j2 = nlohmann::json::parse(second.stdout_payload);
  CHECK(j2["fingerprint_a"] == j2["fingerprint_b"]);
  CHECK(j2["fingerprint_a"] != j1["fingerprint_a"]);

  TempHome other;
  REQUIRE(other.run({"kgc", "init"}).exit_code == 0);
  REQUIRE(other.run({"kgc", "issue", "--id", "rogue"}).exit_code == 0);
  const auto cross = h.run({"exchange", "drone-7", (other.dir / "keys" / "rogue.key").string()});
  CHECK(cross.exit_code == 1);
  CHECK(starts_with(cross.stderr_diagnostics, "KeyVerFailed"));
}

TEST_CASE("test seeds are opt-in and deterministic") {
  TempHome a, b;
  CHECK(a.run({"--test-seed", "5", "kgc", "init"}).exit_code == 2);
  const auto ra = a.run({"--test-seed", "5", "--insecure-test", "kgc", "init"});
  const auto rb = b.run({"--test-seed", "5", "--insecure-test", "kgc", "init"});
  REQUIRE(ra.exit_code == 0);
  CHECK(a.read(a.dir / "keys" / "system.pub") == b.read(b.dir / "keys" / "system.pub"));
}

TEST_CASE("usage and I/O errors") {
  TempHome h;
  CHECK(h.run({}).exit_code == 2);
  CHECK(h.run({"sign", "--id", "d"}).exit_code == 2);
  CHECK(h.run({"kgc", "issue", "--id", "../escape"}).exit_code == 2);
  CHECK(h.run({"keyver"}).exit_code == 2);
  const auto missing = h.run({"keyver", "--id", "ghost"});
  CHECK(missing.exit_code == 3);
  CHECK(starts_with(missing.stderr_diagnostics, "IoError"));
  CHECK(run_command({"iodcrypt", "--help"}).exit_code == 0);
}

TEST_CASE("bench command") {
  TempHome h;
  const auto r = h.run({"--json", "bench", "--profile", "avr", "--op", "sign", "--iterations", "10"});
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.stdout_payload);
  CHECK(j["op"] == "sign");
  CHECK(j["scalar_mults"] == 0);
  CHECK(j["point_adds"] == 27);
  CHECK(j["memory_bytes"] == 16416);
  CHECK(j["profile"] == "avr");

  const auto ref = h.run({"--json", "bench", "--profile", "avr", "--reference"});
  REQUIRE(ref.exit_code == 0);
  std::size_t lines = 0;
  std::istringstream in(ref.stdout_payload);
  for (std::string line; std::getline(in, line); ++lines) {
    const auto row = nlohmann::json::parse(line);
    CHECK(std::abs(row["energy_mj"].get<double>() - row["reported_energy_mj"].get<double>()) /
              row["reported_energy_mj"].get<double>() <=
          0.02);
  }
  CHECK(lines == 6);

  CHECK(h.run({"bench", "--profile", "host", "--op", "sign"}).exit_code == 2);
  CHECK(h.run({"bench", "--profile", "host", "--op", "sign", "--voltage", "0", "--current", "1",
               "--clock", "1e9"})
            .exit_code == 2);
  CHECK(h.run({"bench", "--profile", "mars"}).exit_code == 2);
  const auto unknown = h.run({"bench", "--profile", "arm", "--op", "warp"});
  CHECK(unknown.exit_code == 2);
  CHECK(starts_with(unknown.stderr_diagnostics, "UnknownOp"));
  CHECK(h.run({"bench", "--profile", "arm", "--op", "sign", "--iterations", "3"}).exit_code == 2);
}

TEST_CASE("key files round-trip through the library codecs") {
  TempHome h;
  h.setup_pair();
  const auto key = decode_drone_secret(h.read(h.dir / "keys" / "drone-7.key"));
  const auto D = decode_system_public(h.read(h.dir / "keys" / "system.pub"));
  CHECK(encode_drone_secret(key, D) == h.read(h.dir / "keys" / "drone-7.key"));
  const auto rec = decode_identity_file(h.read(h.dir / "keys" / "drone-7.id"));
  CHECK(rec.U == key.record.U);
  CHECK(encode_identity_file(rec) == h.read(h.dir / "keys" / "drone-7.id"));
}
