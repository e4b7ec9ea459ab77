#pragma once

// Command-line front end. run_command never touches the process streams:
// everything it would print comes back in the outcome, which keeps the whole
// CLI testable in-process.
//
// Exit codes: 0 ok, 1 crypto failure, 2 usage, 3 I/O.

#include <filesystem>
#include <string>
#include <vector>

#include "iodc/bytes.hpp"

namespace iodc {

struct CommandOutcome {
  int exit_code = 0;
  std::string stdout_payload;
  std::string stderr_diagnostics;
};

CommandOutcome run_command(const std::vector<std::string>& argv);

namespace cli {

// Throws IoError when the file cannot be read.
Bytes read_file(const std::filesystem::path& path);

// Write to a temporary sibling, fsync, then rename over the target. Secret
// files get mode 0600.
void write_file_atomic(const std::filesystem::path& path, ByteView data, bool secret);

// Key directory layout.
struct Home {
  std::filesystem::path root;

  std::filesystem::path kgc_secret() const { return root / "kgc.key"; }
  std::filesystem::path system_public() const { return root / "system.pub"; }
  std::filesystem::path drone_secret(const std::string& id) const { return root / (id + ".key"); }
  std::filesystem::path identity(const std::string& id) const { return root / (id + ".id"); }
  std::filesystem::path sign_table(const std::string& id) const { return root / (id + ".bpv"); }
  std::filesystem::path send_table(const std::string& to) const {
    return root / ("to-" + to + ".dbpv");
  }
};

// Identities used as file names must be [A-Za-z0-9._-]{1,255} and must not
// start with a dot. Throws Usage otherwise.
void check_cli_identity(const std::string& id);

}  // namespace cli
}  // namespace iodc
