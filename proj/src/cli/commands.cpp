#include <cstdlib>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "iodc/bench.hpp"
#include "iodc/cli.hpp"
#include "iodc/encrypt.hpp"
#include "iodc/error.hpp"
#include "iodc/keyfiles.hpp"
#include "iodc/sign.hpp"

namespace iodc {
namespace {
namespace fs = std::filesystem;
using nlohmann::json;

struct Options {
  std::string home;
  bool json = false;
  std::optional<std::uint64_t> test_seed;
  bool insecure_test = false;
  bool unsafe_params = false;

  bool force = false;
  std::string id, to, key_path, in, out, sig_path, table_path, record_path;
  bool designated = false;
  std::string params = "standard";
  std::vector<std::string> pair;

  std::string profile, op = "all";
  std::size_t iterations = 100;
  std::size_t message_len = 32;
  std::optional<double> voltage, current, clock;
  bool reference = false;
};

struct Session {
  const Options& opt;
  cli::Home home;
  std::unique_ptr<Rng> rng;
  std::ostringstream out;

  ParamPolicy policy() const {
    return opt.unsafe_params ? ParamPolicy::Unsafe : ParamPolicy::Supported;
  }

  void emit(const json& j, const std::string& text) {
    if (opt.json) {
      out << j.dump() << '\n';
    } else {
      out << text << '\n';
    }
  }

  GroupElement system_public() const {
    return decode_system_public(cli::read_file(home.system_public()));
  }
  SelfCertKeypair drone(const std::string& id) const {
    cli::check_cli_identity(id);
    return decode_drone_secret(cli::read_file(home.drone_secret(id)));
  }
  IdentityRecord identity(const std::string& id) const {
    cli::check_cli_identity(id);
    return decode_identity_file(cli::read_file(home.identity(id)));
  }
};

[[noreturn]] void usage(const std::string& msg) { throw Error(ErrorCode::Usage, msg); }

BpvParams parse_params(const std::string& name) {
  if (name == "standard") return BpvParams::standard();
  if (name == "large") return BpvParams::large();
  usage("--params must be 'standard' (k=256, v=28) or 'large' (k=1024, v=18)");
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::IoError:
      return 3;
    case ErrorCode::Usage:
    case ErrorCode::UnknownOp:
    case ErrorCode::InvalidMeasurement:
    case ErrorCode::InvalidParams:
      return 2;
    default:
      return 1;
  }
}

void cmd_kgc_init(Session& s) {
  if (!s.opt.force && fs::exists(s.home.kgc_secret()))
    usage("KGC key already exists at " + s.home.kgc_secret().string() + " (use --force)");
  std::error_code ec;
  fs::create_directories(s.home.root, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + s.home.root.string());
  const KgcKeypair kgc = kgc_setup(*s.rng);
  cli::write_file_atomic(s.home.kgc_secret(), encode_kgc_secret(kgc), true);
  cli::write_file_atomic(s.home.system_public(), encode_system_public(kgc.D), false);
  const auto D = to_hex(kgc.D.encode());
  s.emit({{"system_public", D}, {"path", s.home.system_public().string()}},
         "system public key D = " + D + "\nwrote " + s.home.kgc_secret().string() + " and " +
             s.home.system_public().string());
}

void cmd_kgc_issue(Session& s) {
  cli::check_cli_identity(s.opt.id);
  const KgcKeypair kgc = decode_kgc_secret(cli::read_file(s.home.kgc_secret()));
  const SelfCertKeypair key = aq_kg(kgc, as_bytes(s.opt.id), *s.rng);
  cli::write_file_atomic(s.home.drone_secret(s.opt.id), encode_drone_secret(key, kgc.D), true);
  cli::write_file_atomic(s.home.identity(s.opt.id), encode_identity_file(key.record), false);
  const auto U = to_hex(key.record.U.encode());
  s.emit({{"id", s.opt.id}, {"U", U}, {"key", s.home.drone_secret(s.opt.id).string()}},
         "issued " + s.opt.id + ": U = " + U + "\nwrote " +
             s.home.drone_secret(s.opt.id).string() + " and " +
             s.home.identity(s.opt.id).string());
}

void cmd_keyver(Session& s) {
  SelfCertKeypair key;
  if (!s.opt.key_path.empty()) {
    key = decode_drone_secret(cli::read_file(s.opt.key_path));
  } else if (!s.opt.id.empty()) {
    key = s.drone(s.opt.id);
  } else {
    usage("keyver needs --id or --key");
  }
  const GroupElement D = s.system_public();
  const bool ok = key_ver(key.record, key.x, D) &&
                  (!key.cached_xD || *key.cached_xD == D.mul(key.x));
  if (!ok)
    throw Error(ErrorCode::KeyVerFailed,
                "key for '" + key.record.id_string() + "' does not verify under this system key");
  s.emit({{"id", key.record.id_string()}, {"keyver", true}}, "key for " + key.record.id_string() + " verifies");
}

void cmd_table_gen(Session& s) {
  const BpvParams params = parse_params(s.opt.params);
  OpCounter ctr;
  Bytes file;
  fs::path path;
  if (s.opt.designated) {
    if (s.opt.to.empty()) usage("table gen --designated needs --to <recipient>");
    const IdentityRecord receiver = s.identity(s.opt.to);
    const SenderContext ctx = enc_kg_sender(receiver, s.system_public(), params, *s.rng, ctr);
    file = serialize_table(ctx.table);
    path = s.opt.out.empty() ? s.home.send_table(s.opt.to) : fs::path(s.opt.out);
  } else {
    if (s.opt.id.empty()) usage("table gen needs --id <signer> or --designated --to <recipient>");
    cli::check_cli_identity(s.opt.id);
    file = serialize_table(bpv_offline(params, *s.rng, ctr));
    path = s.opt.out.empty() ? s.home.sign_table(s.opt.id) : fs::path(s.opt.out);
  }
  cli::write_file_atomic(path, file, true);
  s.emit({{"path", path.string()}, {"k", params.k}, {"v", params.v},
          {"scalar_mults", ctr.scalar_mults}, {"bytes", file.size()}},
         "wrote " + path.string() + " (k=" + std::to_string(params.k) +
             ", v=" + std::to_string(params.v) + ", " + std::to_string(ctr.scalar_mults) +
             " scalar mults)");
}

void cmd_sign(Session& s) {
  const SelfCertKeypair key = s.drone(s.opt.id);
  const fs::path table_path =
      s.opt.table_path.empty() ? s.home.sign_table(s.opt.id) : fs::path(s.opt.table_path);
  SignerContext ctx{key, deserialize_standard_table(cli::read_file(table_path), {s.policy(), false})};
  const Bytes message = cli::read_file(s.opt.in);
  OpCounter ctr;
  const SignatureFile sf{key.record.id, sign(ctx, message, *s.rng, ctr)};
  const fs::path out = s.opt.out.empty() ? fs::path(s.opt.in + ".sig") : fs::path(s.opt.out);
  cli::write_file_atomic(out, sf.encode(), false);
  s.emit({{"signature", out.string()}, {"signer", s.opt.id}, {"scalar_mults", ctr.scalar_mults},
          {"point_adds", ctr.point_adds}},
         "wrote " + out.string());
}

void cmd_verify(Session& s) {
  const fs::path sig_path = s.opt.sig_path.empty() ? fs::path(s.opt.in + ".sig") : fs::path(s.opt.sig_path);
  const SignatureFile sf = SignatureFile::decode(cli::read_file(sig_path));
  const std::string signer(sf.signer_id.begin(), sf.signer_id.end());
  const IdentityRecord record = s.opt.record_path.empty()
                                    ? s.identity(signer)
                                    : decode_identity_file(cli::read_file(s.opt.record_path));
  if (record.id != sf.signer_id)
    throw Error(ErrorCode::VerifyFailed, "signature names '" + signer + "', record is for '" +
                                             record.id_string() + "'");
  const Bytes message = cli::read_file(s.opt.in);
  OpCounter ctr;
  if (!verify(VerifierContext::make(record, s.system_public()), message, sf.sig, ctr))
    throw Error(ErrorCode::VerifyFailed, "signature by '" + signer + "' does not verify");
  s.emit({{"signer", signer}, {"valid", true}}, "good signature by " + signer);
}

void cmd_encrypt(Session& s) {
  const IdentityRecord receiver = s.identity(s.opt.to);
  const GroupElement D = s.system_public();
  const fs::path table_path =
      s.opt.table_path.empty() ? s.home.send_table(s.opt.to) : fs::path(s.opt.table_path);
  std::optional<SenderContext> ctx;
  OpCounter setup;
  if (fs::exists(table_path)) {
    ctx = bind_sender(
        deserialize_designated_table(cli::read_file(table_path), {s.policy(), false}), receiver, D);
  } else {
    // No table yet: build and keep one, this is the offline phase.
    ctx = enc_kg_sender(receiver, D, parse_params(s.opt.params), *s.rng, setup);
    cli::write_file_atomic(table_path, serialize_table(ctx->table), true);
  }
  const Bytes message = cli::read_file(s.opt.in);
  OpCounter ctr;
  const Ciphertext ct = encrypt(*ctx, message, *s.rng, ctr);
  const fs::path out = s.opt.out.empty() ? fs::path(s.opt.in + ".enc") : fs::path(s.opt.out);
  cli::write_file_atomic(out, ct.encode_file(), false);
  s.emit({{"ciphertext", out.string()}, {"to", s.opt.to}, {"wire_bytes", ct.wire_size()},
          {"scalar_mults", ctr.scalar_mults}, {"point_adds", ctr.point_adds}},
         "wrote " + out.string() + " for " + s.opt.to);
}

void cmd_decrypt(Session& s) {
  const SelfCertKeypair key = s.drone(s.opt.id);
  const Ciphertext ct = Ciphertext::decode_file(cli::read_file(s.opt.in));
  OpCounter ctr;
  const Bytes m = decrypt(key, ct, ctr);
  if (s.opt.out.empty()) {
    s.out.write(reinterpret_cast<const char*>(m.data()), static_cast<std::streamsize>(m.size()));
    return;
  }
  cli::write_file_atomic(s.opt.out, m, false);
  s.emit({{"plaintext", s.opt.out}, {"bytes", m.size()}}, "wrote " + s.opt.out);
}

SelfCertKeypair load_party(Session& s, const std::string& arg) {
  if (fs::exists(arg)) return decode_drone_secret(cli::read_file(arg));
  return s.drone(arg);
}

void cmd_exchange(Session& s) {
  const GroupElement D = s.system_public();
  const SelfCertKeypair a = load_party(s, s.opt.pair.at(0));
  const SelfCertKeypair b = load_party(s, s.opt.pair.at(1));
  for (const auto* k : {&a, &b}) {
    if (!key_ver(k->record, k->x, D))
      throw Error(ErrorCode::KeyVerFailed,
                  "key for '" + k->record.id_string() + "' was not issued under this system key");
  }
  OpCounter ctr;
  const HangInitiation ia = aq_hang_initiate(a, *s.rng, ctr);
  const HangInitiation ib = aq_hang_initiate(b, *s.rng, ctr);
  const SessionKey ka = aq_hang_finalize(a, ia, ib.message, D, ctr);
  const SessionKey kb = aq_hang_finalize(b, ib, ia.message, D, ctr);
  const auto fa = to_hex(session_fingerprint(ka));
  const auto fb = to_hex(session_fingerprint(kb));
  if (fa != fb) throw Error(ErrorCode::KeyVerFailed, "the two sides derived different session keys");
  s.emit({{"a", a.record.id_string()}, {"b", b.record.id_string()}, {"fingerprint_a", fa},
          {"fingerprint_b", fb}, {"match", true}},
         a.record.id_string() + " session fingerprint: " + fa + "\n" + b.record.id_string() +
             " session fingerprint: " + fb + "\nmatch");
}

void cmd_bench(Session& s) {
  const Options& o = s.opt;
  std::optional<DeviceProfile> profile;
  if (o.profile == "host") {
    if (!o.voltage || !o.current || !o.clock)
      usage("--profile host needs --voltage, --current and --clock");
    profile = DeviceProfile::host(*o.voltage, *o.current, *o.clock);
  } else {
    if (o.voltage || o.current || o.clock) usage("--voltage/--current/--clock apply to --profile host");
    profile = profile_by_name(o.profile);
  }

  if (o.reference) {
    std::vector<EmbeddedReferenceRow> rows;
    for (const auto& row : embedded_reference_rows()) {
      if (o.profile == "host" || row.platform == o.profile) rows.push_back(row);
    }
    if (rows.empty()) usage("no embedded reference rows for profile " + o.profile);
    if (o.json) {
      for (const auto& row : rows)
        s.out << to_json_line(row, project_energy_cycles(profile_by_name(row.platform), row.cycles))
              << '\n';
    } else {
      s.out << format_reference_table(rows);
    }
    return;
  }

  std::vector<BenchOp> ops;
  if (o.op == "all") {
    ops = all_bench_ops();
  } else {
    ops.push_back(parse_bench_op(o.op));
  }
  BenchConfig cfg{parse_params(o.params), o.message_len};
  std::vector<BenchResult> results;
  for (auto op : ops) {
    results.push_back(run_bench(op, o.iterations, *s.rng, cfg));
    if (o.json)
      s.out << to_json_line(results.back(),
                            project_energy_seconds(*profile, results.back().median_seconds))
            << '\n';
  }
  if (!o.json) s.out << format_bench_table(results, profile);
}

}  // namespace

CommandOutcome run_command(const std::vector<std::string>& argv) {
  Options o;
  if (const char* env = std::getenv("IODCRYPT_HOME")) o.home = env;

  CLI::App app{"Self-certified keys, BPV-accelerated signatures and encryption"};
  app.name(argv.empty() ? "iodcrypt" : argv.front());
  app.require_subcommand(1);
  app.add_option("--home", o.home, "Key directory (default: $IODCRYPT_HOME)");
  app.add_flag("--json", o.json, "One JSON object per line");
  app.add_option("--test-seed", o.test_seed, "Deterministic RNG seed (needs --insecure-test)");
  app.add_flag("--insecure-test", o.insecure_test, "Allow --test-seed");
  app.add_flag("--unsafe-params", o.unsafe_params, "Accept tables with unsupported (k, v)");

  auto* kgc = app.add_subcommand("kgc", "Key generation center");
  kgc->require_subcommand(1);
  auto* kgc_init = kgc->add_subcommand("init", "Create the system key pair");
  kgc_init->add_flag("--force", o.force, "Overwrite an existing KGC key");
  auto* kgc_issue = kgc->add_subcommand("issue", "Issue a self-certified key");
  kgc_issue->add_option("--id", o.id, "Identity")->required();

  auto* keyver = app.add_subcommand("keyver", "Check a drone key against the system key");
  keyver->add_option("--id", o.id, "Identity in the key directory");
  keyver->add_option("--key", o.key_path, "Drone key file");

  auto* table = app.add_subcommand("table", "Precomputation tables");
  table->require_subcommand(1);
  auto* table_gen = table->add_subcommand("gen", "Build a BPV table");
  table_gen->add_option("--id", o.id, "Signer identity (standard table)");
  table_gen->add_flag("--designated", o.designated, "Designated table for encryption");
  table_gen->add_option("--to", o.to, "Recipient identity (designated table)");
  table_gen->add_option("--params", o.params, "standard or large")->capture_default_str();
  table_gen->add_option("--out", o.out, "Output path");

  auto* sign_cmd = app.add_subcommand("sign", "Sign a file");
  sign_cmd->add_option("--id", o.id, "Signer identity")->required();
  sign_cmd->add_option("--in", o.in, "File to sign")->required();
  sign_cmd->add_option("--out", o.out, "Signature path (default <in>.sig)");
  sign_cmd->add_option("--table", o.table_path, "BPV table (default <home>/<id>.bpv)");

  auto* verify_cmd = app.add_subcommand("verify", "Verify a detached signature");
  verify_cmd->add_option("--in", o.in, "Signed file")->required();
  verify_cmd->add_option("--sig", o.sig_path, "Signature path (default <in>.sig)");
  verify_cmd->add_option("--record", o.record_path, "Signer identity file");

  auto* encrypt_cmd = app.add_subcommand("encrypt", "Encrypt a file to an identity");
  encrypt_cmd->add_option("--to", o.to, "Recipient identity")->required();
  encrypt_cmd->add_option("--in", o.in, "Plaintext file")->required();
  encrypt_cmd->add_option("--out", o.out, "Ciphertext path (default <in>.enc)");
  encrypt_cmd->add_option("--table", o.table_path, "Designated table");
  encrypt_cmd->add_option("--params", o.params, "Parameters if a table must be built")
      ->capture_default_str();

  auto* decrypt_cmd = app.add_subcommand("decrypt", "Decrypt a file");
  decrypt_cmd->add_option("--id", o.id, "Recipient identity")->required();
  decrypt_cmd->add_option("--in", o.in, "Ciphertext file")->required();
  decrypt_cmd->add_option("--out", o.out, "Plaintext path (default stdout)");

  auto* exchange = app.add_subcommand("exchange", "Run both sides of an AQ-Hang exchange");
  exchange->add_option("keys", o.pair, "Two drone key files or identities")
      ->required()
      ->expected(2);

  auto* bench = app.add_subcommand("bench", "Time operations and project energy");
  bench->add_option("--profile", o.profile, "avr, arm or host")
      ->required()
      ->check(CLI::IsMember({"avr", "arm", "host"}));
  bench->add_option("--op", o.op, "Operation name or 'all'")->capture_default_str();
  bench->add_option("--iterations", o.iterations, "Timed iterations (>= 10)")->capture_default_str();
  bench->add_option("--message-len", o.message_len, "Message bytes")->capture_default_str();
  bench->add_option("--params", o.params, "standard or large")->capture_default_str();
  bench->add_option("--voltage", o.voltage, "Volts (host profile)");
  bench->add_option("--current", o.current, "Amperes (host profile)");
  bench->add_option("--clock", o.clock, "Hertz (host profile)");
  bench->add_flag("--reference", o.reference, "Project the embedded cycle counts instead");

  CommandOutcome outcome;
  std::ostringstream err;

  std::vector<std::string> args(argv.size() > 1 ? argv.begin() + 1 : argv.end(), argv.end());
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    std::ostringstream help;
    app.exit(e, help, err);
    outcome.stdout_payload = help.str();
    return outcome;
  } catch (const CLI::CallForAllHelp& e) {
    std::ostringstream help;
    app.exit(e, help, err);
    outcome.stdout_payload = help.str();
    return outcome;
  } catch (const CLI::ParseError& e) {
    outcome.exit_code = 2;
    outcome.stderr_diagnostics = "Usage: " + std::string(e.what()) + "\n";
    return outcome;
  }

  try {
    if (o.test_seed && !o.insecure_test) usage("--test-seed requires --insecure-test");
    if (o.home.empty() && !bench->parsed()) usage("no key directory: pass --home or set IODCRYPT_HOME");

    Session s{o, cli::Home{o.home}, nullptr, {}};
    if (o.test_seed) {
      s.rng = std::make_unique<SeededRng>(*o.test_seed);
    } else {
      s.rng = std::make_unique<SystemRng>();
    }

    if (kgc_init->parsed()) {
      cmd_kgc_init(s);
    } else if (kgc_issue->parsed()) {
      cmd_kgc_issue(s);
    } else if (keyver->parsed()) {
      cmd_keyver(s);
    } else if (table_gen->parsed()) {
      cmd_table_gen(s);
    } else if (sign_cmd->parsed()) {
      cmd_sign(s);
    } else if (verify_cmd->parsed()) {
      cmd_verify(s);
    } else if (encrypt_cmd->parsed()) {
      cmd_encrypt(s);
    } else if (decrypt_cmd->parsed()) {
      cmd_decrypt(s);
    } else if (exchange->parsed()) {
      cmd_exchange(s);
    } else if (bench->parsed()) {
      cmd_bench(s);
    }
    outcome.stdout_payload = s.out.str();
  } catch (const Error& e) {
    outcome.exit_code = exit_code_for(e.code());
    outcome.stderr_diagnostics = std::string(e.name()) + ": " + e.what() + "\n";
  } catch (const std::filesystem::filesystem_error& e) {
    outcome.exit_code = 3;
    outcome.stderr_diagnostics = std::string("IoError: ") + e.what() + "\n";
  } catch (const std::exception& e) {
    outcome.exit_code = 1;
    outcome.stderr_diagnostics = std::string("InternalError: ") + e.what() + "\n";
  }
  return outcome;
}

}  // namespace iodc
