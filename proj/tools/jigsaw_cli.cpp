// jigsaw command-line tool: keygen, send, recv, bench, attack-demo.
//
// Exit codes: 0 ok, 2 parse/usage, 3 authentication, 4 protocol.

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "jigsaw/bench.hpp"
#include "jigsaw/endpoint.hpp"
#include "jigsaw/error.hpp"
#include "jigsaw/io.hpp"
#include "jigsaw/keymat.hpp"
#include "jigsaw/simnet.hpp"
#include "jigsaw/state.hpp"
#include "jigsaw/wire.hpp"

namespace fs = std::filesystem;
using namespace jigsaw;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitAuth = 3;
constexpr int kExitProtocol = 4;

constexpr const char* kNotice =
    "NOTICE: research artifact. The scheme has a published known-plaintext break "
    "and is not production cryptography. Packet MACs use HMAC-SHA-1, which is deprecated.";

int exit_code(Errc c) {
  switch (classify(c)) {
    case ErrorClass::auth:
      return kExitAuth;
    case ErrorClass::protocol:
      return kExitProtocol;
    default:
      return kExitParse;
  }
}

struct KeyOpts {
  std::size_t ps = 1024;
  std::size_t k = 7;
  std::string mode = "base";
  std::uint32_t min_part = 1;
  std::string poly;
  std::string seed;
  std::string out;
};

struct SendOpts {
  std::string key, in, out, state, seed;
  bool hold = false;
};

struct RecvOpts {
  std::string key, in, out, state;
  std::size_t window = ReorderBuffer::kDefaultWindow;
};

struct BenchOpts {
  std::string k_range = "2:64";
  std::string sizes = "1ps,10ps,20ps,50ps,100ps";
  std::string mode = "base";
  std::string policy = "both";
  std::size_t ps = 1024;
  std::string csv;
};

struct AttackOpts {
  std::size_t ps = 64;
  std::size_t k = 5;
  std::string seed = "00";
  std::string mode = "both";
  std::size_t messages = 32;
};

std::vector<std::uint8_t> seed_bytes(const std::string& hex) {
  auto s = from_hex(hex);
  if (s.empty()) throw Error(Errc::config, "seed must be at least one octet of hex");
  return s;
}

std::uint64_t parse_u64(std::string_view s, const char* what) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw Error(Errc::config, std::string("bad ") + what + " '" + std::string(s) + "'");
  }
  return v;
}

SharedSecret load_key(const std::string& path, std::vector<std::uint8_t>* fp) {
  auto bytes = read_file(path);
  SharedSecret s = load_keyfile(bytes);
  if (fp) *fp = fingerprint(bytes);
  return s;
}

int cmd_keygen(const KeyOpts& o) {
  KeygenParams p;
  p.ps = o.ps;
  p.k = o.k;
  p.mode = parse_mode(o.mode);
  p.min_part_bits = o.min_part;
  if (!o.poly.empty()) {
    auto low = from_hex(o.poly);
    if (o.ps % 8 != 0 || low.size() > o.ps / 8) throw Error(Errc::config, "--poly is wider than PS bits");
    std::vector<std::uint8_t> padded(o.ps / 8 - low.size(), 0);
    padded.insert(padded.end(), low.begin(), low.end());
    p.poly = ReductionPoly(Block::from_bytes(padded, o.ps));
  }
  std::unique_ptr<Rng> rng;
  if (o.seed.empty()) {
    rng = std::make_unique<SystemRng>();
  } else {
    rng = std::make_unique<SeededRng>(seed_bytes(o.seed), "keygen");
  }
  const SharedSecret s = keygen(p, *rng);
  const auto bytes = save_keyfile(s);
  write_file_atomic(o.out, bytes);
  std::cout << to_hex(fingerprint(bytes)) << "\n";
  return 0;
}

int cmd_send(const SendOpts& o, bool parallel) {
  std::vector<std::uint8_t> fp;
  const SharedSecret secret = load_key(o.key, &fp);
  const auto data = read_file(o.in);

  std::optional<SenderSession::State> st;
  if (!o.state.empty() && fs::exists(o.state)) st = load_sender_state(read_file(o.state), secret, fp);
  const std::uint64_t start = st ? st->next_seq : 0;

  RngStreams rng = o.seed.empty() ? RngStreams::system() : RngStreams::seeded(seed_bytes(o.seed), start);
  PacketSender sender(secret, std::move(rng), parallel);
  if (st) sender.session().import_state(std::move(*st));

  PacketStream out;
  out.header = {secret.ps, secret.k, sender.tag_len()};
  out.packets = sender.send(data);
  if (!o.hold) {
    auto tail = sender.flush();
    out.packets.insert(out.packets.end(), tail.begin(), tail.end());
  }
  write_stream_file(o.out, out);
  if (!o.state.empty()) {
    write_file_atomic(o.state, save_sender_state(sender.session().export_state(), secret, fp));
  }
  std::cerr << "sent " << data.size() << " octets in " << out.packets.size() << " packets (seq " << start << ".."
            << sender.session().next_seq() << ")\n";
  return 0;
}

int cmd_recv(const RecvOpts& o, bool parallel) {
  std::vector<std::uint8_t> fp;
  const SharedSecret secret = load_key(o.key, &fp);
  const PacketStream in = read_stream_file(o.in);
  if (in.header.ps != secret.ps || in.header.k != secret.k || in.header.tag_len != hash_info(HashId::sha1).digest_size) {
    throw Error(Errc::invariant, "packet stream geometry does not match the keyfile");
  }

  std::optional<ReceiverSession::State> st;
  if (!o.state.empty() && fs::exists(o.state)) st = load_receiver_state(read_file(o.state), secret, fp);
  const std::uint64_t start = st ? st->expected_seq : 0;

  PacketReceiver rx(secret, o.window, parallel);
  if (st) {
    rx.session().import_state(std::move(*st));
    rx.resume_at(start);
  }

  std::vector<std::uint8_t> data;
  std::optional<Error> failure;
  try {
    for (const auto& p : in.packets) {
      auto bytes = rx.receive(p);
      data.insert(data.end(), bytes.begin(), bytes.end());
    }
  } catch (const Error& e) {
    failure = e;
  }

  if (rx.stats().mac_rejected > 0) {
    for (auto seq : rx.stats().rejected_seqs) std::cerr << "MAC verification failed for packet seq " << seq << "\n";
    std::cerr << "error: " << rx.stats().mac_rejected << " packet(s) failed authentication; nothing written\n";
    return kExitAuth;
  }
  if (!failure) {
    try {
      rx.finish(start + in.packets.size(), o.state.empty());
    } catch (const Error& e) {
      failure = e;
    }
  }
  if (failure) throw *failure;

  write_file_atomic(o.out, data);
  if (!o.state.empty()) {
    write_file_atomic(o.state, save_receiver_state(rx.session().export_state(), secret, fp));
  }
  std::cerr << "received " << data.size() << " octets from " << rx.stats().accepted << " packets\n";
  return 0;
}

std::vector<std::uint64_t> parse_sizes(const std::string& list, std::size_t ps) {
  std::vector<std::uint64_t> out;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    std::size_t comma = list.find(',', pos);
    if (comma == std::string::npos) comma = list.size();
    std::string_view item(list.data() + pos, comma - pos);
    if (item.empty()) throw Error(Errc::config, "empty entry in --sizes");
    if (item.ends_with("ps")) {
      out.push_back(parse_u64(item.substr(0, item.size() - 2), "size") * ps);
    } else {
      out.push_back(parse_u64(item, "size"));
    }
    pos = comma + 1;
  }
  return out;
}

int cmd_bench(const BenchOpts& o) {
  SweepSpec spec;
  const auto colon = o.k_range.find(':');
  if (colon == std::string::npos) {
    spec.k_min = spec.k_max = parse_u64(o.k_range, "k range");
  } else {
    spec.k_min = parse_u64(std::string_view(o.k_range).substr(0, colon), "k range");
    spec.k_max = parse_u64(std::string_view(o.k_range).substr(colon + 1), "k range");
  }
  if (o.ps == 0 || o.ps % 8 != 0) throw Error(Errc::config, "--ps must be a positive multiple of 8");
  spec.ps = o.ps;
  spec.sizes_bits = parse_sizes(o.sizes, o.ps);
  spec.mode = parse_count_mode(o.mode);
  if (o.policy == "best") {
    spec.policies = {PartPolicy::best};
  } else if (o.policy == "worst") {
    spec.policies = {PartPolicy::worst};
  } else if (o.policy != "both") {
    throw Error(Errc::config, "--policy must be best, worst or both");
  }
  const auto rows = sweep(spec);
  const std::string csv = emit_csv(rows);
  write_file_atomic(o.csv, {reinterpret_cast<const std::uint8_t*>(csv.data()), csv.size()});
  std::cerr << "wrote " << rows.size() << " rows (aes_xor_blocks counts round-key XORs only, a lower bound)\n";
  return 0;
}

int cmd_attack(const AttackOpts& o) {
  std::vector<Mode> modes;
  if (o.mode == "both") {
    modes = {Mode::base, Mode::aont};
  } else {
    modes = {parse_mode(o.mode)};
  }
  const auto seed = seed_bytes(o.seed);
  const auto messages = demo_messages(o.ps, o.messages, seed);
  for (Mode m : modes) {
    KeygenParams kp;
    kp.ps = o.ps;
    kp.k = o.k;
    kp.mode = m;
    SeededRng krng(seed, "attack-key");
    const SharedSecret secret = keygen(kp, krng);
    std::cout << run_attack_demo(secret, messages, seed).report() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string("jigsaw: encryption-less transfer over a pre-shared evolving pad.\n") + kNotice};
  app.footer(kNotice);
  app.require_subcommand(1);
  bool parallel = false;
  app.add_flag("--parallel", parallel, "Mask and unmask the blocks of a run on several threads");

  KeyOpts ko;
  auto* keygen_cmd = app.add_subcommand("keygen", "Generate a keyfile and print its fingerprint");
  keygen_cmd->add_option("--ps", ko.ps, "Block size in bits")->capture_default_str();
  keygen_cmd->add_option("--k", ko.k, "Number of pad blocks")->capture_default_str();
  keygen_cmd->add_option("--mode", ko.mode, "base, full-block or aont")->capture_default_str();
  keygen_cmd->add_option("--min-part", ko.min_part, "Smallest torn part in bits")->capture_default_str();
  keygen_cmd->add_option("--poly", ko.poly, "Reduction polynomial below the leading term, hex");
  keygen_cmd->add_option("--seed", ko.seed, "Deterministic seed, hex");
  keygen_cmd->add_option("--out", ko.out, "Keyfile to write")->required();

  SendOpts so;
  auto* send_cmd = app.add_subcommand("send", "Encode a file into a packet stream");
  send_cmd->add_option("--key", so.key)->required();
  send_cmd->add_option("--in", so.in)->required();
  send_cmd->add_option("--out", so.out)->required();
  send_cmd->add_option("--state", so.state, "Sender state file; continues the pad stream across invocations");
  send_cmd->add_option("--seed", so.seed, "Deterministic seed, hex");
  send_cmd->add_flag("--hold", so.hold, "Keep a partial run buffered in the state file instead of flushing");

  RecvOpts ro;
  auto* recv_cmd = app.add_subcommand("recv", "Decode a packet stream into a file");
  recv_cmd->add_option("--key", ro.key)->required();
  recv_cmd->add_option("--in", ro.in)->required();
  recv_cmd->add_option("--out", ro.out)->required();
  recv_cmd->add_option("--state", ro.state, "Receiver state file");
  recv_cmd->add_option("--window", ro.window, "Reorder window in packets")->capture_default_str();

  BenchOpts bo;
  auto* bench_cmd = app.add_subcommand("bench", "Write closed-form operation counts as CSV");
  bench_cmd->add_option("--k", bo.k_range, "k range lo:hi")->capture_default_str();
  bench_cmd->add_option("--sizes", bo.sizes, "Data sizes in bits; a 'ps' suffix multiplies by PS")
      ->capture_default_str();
  bench_cmd->add_option("--ps", bo.ps)->capture_default_str();
  bench_cmd->add_option("--mode", bo.mode, "base or aont")->capture_default_str();
  bench_cmd->add_option("--policy", bo.policy, "best, worst or both")->capture_default_str();
  bench_cmd->add_option("--csv", bo.csv)->required();

  AttackOpts ao;
  auto* attack_cmd = app.add_subcommand("attack-demo", "Run the round-differencing attack on a seeded transfer");
  attack_cmd->add_option("--ps", ao.ps)->capture_default_str();
  attack_cmd->add_option("--k", ao.k)->capture_default_str();
  attack_cmd->add_option("--seed", ao.seed, "hex")->capture_default_str();
  attack_cmd->add_option("--mode", ao.mode, "base, aont or both")->capture_default_str();
  attack_cmd->add_option("--messages", ao.messages)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e, std::cerr, std::cerr);
    return kExitParse;
  }

  try {
    if (*keygen_cmd) return cmd_keygen(ko);
    if (*send_cmd) return cmd_send(so, parallel);
    if (*recv_cmd) return cmd_recv(ro, parallel);
    if (*bench_cmd) return cmd_bench(bo);
    if (*attack_cmd) return cmd_attack(ao);
  } catch (const MissingPacketError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitProtocol;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  return kExitParse;
}
