#include "jigsaw/simnet.hpp"

#include <algorithm>
#include <sstream>

#include "jigsaw/endpoint.hpp"

namespace jigsaw {

namespace {

bool chance(Rng& rng, double p) {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  return static_cast<double>(rng.next_u64() >> 11) * 0x1.0p-53 < p;
}

}  // namespace

void ChannelConfig::validate() const {
  for (double p : {drop, duplicate, reorder, tamper}) {
    if (!(p >= 0.0 && p <= 1.0)) throw Error(Errc::config, "channel probabilities must be in [0, 1]");
  }
  if (seed.empty()) throw Error(Errc::config, "channel seed must not be empty");
}

std::string Transcript::report() const {
  std::ostringstream os;
  os << "status: " << (ok() ? "ok" : "error") << "\n"
     << "delivered_bytes: " << delivered.size() << "\n"
     << "packets_sent: " << sent << "\n"
     << "packets_accepted: " << accepted << "\n"
     << "dropped: " << dropped << "\n"
     << "duplicated: " << duplicated << "\n"
     << "swapped: " << swapped << "\n"
     << "tampered: " << tampered << "\n"
     << "mac_rejections: " << mac_rejections << "\n";
  if (error) {
    os << "error: " << to_string(*error) << "\n";
    if (missing_seq) os << "missing_seq: " << *missing_seq << "\n";
    os << "error_message: " << error_message << "\n";
  }
  return os.str();
}

Transcript run_transfer(const SharedSecret& secret, std::span<const std::vector<std::uint8_t>> messages,
                        const ChannelConfig& config) {
  config.validate();
  Transcript t;

  PacketSender sender(secret, RngStreams::seeded(config.seed), config.parallel);
  std::vector<Packet> sent;
  for (const auto& m : messages) {
    auto pk = sender.send(m);
    sent.insert(sent.end(), std::make_move_iterator(pk.begin()), std::make_move_iterator(pk.end()));
  }
  {
    auto pk = sender.flush();
    sent.insert(sent.end(), std::make_move_iterator(pk.begin()), std::make_move_iterator(pk.end()));
  }
  t.sent = sent.size();

  SeededRng channel(config.seed, "channel");
  std::vector<Packet> wire;
  wire.reserve(sent.size());
  for (auto& p : sent) {
    if (chance(channel, config.drop)) {
      ++t.dropped;
      t.dropped_seqs.push_back(p.seq);
      continue;
    }
    if (chance(channel, config.tamper)) {
      auto frame = encode_packet(p);
      const std::uint64_t bit = channel.uniform(0, frame.size() * 8 - 1);
      frame[bit / 8] ^= static_cast<std::uint8_t>(0x80 >> (bit % 8));
      p = decode_packet(frame, p.payload.size(), p.tag.size());
      ++t.tampered;
    }
    const bool dup = chance(channel, config.duplicate);
    if (dup) {
      wire.push_back(p);
      ++t.duplicated;
    }
    wire.push_back(std::move(p));
  }
  for (std::size_t i = 0; i + 1 < wire.size(); ++i) {
    if (chance(channel, config.reorder)) {
      std::swap(wire[i], wire[i + 1]);
      ++t.swapped;
      ++i;
    }
  }

  PacketReceiver receiver(secret, config.window, config.parallel);
  try {
    for (const auto& p : wire) {
      auto bytes = receiver.receive(p);
      t.delivered.insert(t.delivered.end(), bytes.begin(), bytes.end());
    }
    receiver.finish(t.sent);
  } catch (const MissingPacketError& e) {
    t.error = e.code();
    t.missing_seq = e.seq();
    t.error_message = e.what();
  } catch (const Error& e) {
    t.error = e.code();
    t.error_message = e.what();
  }
  t.mac_rejections = receiver.stats().mac_rejected;
  t.accepted = receiver.stats().accepted;
  return t;
}

Transcript run_transfer(const SharedSecret& secret, std::span<const std::uint8_t> data, const ChannelConfig& config) {
  const std::vector<std::vector<std::uint8_t>> one{{data.begin(), data.end()}};
  return run_transfer(secret, one, config);
}

void AdversaryTap::capture(const Packet& p) {
  captured_.insert_or_assign(p.seq, Block::from_bytes(p.payload, ps_));
}

std::size_t AdversaryTap::complete_rounds() const {
  std::uint64_t next = 0;
  for (const auto& [seq, b] : captured_) {
    if (seq != next) break;
    ++next;
  }
  return static_cast<std::size_t>(next / k_);
}

std::vector<Block> AdversaryTap::round(std::size_t r) const {
  std::vector<Block> out;
  out.reserve(k_);
  for (std::size_t i = 0; i < k_; ++i) {
    auto it = captured_.find(r * k_ + i);
    if (it == captured_.end()) {
      throw Error(Errc::insufficient_capture, "round " + std::to_string(r) + " is missing seq " +
                                                  std::to_string(r * k_ + i));
    }
    out.push_back(it->second);
  }
  return out;
}

std::vector<Block> attack_round_difference(const AdversaryTap& tap, std::size_t r) {
  const auto cur = tap.round(r);
  const auto next = tap.round(r + 1);
  std::vector<Block> deltas;
  deltas.reserve(tap.k() - 1);
  for (std::size_t i = 0; i + 1 < tap.k(); ++i) deltas.push_back(cur[i] ^ next[i]);
  return deltas;
}

std::vector<SlotPairCombination> attack_eliminate_r(std::span<const Block> deltas) {
  if (deltas.size() < 2) throw Error(Errc::insufficient_capture, "need at least two difference blocks");
  std::vector<SlotPairCombination> out;
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    for (std::size_t j = i + 1; j < deltas.size(); ++j) out.push_back({i, j, deltas[i] ^ deltas[j]});
  }
  return out;
}

Block recover_fourth(const Block& combination, const Block& xi_r, const Block& xi_next, const Block& xj_r) {
  return combination ^ xi_r ^ xi_next ^ xj_r;
}

std::string AttackReport::report() const {
  std::ostringstream os;
  os << "mode: " << to_string(mode) << "\n"
     << "ps: " << ps << "\n"
     << "k: " << k << "\n"
     << "round_pairs: " << rounds << "\n"
     << "slot_deltas: " << deltas << " (delta = X ^ X' ^ R holds for " << delta_holds << ")\n"
     << "slot_pairs: " << pairs << " (identity holds for " << identity_holds << ")\n"
     << "slot_k_checks: " << last_slot_checks << " (difference identity violated for " << last_slot_violations
     << ")\n"
     << "known_plaintext_recoveries: " << recoveries << " (fourth block matched for " << recovered << ")\n";
  if (pairs > 0) os << "identity: " << (identity_holds == pairs ? "identity holds" : "identity broken") << "\n";
  if (recoveries > 0) {
    os << "recovery: "
       << (recovered == recoveries ? "recovered"
                                   : (recovered == 0 ? "recovery mismatch" : "partial recovery (some mismatch)"))
       << "\n";
  }
  return os.str();
}

std::vector<std::vector<std::uint8_t>> demo_messages(std::size_t ps, std::size_t count,
                                                     std::span<const std::uint8_t> seed) {
  SeededRng rng(seed, "workload");
  std::vector<std::vector<std::uint8_t>> out(count);
  for (auto& m : out) {
    m.resize(rng.uniform(1, std::max<std::size_t>(1, ps / 2)));
    rng.fill(m);
  }
  return out;
}

AttackReport run_attack_demo(const SharedSecret& secret, std::span<const std::vector<std::uint8_t>> messages,
                             std::span<const std::uint8_t> seed) {
  const std::size_t k = secret.k;
  AttackReport rep;
  rep.mode = secret.mode;
  rep.ps = secret.ps;
  rep.k = k;

  std::vector<RunTrace> traces;
  PacketSender sender(secret, RngStreams::seeded(seed));
  sender.session().set_observer([&](const RunTrace& t) { traces.push_back(t); });
  AdversaryTap tap(secret.ps, k);
  for (const auto& m : messages) {
    for (const auto& p : sender.send(m)) tap.capture(p);
  }
  for (const auto& p : sender.flush()) tap.capture(p);

  const std::size_t rounds = tap.complete_rounds();
  for (std::size_t r = 0; r + 1 < rounds; ++r) {
    ++rep.rounds;
    const RunTrace& a = traces[r];
    const RunTrace& b = traces[r + 1];
    const auto deltas = attack_round_difference(tap, r);
    for (std::size_t i = 0; i < deltas.size(); ++i) {
      ++rep.deltas;
      if (deltas[i] == (a.slots[i] ^ b.slots[i] ^ a.r)) ++rep.delta_holds;
    }
    // Slot k carries R masked by a multiplicatively evolving P_k.
    const auto ca = tap.round(r);
    const auto cb = tap.round(r + 1);
    ++rep.last_slot_checks;
    if ((ca[k - 1] ^ cb[k - 1]) != (a.r ^ b.r ^ a.r)) ++rep.last_slot_violations;

    if (deltas.size() < 2) continue;
    for (const auto& c : attack_eliminate_r(deltas)) {
      ++rep.pairs;
      const Block truth = a.slots[c.i] ^ b.slots[c.i] ^ a.slots[c.j] ^ b.slots[c.j];
      if (c.value == truth) ++rep.identity_holds;
      ++rep.recoveries;
      const Block guess = recover_fourth(c.value, a.plain[c.i], b.plain[c.i], a.plain[c.j]);
      if (guess == b.plain[c.j]) ++rep.recovered;
    }
  }
  return rep;
}

}  // namespace jigsaw
