#pragma once

// Codec sessions wired to the packet layer: the sender seals frames with the
// MAC; the receiver checks the MAC first, then orders by sequence number,
// then hands payloads to the codec.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "jigsaw/codec.hpp"
#include "jigsaw/mac.hpp"
#include "jigsaw/wire.hpp"

namespace jigsaw {

MacConfig mac_config(const SharedSecret& secret);

class PacketSender {
 public:
  PacketSender(SharedSecret secret, RngStreams rng, bool parallel = false);

  std::vector<Packet> send(std::span<const std::uint8_t> data);
  std::vector<Packet> flush();

  SenderSession& session() { return session_; }
  const SenderSession& session() const { return session_; }
  std::size_t tag_len() const { return mac_.tag_len(); }

 private:
  std::vector<Packet> seal_all(std::vector<Frame> frames) const;

  SenderSession session_;
  Hmac mac_;
};

class PacketReceiver {
 public:
  struct Stats {
    std::uint64_t accepted = 0;
    std::uint64_t mac_rejected = 0;
    std::uint64_t duplicates = 0;
    std::vector<std::uint64_t> rejected_seqs;
  };

  PacketReceiver(SharedSecret secret, std::size_t window = ReorderBuffer::kDefaultWindow, bool parallel = false);

  /// Returns octets released by the codec. Tampered packets are dropped and
  /// counted, never fatal.
  std::vector<std::uint8_t> receive(const Packet& p);
  /// Verifies nothing is missing (up to end_seq, if known) and closes the codec.
  void finish(std::optional<std::uint64_t> end_seq = std::nullopt, bool close_codec = true);

  ReceiverSession& session() { return session_; }
  const Stats& stats() const { return stats_; }
  /// Must be called before the first receive() when resuming a session.
  void resume_at(std::uint64_t next_seq);

 private:
  ReceiverSession session_;
  Hmac mac_;
  ReorderBuffer reorder_;
  std::size_t window_;
  std::size_t ps_;
  Stats stats_;
};

}  // namespace jigsaw
