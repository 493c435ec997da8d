#pragma once

// Packet framing, sequence-order reassembly, and the packet-stream file.
//
// Frame:   seq (8, BE) | flags (1) | payload (PS/8) | tag (tag_len)
// Stream:  "JPKT" | version (1) | PS/8 (4, BE) | k (2, BE) | tag_len (1) |
//          count (8, BE) | count frames

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "jigsaw/bits.hpp"
#include "jigsaw/codec.hpp"
#include "jigsaw/mac.hpp"

namespace jigsaw {

struct Packet {
  std::uint64_t seq = 0;
  std::uint8_t flags = 0;
  std::vector<std::uint8_t> payload;
  std::vector<std::uint8_t> tag;

  friend bool operator==(const Packet&, const Packet&) = default;
};

inline constexpr std::size_t kFrameHeaderLen = 9;

std::vector<std::uint8_t> encode_packet(const Packet& p);
void encode_packet(const Packet& p, std::vector<std::uint8_t>& out);
/// The frame must be exactly 9 + payload_len + tag_len octets.
Packet decode_packet(std::span<const std::uint8_t> frame, std::size_t payload_len, std::size_t tag_len);

Packet seal(const Frame& f, const Hmac& mac);
bool verify(const Packet& p, const Hmac& mac) noexcept;
Frame to_frame(const Packet& p, std::size_t ps);

/// Releases packets strictly in sequence order. A packet more than
/// window-1 ahead of the next expected one means that one is lost.
class ReorderBuffer {
 public:
  static constexpr std::size_t kDefaultWindow = 64;

  explicit ReorderBuffer(std::uint64_t next_seq = 0, std::size_t window = kDefaultWindow);

  /// Returns the packets that became deliverable, in order. Duplicates are
  /// dropped. Throws MissingPacketError when the window overflows.
  std::vector<Packet> push(Packet p);
  /// Throws MissingPacketError if anything is still held back, or if fewer
  /// than `end_seq` packets were delivered.
  void finish(std::optional<std::uint64_t> end_seq = std::nullopt) const;

  std::uint64_t next_expected() const { return next_; }
  std::size_t held() const { return held_.size(); }
  std::uint64_t duplicates() const { return duplicates_; }

 private:
  std::uint64_t next_;
  std::size_t window_;
  std::map<std::uint64_t, Packet> held_;
  std::uint64_t duplicates_ = 0;
};

inline constexpr std::uint8_t kStreamVersion = 0x01;
inline constexpr std::size_t kStreamHeaderLen = 20;

struct StreamHeader {
  std::size_t ps = 0;
  std::size_t k = 0;
  std::size_t tag_len = 0;

  friend bool operator==(const StreamHeader&, const StreamHeader&) = default;
};

struct PacketStream {
  StreamHeader header;
  std::vector<Packet> packets;

  friend bool operator==(const PacketStream&, const PacketStream&) = default;
};

std::vector<std::uint8_t> write_stream(const PacketStream& s);
PacketStream read_stream(std::span<const std::uint8_t> bytes);

void write_stream_file(const std::filesystem::path& path, const PacketStream& s);
PacketStream read_stream_file(const std::filesystem::path& path);

}  // namespace jigsaw
