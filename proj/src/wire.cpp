#include "jigsaw/wire.hpp"

#include <cstring>
#include <string>

#include "jigsaw/byteio.hpp"
#include "jigsaw/error.hpp"
#include "jigsaw/io.hpp"

namespace jigsaw {

namespace {

constexpr std::uint8_t kStreamMagic[4] = {'J', 'P', 'K', 'T'};

}  // namespace

void encode_packet(const Packet& p, std::vector<std::uint8_t>& out) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(p.seq >> (56 - 8 * i)));
  out.push_back(p.flags);
  out.insert(out.end(), p.payload.begin(), p.payload.end());
  out.insert(out.end(), p.tag.begin(), p.tag.end());
}

std::vector<std::uint8_t> encode_packet(const Packet& p) {
  std::vector<std::uint8_t> out;
  out.reserve(kFrameHeaderLen + p.payload.size() + p.tag.size());
  encode_packet(p, out);
  return out;
}

Packet decode_packet(std::span<const std::uint8_t> frame, std::size_t payload_len, std::size_t tag_len) {
  const std::size_t want = kFrameHeaderLen + payload_len + tag_len;
  if (frame.size() < want) throw Error(Errc::truncated, "frame shorter than " + std::to_string(want) + " octets");
  if (frame.size() > want) throw Error(Errc::invariant, "frame longer than " + std::to_string(want) + " octets");
  ByteReader r(frame, "frame");
  Packet p;
  p.seq = r.u64();
  p.flags = r.u8();
  auto payload = r.bytes(payload_len);
  auto tag = r.bytes(tag_len);
  p.payload.assign(payload.begin(), payload.end());
  p.tag.assign(tag.begin(), tag.end());
  return p;
}

Packet seal(const Frame& f, const Hmac& mac) {
  Packet p;
  p.seq = f.seq;
  p.flags = f.flags;
  p.payload = f.payload.to_bytes();
  p.tag = tag_packet(mac, p.seq, p.flags, p.payload);
  return p;
}

bool verify(const Packet& p, const Hmac& mac) noexcept {
  return verify_packet(mac, p.seq, p.flags, p.payload, p.tag);
}

Frame to_frame(const Packet& p, std::size_t ps) {
  return {p.seq, p.flags, Block::from_bytes(p.payload, ps)};
}

ReorderBuffer::ReorderBuffer(std::uint64_t next_seq, std::size_t window) : next_(next_seq), window_(window) {
  if (window_ == 0) throw Error(Errc::config, "reorder window must be positive");
}

std::vector<Packet> ReorderBuffer::push(Packet p) {
  std::vector<Packet> ready;
  if (p.seq < next_ || held_.contains(p.seq)) {
    ++duplicates_;
    return ready;
  }
  if (p.seq - next_ >= window_) throw MissingPacketError(next_);
  held_.emplace(p.seq, std::move(p));
  for (auto it = held_.find(next_); it != held_.end(); it = held_.find(next_)) {
    ready.push_back(std::move(it->second));
    held_.erase(it);
    ++next_;
  }
  return ready;
}

void ReorderBuffer::finish(std::optional<std::uint64_t> end_seq) const {
  if (!held_.empty()) throw MissingPacketError(next_);
  if (end_seq && next_ < *end_seq) throw MissingPacketError(next_);
}

std::vector<std::uint8_t> write_stream(const PacketStream& s) {
  const std::size_t payload_len = s.header.ps / 8;
  ByteWriter w;
  w.bytes(kStreamMagic);
  w.u8(kStreamVersion);
  w.u32(static_cast<std::uint32_t>(payload_len));
  w.u16(static_cast<std::uint16_t>(s.header.k));
  w.u8(static_cast<std::uint8_t>(s.header.tag_len));
  w.u64(s.packets.size());
  w.data().reserve(kStreamHeaderLen + s.packets.size() * (kFrameHeaderLen + payload_len + s.header.tag_len));
  for (const auto& p : s.packets) {
    if (p.payload.size() != payload_len || p.tag.size() != s.header.tag_len) {
      throw Error(Errc::size_mismatch, "packet does not match stream header");
    }
    encode_packet(p, w.data());
  }
  return w.take();
}

PacketStream read_stream(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes, "packet stream");
  if (bytes.size() < 4 || std::memcmp(r.bytes(4).data(), kStreamMagic, 4) != 0) {
    throw Error(Errc::bad_magic, "packet stream: bad magic (expected JPKT)");
  }
  if (const auto v = r.u8(); v != kStreamVersion) {
    throw Error(Errc::bad_version, "packet stream: unsupported version " + std::to_string(v));
  }
  PacketStream s;
  const std::size_t payload_len = r.u32();
  s.header.ps = payload_len * 8;
  s.header.k = r.u16();
  s.header.tag_len = r.u8();
  const std::uint64_t count = r.u64();
  const std::size_t frame_len = kFrameHeaderLen + payload_len + s.header.tag_len;
  if (frame_len == 0 || r.remaining() % frame_len != 0 || r.remaining() / frame_len != count) {
    throw Error(Errc::count_mismatch, "packet stream: header count " + std::to_string(count) +
                                          " does not match " + std::to_string(r.remaining()) + " frame octets");
  }
  s.packets.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    s.packets.push_back(decode_packet(r.bytes(frame_len), payload_len, s.header.tag_len));
  }
  return s;
}

void write_stream_file(const std::filesystem::path& path, const PacketStream& s) {
  write_file_atomic(path, write_stream(s));
}

PacketStream read_stream_file(const std::filesystem::path& path) { return read_stream(read_file(path)); }

}  // namespace jigsaw
