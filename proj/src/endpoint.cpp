#include "jigsaw/endpoint.hpp"

namespace jigsaw {

MacConfig mac_config(const SharedSecret& secret) { return {HashId::sha1, secret.mac_key, 0}; }

PacketSender::PacketSender(SharedSecret secret, RngStreams rng, bool parallel)
    : session_(std::move(secret), std::move(rng), parallel), mac_(mac_config(session_.secret())) {}

std::vector<Packet> PacketSender::seal_all(std::vector<Frame> frames) const {
  std::vector<Packet> out;
  out.reserve(frames.size());
  for (const auto& f : frames) out.push_back(seal(f, mac_));
  return out;
}

std::vector<Packet> PacketSender::send(std::span<const std::uint8_t> data) { return seal_all(session_.push(data)); }

std::vector<Packet> PacketSender::flush() { return seal_all(session_.flush()); }

PacketReceiver::PacketReceiver(SharedSecret secret, std::size_t window, bool parallel)
    : session_(std::move(secret), parallel),
      mac_(mac_config(session_.secret())),
      reorder_(0, window),
      window_(window),
      ps_(session_.secret().ps) {}

void PacketReceiver::resume_at(std::uint64_t next_seq) { reorder_ = ReorderBuffer(next_seq, window_); }

std::vector<std::uint8_t> PacketReceiver::receive(const Packet& p) {
  std::vector<std::uint8_t> out;
  if (p.payload.size() != ps_ / 8 || !verify(p, mac_)) {
    ++stats_.mac_rejected;
    stats_.rejected_seqs.push_back(p.seq);
    return out;
  }
  const std::uint64_t dup_before = reorder_.duplicates();
  for (auto& ready : reorder_.push(p)) {
    ++stats_.accepted;
    auto bytes = session_.push(to_frame(ready, ps_));
    out.insert(out.end(), bytes.begin(), bytes.end());
  }
  stats_.duplicates += reorder_.duplicates() - dup_before;
  return out;
}

void PacketReceiver::finish(std::optional<std::uint64_t> end_seq, bool close_codec) {
  reorder_.finish(end_seq);
  if (close_codec) session_.close();
}

}  // namespace jigsaw
