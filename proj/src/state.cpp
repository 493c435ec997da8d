#include "jigsaw/state.hpp"

#include <algorithm>
#include <cstring>
#include <string>

#include "jigsaw/byteio.hpp"

namespace jigsaw {

namespace {

constexpr char kMagic[4] = {'J', 'S', 'S', 'T'};
constexpr char kWhat[] = "state file";

void put_block(ByteWriter& w, const Block& b) { w.bytes(b.to_bytes()); }

Block get_block(ByteReader& r, std::size_t ps) { return Block::from_bytes(r.bytes(ps / 8), ps); }

void put_bits(ByteWriter& w, const BitString& s) {
  w.u64(s.size());
  w.bytes(s.to_bytes());
}

BitString get_bits(ByteReader& r) {
  const std::uint64_t n = r.u64();
  if (n > std::uint64_t{1} << 40) throw Error(Errc::invariant, "state file: implausible bit count");
  auto octets = r.bytes(static_cast<std::size_t>((n + 7) / 8));
  BitString s = BitString::from_bytes(octets);
  if (n % 8 != 0 && (octets.back() & (0xFF >> (n % 8))) != 0) {
    throw Error(Errc::invariant, "state file: nonzero padding bits");
  }
  return s.slice(0, static_cast<std::size_t>(n));
}

void put_header(ByteWriter& w, char role, const PadState& pad, std::uint64_t seq, const SharedSecret& secret,
                std::span<const std::uint8_t> fp) {
  w.bytes({reinterpret_cast<const std::uint8_t*>(kMagic), 4});
  w.u8(kStateVersion);
  w.u8(static_cast<std::uint8_t>(role));
  w.bytes(fp);
  w.u32(static_cast<std::uint32_t>(secret.ps / 8));
  w.u16(static_cast<std::uint16_t>(secret.k));
  w.u64(pad.run_index);
  for (const auto& p : pad.p) put_block(w, p);
  w.u64(seq);
}

PadState get_header(ByteReader& r, char role, std::uint64_t& seq, const SharedSecret& secret,
                    std::span<const std::uint8_t> fp) {
  auto magic = r.bytes(4);
  if (!std::equal(magic.begin(), magic.end(), kMagic)) throw Error(Errc::bad_magic, "not a state file");
  if (r.u8() != kStateVersion) throw Error(Errc::bad_version, "unsupported state file version");
  if (r.u8() != static_cast<std::uint8_t>(role)) {
    throw Error(Errc::invariant, std::string("state file belongs to the ") + (role == 'S' ? "receiver" : "sender"));
  }
  auto stored = r.bytes(fp.size());
  if (!std::equal(stored.begin(), stored.end(), fp.begin(), fp.end())) {
    throw Error(Errc::fingerprint_mismatch, "state file was written for a different keyfile");
  }
  if (r.u32() * std::size_t{8} != secret.ps || r.u16() != secret.k) {
    throw Error(Errc::invariant, "state file geometry does not match the keyfile");
  }
  PadState pad;
  pad.run_index = r.u64();
  for (std::size_t i = 0; i < secret.k; ++i) pad.p.push_back(get_block(r, secret.ps));
  seq = r.u64();
  return pad;
}

void expect_end(const ByteReader& r) {
  if (r.remaining() != 0) throw Error(Errc::invariant, "state file has trailing octets");
}

}  // namespace

std::vector<std::uint8_t> save_sender_state(const SenderSession::State& st, const SharedSecret& secret,
                                            std::span<const std::uint8_t> key_fingerprint) {
  ByteWriter w;
  put_header(w, 'S', st.pad, st.next_seq, secret, key_fingerprint);
  w.u32(static_cast<std::uint32_t>(st.pending.size()));
  for (const auto& slot : st.pending) {
    w.u8(slot.flags);
    w.u8(slot.plain ? 1 : 0);
    put_block(w, slot.block);
    if (slot.plain) put_block(w, *slot.plain);
  }
  put_bits(w, st.leftover);
  return w.take();
}

SenderSession::State load_sender_state(std::span<const std::uint8_t> bytes, const SharedSecret& secret,
                                       std::span<const std::uint8_t> key_fingerprint) {
  ByteReader r(bytes, kWhat);
  SenderSession::State st;
  st.pad = get_header(r, 'S', st.next_seq, secret, key_fingerprint);
  const std::uint32_t n = r.u32();
  if (n >= secret.k) throw Error(Errc::invariant, "state file: too many pending slots");
  for (std::uint32_t i = 0; i < n; ++i) {
    PendingSlot slot;
    slot.flags = r.u8();
    const std::uint8_t has_plain = r.u8();
    if (has_plain > 1) throw Error(Errc::invariant, "state file: bad slot marker");
    slot.block = get_block(r, secret.ps);
    if (has_plain) slot.plain = get_block(r, secret.ps);
    st.pending.push_back(std::move(slot));
  }
  st.leftover = get_bits(r);
  if (st.leftover.size() >= secret.ps) throw Error(Errc::invariant, "state file: leftover exceeds a block");
  expect_end(r);
  return st;
}

std::vector<std::uint8_t> save_receiver_state(const ReceiverSession::State& st, const SharedSecret& secret,
                                              std::span<const std::uint8_t> key_fingerprint) {
  ByteWriter w;
  put_header(w, 'R', st.pad, st.expected_seq, secret, key_fingerprint);
  w.u16(static_cast<std::uint16_t>(st.run.size()));
  for (const auto& [f, b] : st.run) {
    w.u8(f);
    put_block(w, b);
  }
  w.u32(static_cast<std::uint32_t>(st.group.size()));
  for (const auto& b : st.group) put_block(w, b);
  put_bits(w, st.pending_bits);
  return w.take();
}

ReceiverSession::State load_receiver_state(std::span<const std::uint8_t> bytes, const SharedSecret& secret,
                                           std::span<const std::uint8_t> key_fingerprint) {
  ByteReader r(bytes, kWhat);
  ReceiverSession::State st;
  st.pad = get_header(r, 'R', st.expected_seq, secret, key_fingerprint);
  const std::uint16_t n = r.u16();
  if (n >= secret.k) throw Error(Errc::invariant, "state file: too many buffered payloads");
  for (std::uint16_t i = 0; i < n; ++i) {
    const std::uint8_t f = r.u8();
    st.run.emplace_back(f, get_block(r, secret.ps));
  }
  const std::uint32_t g = r.u32();
  if (g > r.remaining() / (secret.ps / 8)) throw Error(Errc::truncated, "state file: truncated group");
  for (std::uint32_t i = 0; i < g; ++i) st.group.push_back(get_block(r, secret.ps));
  st.pending_bits = get_bits(r);
  expect_end(r);
  return st;
}

}  // namespace jigsaw
