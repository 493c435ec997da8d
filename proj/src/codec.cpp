#include "jigsaw/codec.hpp"

#include <string>

#include "jigsaw/error.hpp"
#include "jigsaw/kernels.hpp"

namespace jigsaw {

namespace {

// Full-block mode terminates a short final part with a single 1 bit followed
// by zeros, so the receiver can locate its end without the leading marker.
Block terminate_short_part(const BitString& bits, std::size_t ps) {
  BitString b = bits;
  b.push_back(true);
  Block out(ps);
  detail::copy_bits(out.words(), 0, b.words(), 0, b.size());
  return out;
}

}  // namespace

SenderSession::SenderSession(SharedSecret secret, RngStreams rng, bool parallel)
    : secret_(std::move(secret)), rng_(std::move(rng)), parallel_(parallel), pad_(PadState::initial(secret_)) {
  if (secret_.mode == Mode::aont) aont_.emplace(secret_.lambda, secret_.poly);
}

void SenderSession::enqueue_parts(const std::vector<Part>& parts, std::vector<Block>* embedded) {
  const std::size_t ps = secret_.ps;
  std::vector<std::size_t> offsets(parts.size());
  // Offsets are drawn serially so the stream is identical with or without
  // the parallel kernels.
  for (std::size_t i = 0; i < parts.size(); ++i) {
    offsets[i] = rng_.offsets->uniform(1, max_offset(parts[i].size() + 2, ps));
  }
  std::vector<Block> blocks(parts.size());
  kernels::embed_parts(parallel_, parts, offsets, ps, blocks);
  if (embedded) {
    *embedded = std::move(blocks);
    return;
  }
  for (auto& b : blocks) pending_.push_back({std::move(b), 0, std::nullopt});
}

std::vector<Frame> SenderSession::push(std::span<const std::uint8_t> data) {
  std::vector<Frame> out;
  const std::size_t ps = secret_.ps;
  switch (secret_.mode) {
    case Mode::base: {
      enqueue_parts(tear(data, secret_.min_part_bits, ps - 2, *rng_.tear), nullptr);
      break;
    }
    case Mode::full_block: {
      BitString bits = std::move(leftover_);
      bits.append(BitString::from_bytes(data));
      std::size_t pos = 0;
      for (; pos + ps <= bits.size(); pos += ps) {
        pending_.push_back({Block::from_bits(bits.slice(pos, ps)), 0, std::nullopt});
      }
      leftover_ = bits.slice(pos, bits.size() - pos);
      break;
    }
    case Mode::aont: {
      if (data.empty()) break;
      std::vector<Block> x;
      enqueue_parts(tear(data, secret_.min_part_bits, ps - 2, *rng_.tear), &x);
      x.push_back(rng_.aont->nonzero_block(ps));
      std::vector<Block> y = aont_->forward(x, &counters_);
      for (std::size_t i = 0; i < y.size(); ++i) {
        const std::uint8_t f = i + 1 == y.size() ? flags::group_final : 0;
        pending_.push_back({std::move(y[i]), f, std::move(x[i])});
      }
      break;
    }
  }
  emit_ready(out);
  return out;
}

PendingSlot SenderSession::padding_slot() {
  const std::size_t ps = secret_.ps;
  const BitString marked = affix(Part{}, ps);
  Block b = embed(marked, rng_.offsets->uniform(1, max_offset(marked.size(), ps)), ps);
  std::optional<Block> plain;
  if (secret_.mode == Mode::aont) plain = b;
  return {std::move(b), flags::padding, std::move(plain)};
}

std::vector<Frame> SenderSession::flush() {
  std::vector<Frame> out;
  if (secret_.mode == Mode::full_block && !leftover_.empty()) {
    pending_.push_back({terminate_short_part(leftover_, secret_.ps), flags::flush_boundary, std::nullopt});
    leftover_ = BitString{};
    emit_ready(out);
  }
  if (pending_.empty()) return out;
  while (pending_.size() < secret_.k - 1) pending_.push_back(padding_slot());
  emit_run(out);
  return out;
}

void SenderSession::emit_ready(std::vector<Frame>& out) {
  while (pending_.size() >= secret_.k - 1) emit_run(out);
}

void SenderSession::emit_run(std::vector<Frame>& out) {
  const std::size_t k = secret_.k;
  std::vector<Block> in;
  std::vector<std::uint8_t> fl;
  in.reserve(k);
  fl.reserve(k);
  RunTrace trace;
  for (std::size_t i = 0; i + 1 < k; ++i) {
    PendingSlot& s = pending_.front();
    if (observer_) trace.plain.push_back(s.plain ? *s.plain : s.block);
    in.push_back(std::move(s.block));
    fl.push_back(s.flags);
    pending_.pop_front();
  }
  Block r = rng_.r_values->nonzero_block(secret_.ps);
  in.push_back(r);
  fl.push_back(0);

  std::vector<Block> payloads(k);
  kernels::mask_blocks(parallel_, in, pad_.p, payloads);
  counters_.block_xors += k;

  if (observer_) {
    trace.run_index = pad_.run_index;
    trace.first_seq = next_seq_;
    trace.slots.assign(in.begin(), in.end() - 1);
    trace.slot_flags.assign(fl.begin(), fl.end() - 1);
    trace.r = r;
    trace.pads = pad_.p;
    trace.payloads = payloads;
  }

  pad_ = transform(std::move(pad_), r, secret_.poly, &counters_);
  for (std::size_t i = 0; i < k; ++i) out.push_back({next_seq_ + i, fl[i], std::move(payloads[i])});
  next_seq_ += k;
  masked_slots_ += k - 1;
  ++runs_;
  if (observer_) observer_(trace);
}

SenderSession::State SenderSession::export_state() const {
  return {pad_, next_seq_, {pending_.begin(), pending_.end()}, leftover_};
}

void SenderSession::import_state(State st) {
  if (st.pad.p.size() != secret_.k) throw Error(Errc::invariant, "sender state: pad size differs from k");
  pad_ = std::move(st.pad);
  next_seq_ = st.next_seq;
  pending_.assign(st.pending.begin(), st.pending.end());
  leftover_ = std::move(st.leftover);
}

ReceiverSession::ReceiverSession(SharedSecret secret, bool parallel)
    : secret_(std::move(secret)), parallel_(parallel), pad_(PadState::initial(secret_)) {
  if (secret_.mode == Mode::aont) aont_.emplace(secret_.lambda, secret_.poly);
}

std::vector<std::uint8_t> ReceiverSession::push(const Frame& frame) {
  if (frame.seq != expected_seq_) {
    throw Error(Errc::protocol, "out-of-order frame seq=" + std::to_string(frame.seq) +
                                    " (expected " + std::to_string(expected_seq_) + ")");
  }
  return push(frame.flags, frame.payload);
}

std::vector<std::uint8_t> ReceiverSession::push(std::uint8_t fl, const Block& payload) {
  if (payload.bits() != secret_.ps) throw Error(Errc::size_mismatch, "payload width differs from PS");
  if (fl & flags::reserved) throw Error(Errc::protocol, "reserved flag bits set");
  const bool r_slot = run_.size() + 1 == secret_.k;
  if (r_slot && fl != 0) throw Error(Errc::protocol, "flags set on the R slot");
  if ((fl & flags::group_final) && (secret_.mode != Mode::aont || (fl & flags::padding))) {
    throw Error(Errc::protocol, "group-final flag outside an AONT data slot");
  }
  if ((fl & flags::flush_boundary) && (secret_.mode != Mode::full_block || (fl & flags::padding))) {
    throw Error(Errc::protocol, "flush-boundary flag outside a full-block data slot");
  }
  run_.emplace_back(fl, payload);
  ++expected_seq_;
  if (run_.size() < secret_.k) return {};
  finish_run();
  return assembler_.drain();
}

void ReceiverSession::finish_run() {
  const std::size_t k = secret_.k;
  const std::size_t ps = secret_.ps;
  std::vector<Block> in;
  in.reserve(k);
  for (auto& [f, b] : run_) in.push_back(std::move(b));
  std::vector<Block> plain(k);
  kernels::mask_blocks(parallel_, in, pad_.p, plain);
  counters_.block_xors += k;

  Block r = std::move(plain.back());
  if (r.is_zero()) throw Error(Errc::protocol, "recovered R = 0");

  std::vector<Block> data;
  std::vector<std::uint8_t> data_flags;
  for (std::size_t i = 0; i + 1 < k; ++i) {
    if (run_[i].first & flags::padding) continue;
    data.push_back(std::move(plain[i]));
    data_flags.push_back(run_[i].first);
  }
  run_.clear();

  switch (secret_.mode) {
    case Mode::base: {
      std::vector<Part> parts(data.size());
      kernels::extract_parts(parallel_, data, parts);
      for (const auto& p : parts) assembler_.push(p);
      break;
    }
    case Mode::full_block: {
      for (std::size_t i = 0; i < data.size(); ++i) {
        if (data_flags[i] & flags::flush_boundary) {
          const std::size_t end = data[i].last_set();
          if (end == ps) throw Error(Errc::malformed_block, "terminated block has no terminator bit");
          assembler_.push(data[i].to_bits().slice(0, end));
        } else {
          assembler_.push(data[i].to_bits());
        }
      }
      break;
    }
    case Mode::aont: {
      for (std::size_t i = 0; i < data.size(); ++i) {
        group_.push_back(std::move(data[i]));
        if (!(data_flags[i] & flags::group_final)) continue;
        if (group_.size() < 2) throw Error(Errc::protocol, "AONT group shorter than two blocks");
        std::vector<Block> x = aont_->inverse(group_, &counters_);
        group_.clear();
        x.pop_back();  // randomizer
        std::vector<Part> parts(x.size());
        kernels::extract_parts(parallel_, x, parts);
        for (const auto& p : parts) assembler_.push(p);
      }
      break;
    }
  }

  pad_ = transform(std::move(pad_), r, secret_.poly, &counters_);
}

void ReceiverSession::close() const {
  if (!run_.empty()) {
    throw Error(Errc::incomplete_stream, "stream ended inside a run (" + std::to_string(run_.size()) + " of " +
                                             std::to_string(secret_.k) + " payloads)");
  }
  if (!group_.empty()) throw Error(Errc::incomplete_message, "stream ended before the AONT group-final block");
  assembler_.finish();
}

ReceiverSession::State ReceiverSession::export_state() const {
  return {pad_, expected_seq_, run_, group_, assembler_.pending()};
}

void ReceiverSession::import_state(State st) {
  if (st.pad.p.size() != secret_.k) throw Error(Errc::invariant, "receiver state: pad size differs from k");
  pad_ = std::move(st.pad);
  expected_seq_ = st.expected_seq;
  run_ = std::move(st.run);
  group_ = std::move(st.group);
  assembler_.restore(std::move(st.pending_bits));
}

}  // namespace jigsaw
