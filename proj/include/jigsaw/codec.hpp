#pragma once

// Sender and receiver session state machines.
//
// The sender tears each message into parts, embeds every part in its own
// block and queues the blocks. Every k-1 queued blocks form a run:
//
//   payload_i = X_i ^ P_i      (i < k)
//   payload_k = R ^ P_k        (R fresh, nonzero)
//   P <- transform(P, R)
//
// Queued blocks carry over between push() calls, so runs may straddle message
// boundaries; flush() closes the stream by padding the last run with empty
// parts. The receiver mirrors the pad and undoes each run once all k of its
// payloads are in.

#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "jigsaw/aont.hpp"
#include "jigsaw/bits.hpp"
#include "jigsaw/counters.hpp"
#include "jigsaw/keymat.hpp"
#include "jigsaw/rng.hpp"
#include "jigsaw/tear.hpp"

namespace jigsaw {

namespace flags {
inline constexpr std::uint8_t group_final = 0x01;
/// full-block mode: the payload is a short part terminated by 1 0...0.
inline constexpr std::uint8_t flush_boundary = 0x02;
inline constexpr std::uint8_t padding = 0x04;
inline constexpr std::uint8_t reserved = 0xF8;
}  // namespace flags

struct Frame {
  std::uint64_t seq = 0;
  std::uint8_t flags = 0;
  Block payload;

  friend bool operator==(const Frame&, const Frame&) = default;
};

/// A block waiting for a slot in the next run, before masking.
struct PendingSlot {
  Block block;
  std::uint8_t flags = 0;
  /// aont mode: the block before the transform at the same group position.
  std::optional<Block> plain;

  friend bool operator==(const PendingSlot&, const PendingSlot&) = default;
};

/// White-box view of one emitted run, for verification harnesses.
struct RunTrace {
  std::uint64_t run_index = 0;
  std::uint64_t first_seq = 0;
  std::vector<Block> slots;  // X_1..X_{k-1}, pre-masking
  std::vector<Block> plain;  // known-plaintext view of each slot
  std::vector<std::uint8_t> slot_flags;
  Block r;
  std::vector<Block> pads;      // P_1..P_k used for this run
  std::vector<Block> payloads;  // all k
};

class SenderSession {
 public:
  struct State {
    PadState pad;
    std::uint64_t next_seq = 0;
    std::vector<PendingSlot> pending;
    BitString leftover;  // full-block mode: bits short of a whole block

    friend bool operator==(const State&, const State&) = default;
  };

  SenderSession(SharedSecret secret, RngStreams rng, bool parallel = false);

  std::vector<Frame> push(std::span<const std::uint8_t> data);
  /// Pads and emits any partial run. No-op when nothing is buffered.
  std::vector<Frame> flush();

  const SharedSecret& secret() const { return secret_; }
  const PadState& pad() const { return pad_; }
  std::uint64_t next_seq() const { return next_seq_; }
  std::size_t buffered() const { return pending_.size(); }
  const OpCounters& counters() const { return counters_; }
  /// Data slots masked so far, padding included.
  std::uint64_t masked_slots() const { return masked_slots_; }
  std::uint64_t runs() const { return runs_; }

  void set_observer(std::function<void(const RunTrace&)> obs) { observer_ = std::move(obs); }

  State export_state() const;
  void import_state(State st);

 private:
  void enqueue_parts(const std::vector<Part>& parts, std::vector<Block>* embedded);
  void emit_ready(std::vector<Frame>& out);
  void emit_run(std::vector<Frame>& out);
  PendingSlot padding_slot();

  SharedSecret secret_;
  RngStreams rng_;
  bool parallel_;
  std::optional<LinearAont> aont_;
  PadState pad_;
  std::uint64_t next_seq_ = 0;
  std::deque<PendingSlot> pending_;
  BitString leftover_;
  OpCounters counters_;
  std::uint64_t masked_slots_ = 0;
  std::uint64_t runs_ = 0;
  std::function<void(const RunTrace&)> observer_;
};

class ReceiverSession {
 public:
  struct State {
    PadState pad;
    std::uint64_t expected_seq = 0;
    std::vector<std::pair<std::uint8_t, Block>> run;
    std::vector<Block> group;
    BitString pending_bits;

    friend bool operator==(const State&, const State&) = default;
  };

  explicit ReceiverSession(SharedSecret secret, bool parallel = false);

  /// Payloads must arrive in sequence order. Returns newly completed octets.
  std::vector<std::uint8_t> push(std::uint8_t flags, const Block& payload);
  std::vector<std::uint8_t> push(const Frame& frame);
  /// Throws if the stream ends mid-run, mid-group or mid-octet.
  void close() const;

  const SharedSecret& secret() const { return secret_; }
  const PadState& pad() const { return pad_; }
  std::uint64_t expected_seq() const { return expected_seq_; }
  const OpCounters& counters() const { return counters_; }

  State export_state() const;
  void import_state(State st);

 private:
  void finish_run();

  SharedSecret secret_;
  bool parallel_;
  std::optional<LinearAont> aont_;
  PadState pad_;
  std::uint64_t expected_seq_ = 0;
  std::vector<std::pair<std::uint8_t, Block>> run_;
  std::vector<Block> group_;
  PartAssembler assembler_;
  OpCounters counters_;
};

}  // namespace jigsaw
