#pragma once

// In-memory adversarial channel between a sender and a receiver, plus the
// run-differencing known-plaintext attack against captured traffic.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jigsaw/codec.hpp"
#include "jigsaw/error.hpp"
#include "jigsaw/keymat.hpp"
#include "jigsaw/wire.hpp"

namespace jigsaw {

struct ChannelConfig {
  double drop = 0.0;
  double duplicate = 0.0;
  double reorder = 0.0;  // probability of swapping a packet with its successor
  double tamper = 0.0;   // probability of flipping one random bit of a frame
  std::vector<std::uint8_t> seed = {0};
  std::size_t window = ReorderBuffer::kDefaultWindow;
  bool parallel = false;

  void validate() const;
};

struct Transcript {
  std::vector<std::uint8_t> delivered;
  std::uint64_t sent = 0;
  std::uint64_t dropped = 0;
  std::uint64_t duplicated = 0;
  std::uint64_t swapped = 0;
  std::uint64_t tampered = 0;
  std::uint64_t mac_rejections = 0;
  std::uint64_t accepted = 0;
  std::vector<std::uint64_t> dropped_seqs;
  std::optional<Errc> error;
  std::optional<std::uint64_t> missing_seq;
  std::string error_message;

  bool ok() const { return !error.has_value(); }
  /// Plain "key: value" lines.
  std::string report() const;

  friend bool operator==(const Transcript&, const Transcript&) = default;
};

/// Sends each message through a fresh sender (seeded from config.seed),
/// flushes, passes the packets through the faulty channel and decodes.
Transcript run_transfer(const SharedSecret& secret, std::span<const std::vector<std::uint8_t>> messages,
                        const ChannelConfig& config);
Transcript run_transfer(const SharedSecret& secret, std::span<const std::uint8_t> data, const ChannelConfig& config);

/// Passive capture of ciphertext payloads. Knows k and PS, and that capture
/// began at the start of the session, but nothing secret.
class AdversaryTap {
 public:
  AdversaryTap(std::size_t ps, std::size_t k) : ps_(ps), k_(k) {}

  void capture(const Packet& p);
  std::size_t k() const { return k_; }
  /// Number of leading rounds for which all k payloads were captured.
  std::size_t complete_rounds() const;
  /// Payloads C_1..C_k of round r; throws Errc::insufficient_capture.
  std::vector<Block> round(std::size_t r) const;

 private:
  std::size_t ps_;
  std::size_t k_;
  std::map<std::uint64_t, Block> captured_;
};

/// delta_i = C_i(r) ^ C_i(r+1) for the k-1 data slots; the pad cancels,
/// leaving X_i(r) ^ X_i(r+1) ^ R(r).
std::vector<Block> attack_round_difference(const AdversaryTap& tap, std::size_t r);

struct SlotPairCombination {
  std::size_t i;
  std::size_t j;
  Block value;  // delta_i ^ delta_j: R cancels too
};

/// All pairs i < j of difference blocks.
std::vector<SlotPairCombination> attack_eliminate_r(std::span<const Block> deltas);

/// Given the combination for (i, j) and three of the four pre-masking blocks,
/// returns the fourth, X_j(r+1).
Block recover_fourth(const Block& combination, const Block& xi_r, const Block& xi_next, const Block& xj_r);

struct AttackReport {
  Mode mode = Mode::base;
  std::size_t ps = 0;
  std::size_t k = 0;
  std::size_t rounds = 0;           // consecutive round pairs examined
  std::size_t pairs = 0;            // (round pair, i < j) combinations
  std::size_t identity_holds = 0;   // combination == X-only expression
  std::size_t delta_holds = 0;      // per-slot delta == X ^ X' ^ R
  std::size_t deltas = 0;
  std::size_t last_slot_checks = 0;
  std::size_t last_slot_violations = 0;  // slot k does not difference cleanly
  std::size_t recoveries = 0;
  std::size_t recovered = 0;        // fourth known-plaintext block matched

  std::string report() const;
};

/// Seeded attack workload: `count` messages of 1 to PS/2 random octets.
std::vector<std::vector<std::uint8_t>> demo_messages(std::size_t ps, std::size_t count,
                                                     std::span<const std::uint8_t> seed);

/// Runs a clean seeded transfer of `messages` with an instrumented sender,
/// captures it with an AdversaryTap, and checks both attack stages against the
/// sender's ground truth. The adversary's known plaintext is the embedded data
/// block for each slot (before the AONT in aont mode).
AttackReport run_attack_demo(const SharedSecret& secret, std::span<const std::vector<std::uint8_t>> messages,
                             std::span<const std::uint8_t> seed);

}  // namespace jigsaw
