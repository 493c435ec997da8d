#pragma once

// Session state persisted between CLI invocations, bound to one keyfile.
//
// "JSST" | version (1) | role (1: 'S' or 'R') | keyfile fingerprint (32) |
// PS/8 (4) | k (2) | run_index (8) | P_1..P_k | seq (8) | role body
//
// Sender body:   pending count (4) | per slot: flags (1), has_plain (1),
//                block, [plain] | leftover bit count (8) | leftover octets
// Receiver body: run count (2) | per slot: flags (1), block |
//                group count (4) | blocks | pending bit count (8) | octets

#include <cstdint>
#include <span>
#include <vector>

#include "jigsaw/codec.hpp"

namespace jigsaw {

inline constexpr std::uint8_t kStateVersion = 0x01;

std::vector<std::uint8_t> save_sender_state(const SenderSession::State& st, const SharedSecret& secret,
                                            std::span<const std::uint8_t> key_fingerprint);
SenderSession::State load_sender_state(std::span<const std::uint8_t> bytes, const SharedSecret& secret,
                                       std::span<const std::uint8_t> key_fingerprint);

std::vector<std::uint8_t> save_receiver_state(const ReceiverSession::State& st, const SharedSecret& secret,
                                              std::span<const std::uint8_t> key_fingerprint);
ReceiverSession::State load_receiver_state(std::span<const std::uint8_t> bytes, const SharedSecret& secret,
                                           std::span<const std::uint8_t> key_fingerprint);

}  // namespace jigsaw
