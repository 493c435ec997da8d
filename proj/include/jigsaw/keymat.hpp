#pragma once

// Pre-shared key material: the pad P_1..P_k, its evolution between runs, and
// the keyfile that carries it between the two endpoints.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "jigsaw/bits.hpp"
#include "jigsaw/counters.hpp"
#include "jigsaw/field.hpp"
#include "jigsaw/rng.hpp"

namespace jigsaw {

enum class Mode : std::uint8_t { base = 0, full_block = 1, aont = 2 };

const char* to_string(Mode m);
/// Accepts "base", "full-block"/"full_block", "aont".
Mode parse_mode(std::string_view name);

struct SharedSecret {
  std::size_t ps = 0;
  std::size_t k = 0;
  std::vector<Block> p_initial;
  std::vector<std::uint8_t> mac_key;
  ReductionPoly poly;
  Block lambda;
  std::uint32_t min_part_bits = 1;
  Mode mode = Mode::base;

  /// Throws Error(Errc::invariant) on any violation.
  void validate(bool check_irreducible = true) const;

  /// Largest part the tearing step may produce in this mode.
  std::size_t max_part_bits() const { return mode == Mode::full_block ? ps : ps - 2; }

  friend bool operator==(const SharedSecret&, const SharedSecret&) = default;
};

struct PadState {
  std::vector<Block> p;
  std::uint64_t run_index = 0;

  static PadState initial(const SharedSecret& s) { return {s.p_initial, 0}; }
  friend bool operator==(const PadState&, const PadState&) = default;
};

/// Key evolution between runs: P_i ^= r for i < k, P_k *= r.
/// Costs k-1 block XORs and one multiplication.
PadState transform(PadState state, const Block& r, const ReductionPoly& poly, OpCounters* counters = nullptr);

/// Octets [offset, offset+len) of the initial P_block_index (1-based).
std::vector<std::uint8_t> derive_mac_key(const SharedSecret& secret, std::size_t block_index,
                                         std::size_t offset_octets, std::size_t len_octets);

struct KeygenParams {
  std::size_t ps = 1024;
  std::size_t k = 7;
  Mode mode = Mode::base;
  std::uint32_t min_part_bits = 1;
  /// Required when there is no shipped default for ps.
  std::optional<ReductionPoly> poly;
};

SharedSecret keygen(const KeygenParams& params, Rng& rng);

inline constexpr std::uint8_t kKeyfileVersion = 0x01;

std::vector<std::uint8_t> save_keyfile(const SharedSecret& secret);
SharedSecret load_keyfile(std::span<const std::uint8_t> bytes, bool check_irreducible = true);

/// SHA-256 of the serialized keyfile.
std::vector<std::uint8_t> fingerprint(std::span<const std::uint8_t> keyfile_bytes);

}  // namespace jigsaw
