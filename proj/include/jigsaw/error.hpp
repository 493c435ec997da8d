#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace jigsaw {

enum class Errc {
  size_mismatch,
  division_by_zero,
  invalid_random,
  out_of_bounds,
  config,
  domain,
  // keyfile / stream / state parsing
  bad_magic,
  bad_version,
  truncated,
  invariant,
  count_mismatch,
  fingerprint_mismatch,
  // protocol
  malformed_block,
  incomplete_stream,
  incomplete_message,
  protocol,
  missing_packet,
  insufficient_capture,
};

const char* to_string(Errc code);

/// Coarse grouping used by the CLI to pick an exit status.
enum class ErrorClass { parse, auth, protocol, usage };

ErrorClass classify(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// A packet the receiver needs never arrived (or only arrived corrupted).
class MissingPacketError : public Error {
 public:
  explicit MissingPacketError(std::uint64_t seq)
      : Error(Errc::missing_packet, "missing packet seq=" + std::to_string(seq)), seq_(seq) {}
  std::uint64_t seq() const noexcept { return seq_; }

 private:
  std::uint64_t seq_;
};

}  // namespace jigsaw
