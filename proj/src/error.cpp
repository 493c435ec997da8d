#include "jigsaw/error.hpp"

namespace jigsaw {

const char* to_string(Errc code) {
  switch (code) {
    case Errc::size_mismatch: return "size-mismatch";
    case Errc::division_by_zero: return "division-by-zero";
    case Errc::invalid_random: return "invalid-random";
    case Errc::out_of_bounds: return "out-of-bounds";
    case Errc::config: return "config";
    case Errc::domain: return "domain";
    case Errc::bad_magic: return "bad-magic";
    case Errc::bad_version: return "bad-version";
    case Errc::truncated: return "truncated";
    case Errc::invariant: return "invariant";
    case Errc::count_mismatch: return "count-mismatch";
    case Errc::fingerprint_mismatch: return "fingerprint-mismatch";
    case Errc::malformed_block: return "malformed-block";
    case Errc::incomplete_stream: return "incomplete-stream";
    case Errc::incomplete_message: return "incomplete-message";
    case Errc::protocol: return "protocol";
    case Errc::missing_packet: return "missing-packet";
    case Errc::insufficient_capture: return "insufficient-capture";
  }
  return "unknown";
}

ErrorClass classify(Errc code) {
  switch (code) {
    case Errc::bad_magic:
    case Errc::bad_version:
    case Errc::truncated:
    case Errc::invariant:
    case Errc::count_mismatch:
    case Errc::fingerprint_mismatch:
      return ErrorClass::parse;
    case Errc::malformed_block:
    case Errc::incomplete_stream:
    case Errc::incomplete_message:
    case Errc::protocol:
    case Errc::missing_packet:
    case Errc::insufficient_capture:
      return ErrorClass::protocol;
    default:
      return ErrorClass::usage;
  }
}

}  // namespace jigsaw
