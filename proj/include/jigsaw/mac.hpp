#pragma once

// HMAC over a pluggable hash, and the per-packet tag built from it.
//
// SHA-1 is the default because it is what the scheme was described with; it is
// deprecated for new designs and SHA-256 is available as a drop-in.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

namespace jigsaw {

enum class HashId : std::uint8_t { sha1, sha256 };

struct HashInfo {
  std::size_t block_size;
  std::size_t digest_size;
};

HashInfo hash_info(HashId id);
HashId parse_hash(std::string_view name);

struct MacConfig {
  HashId hash = HashId::sha1;
  std::vector<std::uint8_t> key;
  /// 0 means the full digest.
  std::size_t tag_len = 0;

  std::size_t effective_tag_len() const { return tag_len == 0 ? hash_info(hash).digest_size : tag_len; }
};

/// Keyed HMAC instance. The padded-key hash states are computed once, so
/// tagging many short messages is cheap.
class Hmac {
 public:
  explicit Hmac(const MacConfig& cfg);
  ~Hmac();
  Hmac(Hmac&&) noexcept;
  Hmac& operator=(Hmac&&) noexcept;

  std::size_t tag_len() const { return tag_len_; }

  /// Tag over the concatenation of the pieces.
  std::vector<std::uint8_t> tag(std::initializer_list<std::span<const std::uint8_t>> pieces) const;

 private:
  struct State;
  std::unique_ptr<State> st_;
  std::size_t tag_len_;
};

/// One-shot HMAC: H((K ^ opad) || H((K ^ ipad) || msg)), truncated to tag_len.
std::vector<std::uint8_t> hmac(const MacConfig& cfg, std::span<const std::uint8_t> msg);

/// Tag over BE64(seq) || flags || payload.
std::vector<std::uint8_t> tag_packet(const Hmac& mac, std::uint64_t seq, std::uint8_t flags,
                                     std::span<const std::uint8_t> payload);
std::vector<std::uint8_t> tag_packet(const MacConfig& cfg, std::uint64_t seq, std::uint8_t flags,
                                     std::span<const std::uint8_t> payload);

/// Never throws; compares every octet regardless of where a mismatch occurs.
bool verify_packet(const Hmac& mac, std::uint64_t seq, std::uint8_t flags, std::span<const std::uint8_t> payload,
                   std::span<const std::uint8_t> tag) noexcept;
bool verify_packet(const MacConfig& cfg, std::uint64_t seq, std::uint8_t flags,
                   std::span<const std::uint8_t> payload, std::span<const std::uint8_t> tag) noexcept;

bool constant_time_equal(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) noexcept;

}  // namespace jigsaw
