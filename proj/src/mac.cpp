#include "jigsaw/mac.hpp"

#include <openssl/crypto.h>
#include <openssl/evp.h>
#include <openssl/sha.h>

#include <stdexcept>
#include <string>

#include "jigsaw/error.hpp"

namespace jigsaw {

namespace {

const EVP_MD* evp_for(HashId id) {
  switch (id) {
    case HashId::sha1: return EVP_sha1();
    case HashId::sha256: return EVP_sha256();
  }
  throw Error(Errc::config, "unknown hash");
}

}  // namespace

HashInfo hash_info(HashId id) {
  switch (id) {
    case HashId::sha1: return {64, 20};
    case HashId::sha256: return {64, 32};
  }
  throw Error(Errc::config, "unknown hash");
}

HashId parse_hash(std::string_view name) {
  if (name == "sha1" || name == "SHA-1") return HashId::sha1;
  if (name == "sha256" || name == "SHA-256") return HashId::sha256;
  throw Error(Errc::config, "unknown hash '" + std::string(name) + "'");
}

// The midstates after K ^ ipad and K ^ opad are plain structs, so each tag
// is two struct copies and no allocation. The low-level digest API is
// deprecated in OpenSSL 3 but still shipped.
#pragma GCC diagnostic push
#pragma GCC diagnostic ignored "-Wdeprecated-declarations"

namespace {

template <class Ctx, int (*Init)(Ctx*), int (*Update)(Ctx*, const void*, size_t),
          int (*Final)(unsigned char*, Ctx*)>
struct Midstates {
  Ctx inner, outer;

  void init(std::span<const std::uint8_t> ipad, std::span<const std::uint8_t> opad) {
    Init(&inner);
    Update(&inner, ipad.data(), ipad.size());
    Init(&outer);
    Update(&outer, opad.data(), opad.size());
  }

  unsigned tag(std::initializer_list<std::span<const std::uint8_t>> pieces, std::uint8_t* out,
               unsigned digest_size) const {
    Ctx c = inner;
    for (auto p : pieces) Update(&c, p.data(), p.size());
    std::uint8_t d[EVP_MAX_MD_SIZE];
    Final(d, &c);
    c = outer;
    Update(&c, d, digest_size);
    Final(out, &c);
    OPENSSL_cleanse(&c, sizeof c);
    return digest_size;
  }
};

using Sha1Mid = Midstates<SHA_CTX, SHA1_Init, SHA1_Update, SHA1_Final>;
using Sha256Mid = Midstates<SHA256_CTX, SHA256_Init, SHA256_Update, SHA256_Final>;

}  // namespace

struct Hmac::State {
  HashId hash;
  HashInfo info;
  Sha1Mid sha1;
  Sha256Mid sha256;

  ~State() { OPENSSL_cleanse(this, sizeof *this); }
};

Hmac::Hmac(const MacConfig& cfg) : st_(std::make_unique<State>()) {
  if (cfg.key.empty()) throw Error(Errc::config, "MAC key must not be empty");
  st_->hash = cfg.hash;
  st_->info = hash_info(cfg.hash);
  tag_len_ = cfg.effective_tag_len();
  if (tag_len_ > st_->info.digest_size) throw Error(Errc::config, "tag length exceeds digest size");

  // Keys longer than the hash block are hashed first; shorter ones are zero-padded.
  std::vector<std::uint8_t> k0(st_->info.block_size, 0);
  if (cfg.key.size() > st_->info.block_size) {
    unsigned len = 0;
    EVP_Digest(cfg.key.data(), cfg.key.size(), k0.data(), &len, evp_for(cfg.hash), nullptr);
  } else {
    std::copy(cfg.key.begin(), cfg.key.end(), k0.begin());
  }
  std::vector<std::uint8_t> ipad(k0), opad(k0);
  for (auto& b : ipad) b ^= 0x36;
  for (auto& b : opad) b ^= 0x5C;

  if (cfg.hash == HashId::sha1) {
    st_->sha1.init(ipad, opad);
  } else {
    st_->sha256.init(ipad, opad);
  }
  OPENSSL_cleanse(k0.data(), k0.size());
  OPENSSL_cleanse(ipad.data(), ipad.size());
  OPENSSL_cleanse(opad.data(), opad.size());
}

Hmac::~Hmac() = default;
Hmac::Hmac(Hmac&&) noexcept = default;
Hmac& Hmac::operator=(Hmac&&) noexcept = default;

std::vector<std::uint8_t> Hmac::tag(std::initializer_list<std::span<const std::uint8_t>> pieces) const {
  std::uint8_t d[EVP_MAX_MD_SIZE];
  if (st_->hash == HashId::sha1) {
    st_->sha1.tag(pieces, d, 20);
  } else {
    st_->sha256.tag(pieces, d, 32);
  }
  return {d, d + tag_len_};
}

#pragma GCC diagnostic pop

std::vector<std::uint8_t> hmac(const MacConfig& cfg, std::span<const std::uint8_t> msg) {
  return Hmac(cfg).tag({msg});
}

std::vector<std::uint8_t> tag_packet(const Hmac& mac, std::uint64_t seq, std::uint8_t flags,
                                     std::span<const std::uint8_t> payload) {
  std::uint8_t header[9];
  for (int i = 0; i < 8; ++i) header[i] = static_cast<std::uint8_t>(seq >> (56 - 8 * i));
  header[8] = flags;
  return mac.tag({header, payload});
}

std::vector<std::uint8_t> tag_packet(const MacConfig& cfg, std::uint64_t seq, std::uint8_t flags,
                                     std::span<const std::uint8_t> payload) {
  return tag_packet(Hmac(cfg), seq, flags, payload);
}

bool constant_time_equal(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) noexcept {
  if (a.size() != b.size()) return false;
  std::uint8_t diff = 0;
  for (std::size_t i = 0; i < a.size(); ++i) diff |= static_cast<std::uint8_t>(a[i] ^ b[i]);
  return diff == 0;
}

bool verify_packet(const Hmac& mac, std::uint64_t seq, std::uint8_t flags, std::span<const std::uint8_t> payload,
                   std::span<const std::uint8_t> tag) noexcept {
  try {
    return constant_time_equal(tag_packet(mac, seq, flags, payload), tag);
  } catch (...) {
    return false;
  }
}

bool verify_packet(const MacConfig& cfg, std::uint64_t seq, std::uint8_t flags,
                   std::span<const std::uint8_t> payload, std::span<const std::uint8_t> tag) noexcept {
  try {
    return verify_packet(Hmac(cfg), seq, flags, payload, tag);
  } catch (...) {
    return false;
  }
}

}  // namespace jigsaw
