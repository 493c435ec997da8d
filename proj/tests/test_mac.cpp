#include <openssl/evp.h>
#include <openssl/hmac.h>

#include <random>
#include <string>

#include "doctest.h"
#include "jigsaw/bits.hpp"
#include "jigsaw/mac.hpp"
#include "oracles.hpp"

using namespace jigsaw;

namespace {

std::vector<std::uint8_t> str(const std::string& s) { return {s.begin(), s.end()}; }

std::vector<std::uint8_t> openssl_hmac(const EVP_MD* md, std::span<const std::uint8_t> key,
                                       std::span<const std::uint8_t> msg) {
  unsigned char out[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  HMAC(md, key.data(), static_cast<int>(key.size()), msg.data(), msg.size(), out, &len);
  return {out, out + len};
}

}  // namespace

TEST_CASE("HMAC-SHA-1 published vectors") {
  struct V {
    std::vector<std::uint8_t> key, msg;
    const char* tag;
  };
  const std::vector<V> vs = {
      {std::vector<std::uint8_t>(20, 0x0B), str("Hi There"), "b617318655057264e28bc0b6fb378c8ef146be00"},
      {str("Jefe"), str("what do ya want for nothing?"), "effcdf6ae5eb2fa2d27416d5f184df9c259a7c79"},
      {std::vector<std::uint8_t>(20, 0xAA), std::vector<std::uint8_t>(50, 0xDD),
       "125d7342b9ac11cd91a39af48aa17b4f63f175d3"},
      {std::vector<std::uint8_t>(80, 0xAA), str("Test Using Larger Than Block-Size Key - Hash Key First"),
       "aa4ae5e15272d00e95705637ce8a3b55ed402112"},
  };
  for (const auto& v : vs) CHECK(to_hex(hmac({HashId::sha1, v.key, 0}, v.msg)) == v.tag);
}

TEST_CASE("HMAC-SHA-256 published vector") {
  CHECK(to_hex(hmac({HashId::sha256, std::vector<std::uint8_t>(20, 0x0B), 0}, str("Hi There"))) ==
        "b0344c61d8db38535ca8afceaf0bf12b881dc200c9833da726e9376c2e32cff7");
}

TEST_CASE("HMAC agrees with OpenSSL's HMAC for random keys and messages") {
  std::mt19937_64 g(8);
  for (int i = 0; i < 200; ++i) {
    const auto key = oracle::random_bytes(g, 1 + g() % 150);
    const auto msg = oracle::random_bytes(g, g() % 300);
    REQUIRE(hmac({HashId::sha1, key, 0}, msg) == openssl_hmac(EVP_sha1(), key, msg));
    REQUIRE(hmac({HashId::sha256, key, 0}, msg) == openssl_hmac(EVP_sha256(), key, msg));
  }
}

TEST_CASE("truncation and config") {
  const auto key = std::vector<std::uint8_t>(20, 0x0B);
  CHECK(to_hex(hmac({HashId::sha1, key, 10}, str("Hi There"))) == "b617318655057264e28b");
  CHECK_THROWS(Hmac(MacConfig{HashId::sha1, {}, 0}));
  CHECK_THROWS(Hmac(MacConfig{HashId::sha1, key, 21}));
  CHECK(parse_hash("sha1") == HashId::sha1);
  CHECK_THROWS(parse_hash("md5"));
}

TEST_CASE("one-bit message changes change the tag") {
  std::mt19937_64 g(9);
  const MacConfig cfg{HashId::sha1, oracle::random_bytes(g, 20), 0};
  for (int i = 0; i < 1000; ++i) {
    auto msg = oracle::random_bytes(g, 1 + g() % 64);
    const auto t = hmac(cfg, msg);
    REQUIRE(hmac(cfg, msg) == t);
    msg[g() % msg.size()] ^= static_cast<std::uint8_t>(1u << (g() % 8));
    REQUIRE(hmac(cfg, msg) != t);
  }
}

TEST_CASE("packet tags cover seq, flags and payload") {
  std::mt19937_64 g(10);
  const MacConfig cfg{HashId::sha1, oracle::random_bytes(g, 16), 0};
  const Hmac mac(cfg);
  const auto payload = oracle::random_bytes(g, 16);
  const auto tag = tag_packet(mac, 77, 4, payload);

  std::vector<std::uint8_t> msg{0, 0, 0, 0, 0, 0, 0, 77, 4};
  msg.insert(msg.end(), payload.begin(), payload.end());
  CHECK(tag == hmac(cfg, msg));
  CHECK(tag == tag_packet(cfg, 77, 4, payload));

  CHECK(verify_packet(mac, 77, 4, payload, tag));
  CHECK(verify_packet(cfg, 77, 4, payload, tag));
  CHECK_FALSE(verify_packet(mac, 77 ^ (1ull << 63), 4, payload, tag));
  CHECK_FALSE(verify_packet(mac, 77, 5, payload, tag));
  auto p2 = payload;
  p2[3] ^= 0x10;
  CHECK_FALSE(verify_packet(mac, 77, 4, p2, tag));
  auto t2 = tag;
  t2[19] ^= 1;
  CHECK_FALSE(verify_packet(mac, 77, 4, payload, t2));
  CHECK_FALSE(verify_packet(mac, 77, 4, payload, std::span(tag).first(19)));
}

TEST_CASE("constant_time_equal") {
  const std::vector<std::uint8_t> a{1, 2, 3}, b{1, 2, 4};
  CHECK(constant_time_equal(a, a));
  CHECK_FALSE(constant_time_equal(a, b));
  CHECK_FALSE(constant_time_equal(a, std::span(a).first(2)));
}
