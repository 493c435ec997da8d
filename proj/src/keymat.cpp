#include "jigsaw/keymat.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstring>
#include <string>

#include "jigsaw/byteio.hpp"
#include "jigsaw/error.hpp"

namespace jigsaw {

namespace {

constexpr std::uint8_t kMagic[4] = {'J', 'S', 'A', 'W'};

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(Errc::invariant, "shared secret: " + what);
}

}  // namespace

const char* to_string(Mode m) {
  switch (m) {
    case Mode::base: return "base";
    case Mode::full_block: return "full-block";
    case Mode::aont: return "aont";
  }
  return "?";
}

Mode parse_mode(std::string_view name) {
  if (name == "base") return Mode::base;
  if (name == "full-block" || name == "full_block") return Mode::full_block;
  if (name == "aont") return Mode::aont;
  throw Error(Errc::config, "unknown mode '" + std::string(name) + "'");
}

void SharedSecret::validate(bool check_irreducible) const {
  require(ps >= 8 && ps % 8 == 0, "PS must be a positive multiple of 8");
  require(k >= 2, "k must be at least 2");
  require(p_initial.size() == k, "expected k pad blocks");
  for (const auto& b : p_initial) {
    require(b.bits() == ps, "pad block width differs from PS");
    require(!b.is_zero(), "pad blocks must be nonzero");
  }
  require(!mac_key.empty() && mac_key.size() <= 64, "MAC key must be 1..64 octets");
  require(poly.degree() == ps, "reduction polynomial degree differs from PS");
  require(lambda.bits() == ps, "lambda width differs from PS");
  require(!lambda.is_zero() && !lambda.is_one(), "lambda must not be 0 or 1");
  if (mode == Mode::full_block) {
    require(min_part_bits >= 1 && min_part_bits <= ps, "min_part_bits out of range");
  } else {
    require(min_part_bits >= 1 && min_part_bits <= ps - 2, "min_part_bits must be in [1, PS-2]");
  }
  if (check_irreducible) require(is_irreducible(poly), "reduction polynomial is reducible");
}

PadState transform(PadState state, const Block& r, const ReductionPoly& poly, OpCounters* counters) {
  if (r.is_zero()) throw Error(Errc::invalid_random, "transform with R = 0");
  const std::size_t k = state.p.size();
  for (std::size_t i = 0; i + 1 < k; ++i) state.p[i] ^= r;
  state.p[k - 1] = mul(state.p[k - 1], r, poly);
  count_xors(counters, k - 1);
  count_mults(counters, 1);
  ++state.run_index;
  return state;
}

std::vector<std::uint8_t> derive_mac_key(const SharedSecret& secret, std::size_t block_index,
                                         std::size_t offset_octets, std::size_t len_octets) {
  if (block_index < 1 || block_index > secret.p_initial.size()) {
    throw Error(Errc::out_of_bounds, "MAC key block index out of range");
  }
  const auto bytes = secret.p_initial[block_index - 1].to_bytes();
  if (len_octets == 0 || offset_octets + len_octets > bytes.size()) {
    throw Error(Errc::out_of_bounds, "MAC key slice out of range");
  }
  return {bytes.begin() + static_cast<std::ptrdiff_t>(offset_octets),
          bytes.begin() + static_cast<std::ptrdiff_t>(offset_octets + len_octets)};
}

SharedSecret keygen(const KeygenParams& params, Rng& rng) {
  if (params.ps < 8 || params.ps % 8 != 0) throw Error(Errc::config, "PS must be a positive multiple of 8");
  if (params.k < 2) throw Error(Errc::config, "k must be at least 2 (k = 1 leaves no data slot)");
  if (params.k > 0xFFFF) throw Error(Errc::config, "k does not fit the keyfile");

  SharedSecret s;
  s.ps = params.ps;
  s.k = params.k;
  s.mode = params.mode;
  s.min_part_bits = params.min_part_bits;
  if (params.poly) {
    s.poly = *params.poly;
  } else if (auto def = default_poly(params.ps)) {
    s.poly = *def;
  } else {
    throw Error(Errc::config, "no default reduction polynomial for PS=" + std::to_string(params.ps) +
                                  "; supply one explicitly");
  }
  s.p_initial.reserve(s.k);
  for (std::size_t i = 0; i < s.k; ++i) s.p_initial.push_back(rng.nonzero_block(s.ps));
  s.lambda = field_x(s.poly);
  s.mac_key = derive_mac_key(s, s.k, 0, std::min<std::size_t>(s.ps / 8, 64));

  try {
    s.validate(params.poly.has_value());
  } catch (const Error& e) {
    throw Error(Errc::config, e.what());
  }
  return s;
}

std::vector<std::uint8_t> save_keyfile(const SharedSecret& s) {
  ByteWriter w;
  w.bytes(kMagic);
  w.u8(kKeyfileVersion);
  w.u32(static_cast<std::uint32_t>(s.ps / 8));
  w.u16(static_cast<std::uint16_t>(s.k));
  w.u8(static_cast<std::uint8_t>(s.mode));
  w.u32(s.min_part_bits);
  w.bytes(s.poly.low_bits().to_bytes());
  w.bytes(s.lambda.to_bytes());
  w.u16(static_cast<std::uint16_t>(s.mac_key.size()));
  w.bytes(s.mac_key);
  for (const auto& b : s.p_initial) w.bytes(b.to_bytes());
  return w.take();
}

SharedSecret load_keyfile(std::span<const std::uint8_t> bytes, bool check_irreducible) {
  ByteReader r(bytes, "keyfile");
  if (bytes.size() < 4 || std::memcmp(r.bytes(4).data(), kMagic, 4) != 0) {
    throw Error(Errc::bad_magic, "keyfile: bad magic (expected JSAW)");
  }
  if (const auto v = r.u8(); v != kKeyfileVersion) {
    throw Error(Errc::bad_version, "keyfile: unsupported version " + std::to_string(v));
  }
  SharedSecret s;
  const std::uint32_t octets = r.u32();
  if (octets == 0 || octets > (1u << 20)) throw Error(Errc::invariant, "keyfile: implausible PS");
  s.ps = std::size_t{octets} * 8;
  s.k = r.u16();
  const std::uint8_t mode = r.u8();
  if (mode > 2) throw Error(Errc::invariant, "keyfile: unknown mode " + std::to_string(mode));
  s.mode = static_cast<Mode>(mode);
  s.min_part_bits = r.u32();
  s.poly = ReductionPoly(Block::from_bytes(r.bytes(octets), s.ps));
  s.lambda = Block::from_bytes(r.bytes(octets), s.ps);
  const std::uint16_t mac_len = r.u16();
  const auto mac = r.bytes(mac_len);
  s.mac_key.assign(mac.begin(), mac.end());
  for (std::size_t i = 0; i < s.k; ++i) s.p_initial.push_back(Block::from_bytes(r.bytes(octets), s.ps));
  if (r.remaining() != 0) throw Error(Errc::invariant, "keyfile: trailing octets");
  s.validate(check_irreducible);
  return s;
}

std::vector<std::uint8_t> fingerprint(std::span<const std::uint8_t> keyfile_bytes) {
  std::vector<std::uint8_t> out(32);
  unsigned len = 0;
  EVP_Digest(keyfile_bytes.data(), keyfile_bytes.size(), out.data(), &len, EVP_sha256(), nullptr);
  return out;
}

}  // namespace jigsaw
