// Acceptance checks, one PASS/FAIL line per criterion.
//
//   acceptance            run all
//   acceptance --only N   run criterion N

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <set>
#include <string>

#include "jigsaw/aont.hpp"
#include "jigsaw/bench.hpp"
#include "jigsaw/endpoint.hpp"
#include "jigsaw/field.hpp"
#include "jigsaw/mac.hpp"
#include "jigsaw/simnet.hpp"
#include "jigsaw/tear.hpp"
#include "jigsaw/wire.hpp"

using namespace jigsaw;
using Clock = std::chrono::steady_clock;

namespace {

struct Result {
  bool pass;
  std::string detail;
};

std::vector<std::uint8_t> seed_of(std::uint64_t s) {
  std::vector<std::uint8_t> v(8);
  for (int i = 0; i < 8; ++i) v[i] = static_cast<std::uint8_t>(s >> (8 * i));
  return v;
}

SharedSecret make(std::size_t ps, std::size_t k, Mode mode, std::uint64_t seed, std::uint32_t min_part = 1) {
  SeededRng rng(seed_of(seed), "keygen");
  KeygenParams p;
  p.ps = ps;
  p.k = k;
  p.mode = mode;
  p.min_part_bits = min_part;
  return keygen(p, rng);
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Block random_block(std::mt19937_64& g, std::size_t ps) {
  std::vector<std::uint8_t> b(ps / 8);
  for (auto& x : b) x = static_cast<std::uint8_t>(g());
  return Block::from_bytes(b, ps);
}

// send -> packet-stream file bytes -> recv
std::vector<std::uint8_t> roundtrip(const SharedSecret& s, std::span<const std::uint8_t> data, std::uint64_t seed) {
  PacketSender tx(s, RngStreams::seeded(seed_of(seed)));
  PacketStream st;
  st.header = {s.ps, s.k, tx.tag_len()};
  st.packets = tx.send(data);
  auto tail = tx.flush();
  st.packets.insert(st.packets.end(), tail.begin(), tail.end());
  const PacketStream back = read_stream(write_stream(st));

  PacketReceiver rx(s);
  std::vector<std::uint8_t> out;
  out.reserve(data.size());
  for (const auto& p : back.packets) {
    auto b = rx.receive(p);
    out.insert(out.end(), b.begin(), b.end());
  }
  rx.finish(back.packets.size());
  return out;
}

Result c1_roundtrip() {
  const auto t0 = Clock::now();
  std::mt19937_64 g(20240601);
  const std::size_t sizes[] = {8, 16, 64, 128, 1024};
  const std::size_t ks[] = {2, 3, 7, 16};
  std::size_t ok = 0, total = 0, bytes = 0;
  std::string first_fail;
  for (int i = 0; i < 500; ++i) {
    const std::size_t ps = sizes[g() % 5], k = ks[g() % 4];
    const Mode mode = static_cast<Mode>(g() % 3);
    // a handful of full 1 MiB transfers, log-uniform sizes otherwise
    std::size_t n;
    if (i % 100 == 0) {
      n = std::size_t{1} << 20;
    } else {
      n = static_cast<std::size_t>(std::exp2(std::uniform_real_distribution<double>(0.0, 20.0)(g))) - 1;
    }
    std::vector<std::uint8_t> d(n);
    for (auto& x : d) x = static_cast<std::uint8_t>(g());
    const auto min_part = static_cast<std::uint32_t>(1 + g() % (ps - 2));
    const SharedSecret s = make(ps, k, mode, i, min_part);
    ++total;
    bytes += n;
    try {
      if (roundtrip(s, d, 5000 + i) == d) {
        ++ok;
        continue;
      }
    } catch (const std::exception& e) {
      if (first_fail.empty()) first_fail = e.what();
    }
    if (first_fail.empty()) {
      first_fail = "mismatch at ps=" + std::to_string(ps) + " k=" + std::to_string(k) + " mode=" + to_string(mode);
    }
  }
  const double secs = seconds_since(t0);
  char buf[200];
  std::snprintf(buf, sizeof buf, "%zu/%zu configurations byte-exact, %.1f MiB, %.1f s (limit 60 s)", ok, total,
                bytes / 1048576.0, secs);
  std::string detail = buf;
  if (!first_fail.empty()) detail += "; first failure: " + first_fail;
  return {ok == total && secs < 60.0, detail};
}

Result c2_worked_example() {
  const BitString marked = affix(BitString::from_string("01101"), 8);
  const Block e = embed(marked, 2, 8);
  const Block c = e ^ Block::from_bits(BitString::from_string("11000110"));
  const Part back = extract(c ^ Block::from_bits(BitString::from_string("11000110")));
  const bool pass = marked.to_string() == "1011011" && e.to_string() == "01011011" && c.to_string() == "10011101" &&
                    back.to_string() == "01101";
  return {pass, "affix=" + marked.to_string() + " embed=" + e.to_string() + " masked=" + c.to_string() +
                    " extract=" + back.to_string()};
}

Result c3_counts() {
  const Counts a = paper_counts(10, 7, CountMode::base), b = paper_counts(20, 7, CountMode::base);
  bool pass = a == Counts{16, 1} && b == Counts{32, 2};
  std::mt19937_64 g(3);
  std::uint64_t residual = 0, sessions = 0;
  for (Mode mode : {Mode::base, Mode::full_block}) {
    for (std::size_t k : {2u, 3u, 7u, 16u}) {
      for (int rep = 0; rep < 5; ++rep) {
        const SharedSecret s = make(128, k, mode, 100 + rep);
        SenderSession tx(s, RngStreams::seeded(seed_of(rep)));
        ReceiverSession rx(s);
        for (int m = 0; m < 4; ++m) {
          std::vector<std::uint8_t> d(g() % 2000);
          for (const auto& f : tx.push(d)) rx.push(f);
        }
        for (const auto& f : tx.flush()) rx.push(f);
        const Counts want = instrumented_closed_form(tx.masked_slots(), tx.runs(), k);
        residual += (tx.counters().block_xors > want.xors ? tx.counters().block_xors - want.xors
                                                          : want.xors - tx.counters().block_xors) +
                    (tx.counters().block_mults > want.mults ? tx.counters().block_mults - want.mults
                                                            : want.mults - tx.counters().block_mults);
        if (!(rx.counters() == tx.counters())) ++residual;
        ++sessions;
      }
    }
  }
  pass = pass && residual == 0;
  return {pass, "closed form (10,7)=(" + std::to_string(a.xors) + "," + std::to_string(a.mults) + ") (20,7)=(" +
                    std::to_string(b.xors) + "," + std::to_string(b.mults) + "); " + std::to_string(sessions) +
                    " sessions reconcile with N = data slots + runs, residual " + std::to_string(residual)};
}

Result c4_aont_counts() {
  const auto f = *default_poly(64);
  const LinearAont t(field_x(f), f);
  std::mt19937_64 g(4);
  bool ok = true;
  for (std::size_t s = 2; s <= 64; ++s) {
    std::vector<Block> x;
    for (std::size_t i = 0; i < s; ++i) x.push_back(random_block(g, 64));
    OpCounters c;
    t.forward(x, &c);
    ok = ok && c.block_xors == 2 * (s - 1) && c.block_mults == 1;
  }
  const Counts a = paper_counts(10, 7, CountMode::aont);
  return {ok && a == Counts{34, 2}, std::string("forward on s=2..64: ") + (ok ? "2(s-1) XORs, 1 mult" : "MISMATCH") +
                                        "; closed form aont (10,7)=(" + std::to_string(a.xors) + "," +
                                        std::to_string(a.mults) + ")"};
}

Result c5_k2_minimal() {
  const auto t0 = Clock::now();
  std::uint64_t violations = 0, ties = 0;
  for (std::uint64_t n = 3; n <= 512; ++n) {
    const auto best = paper_counts(n, 2, CountMode::base).xors;
    std::uint64_t prev_mults = paper_counts(n, 2, CountMode::base).mults;
    for (std::uint64_t k = 2; k <= n; ++k) {
      const Counts c = paper_counts(n, k, CountMode::base);
      if (best > c.xors) ++violations;
      if (k > 2 && best == c.xors) ++ties;
      if (c.mults > prev_mults) ++violations;
      prev_mults = c.mults;
    }
  }
  const double secs = seconds_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof buf, "%llu violations, %llu ties with k=2, %.3f s (limit 1 s)",
                static_cast<unsigned long long>(violations), static_cast<unsigned long long>(ties), secs);
  return {violations == 0 && secs < 1.0, buf};
}

Result c6_field() {
  const auto f8 = *default_poly(8);
  std::size_t inv_ok = 0;
  for (std::uint64_t a = 1; a < 256; ++a) {
    const Block b = Block::from_uint(a, 8);
    if (mul(b, inv(b, f8), f8).is_one()) ++inv_ok;
  }
  std::mt19937_64 g(6);
  std::size_t checks = 0, bad = 0;
  for (std::size_t ps : {64u, 128u}) {
    const auto f = *default_poly(ps);
    for (int i = 0; i < 10000; ++i) {
      const Block a = random_block(g, ps), b = random_block(g, ps), c = random_block(g, ps);
      if (mul(a, mul(b, c, f), f) != mul(mul(a, b, f), c, f)) ++bad;
      if (mul(a, b ^ c, f) != (mul(a, b, f) ^ mul(a, c, f))) ++bad;
      if (mul(a, b, f) != mul(b, a, f)) ++bad;
      checks += 3;
    }
  }
  return {inv_ok == 255 && bad == 0, std::to_string(inv_ok) + "/255 inverses; " + std::to_string(checks - bad) + "/" +
                                         std::to_string(checks) + " axiom checks at PS 64 and 128"};
}

Result c7_all_or_nothing() {
  const auto f = ReductionPoly::from_exponents(4, {1, 0});
  const Block lam = Block::from_uint(2, 4);
  std::size_t cases = 0, perms = 0;
  for (std::uint64_t a = 0; a < 16; ++a) {
    for (std::uint64_t b = 0; b < 16; ++b) {
      const std::uint64_t fixed[2] = {a, b};
      for (std::size_t j = 0; j < 3; ++j) {
        for (std::size_t i = 0; i < 3; ++i) {
          unsigned seen = 0;
          for (std::uint64_t v = 0; v < 16; ++v) {
            std::vector<Block> y(3);
            for (std::size_t p = 0, q = 0; p < 3; ++p) y[p] = Block::from_uint(p == j ? v : fixed[q++], 4);
            seen |= 1u << aont_inverse(y, lam, f)[i].to_uint();
          }
          ++cases;
          if (seen == 0xFFFF) ++perms;
        }
      }
    }
  }
  return {perms == cases, std::to_string(perms) + "/" + std::to_string(cases) +
                              " (fixed outputs, withheld index, input index) cases are permutations of GF(16)"};
}

Result c8_otp() {
  const Block x = embed(affix(BitString::from_string("01101"), 8), 2, 8);
  std::set<std::uint64_t> seen;
  for (std::uint64_t p = 0; p < 256; ++p) seen.insert((x ^ Block::from_uint(p, 8)).to_uint());
  return {seen.size() == 256, std::to_string(seen.size()) + "/256 distinct ciphertexts for X=" + x.to_string()};
}

Result c9_mac() {
  struct V {
    std::vector<std::uint8_t> key;
    std::string msg;
    const char* tag;
  };
  const std::vector<V> vs = {
      {std::vector<std::uint8_t>(20, 0x0B), "Hi There", "b617318655057264e28bc0b6fb378c8ef146be00"},
      {{'J', 'e', 'f', 'e'}, "what do ya want for nothing?", "effcdf6ae5eb2fa2d27416d5f184df9c259a7c79"},
      {std::vector<std::uint8_t>(80, 0xAA), "Test Using Larger Than Block-Size Key - Hash Key First",
       "aa4ae5e15272d00e95705637ce8a3b55ed402112"},
      {std::vector<std::uint8_t>(80, 0xAA),
       "Test Using Larger Than Block-Size Key and Larger Than One Block-Size Data",
       "e8e99d0f45237d786d6bbaa7965c7808bbff1a91"},
  };
  std::size_t vec_ok = 0;
  for (const auto& v : vs) {
    const std::vector<std::uint8_t> m(v.msg.begin(), v.msg.end());
    if (to_hex(hmac({HashId::sha1, v.key, 0}, m)) == v.tag) ++vec_ok;
  }

  std::mt19937_64 g(9);
  std::vector<std::uint8_t> key(20);
  for (auto& b : key) b = static_cast<std::uint8_t>(g());
  const Hmac mac({HashId::sha1, key, 0});
  std::size_t rejected = 0;
  const int trials = 10000;
  for (int i = 0; i < trials; ++i) {
    std::uint64_t seq = g();
    std::uint8_t fl = static_cast<std::uint8_t>(g() & 7);
    std::vector<std::uint8_t> payload(128);
    for (auto& b : payload) b = static_cast<std::uint8_t>(g());
    std::vector<std::uint8_t> tag = tag_packet(mac, seq, fl, payload);
    if (!verify_packet(mac, seq, fl, payload, tag)) continue;
    const std::size_t bit = g() % (64 + 8 + payload.size() * 8 + tag.size() * 8);
    if (bit < 64) {
      seq ^= std::uint64_t{1} << bit;
    } else if (bit < 72) {
      fl ^= static_cast<std::uint8_t>(1u << (bit - 64));
    } else if (bit < 72 + payload.size() * 8) {
      payload[(bit - 72) / 8] ^= static_cast<std::uint8_t>(1u << ((bit - 72) % 8));
    } else {
      const std::size_t t = bit - 72 - payload.size() * 8;
      tag[t / 8] ^= static_cast<std::uint8_t>(1u << (t % 8));
    }
    if (!verify_packet(mac, seq, fl, payload, tag)) ++rejected;
  }
  return {vec_ok == vs.size() && rejected == static_cast<std::size_t>(trials),
          std::to_string(vec_ok) + "/" + std::to_string(vs.size()) + " published HMAC-SHA-1 vectors; " +
              std::to_string(rejected) + "/" + std::to_string(trials) + " single-bit perturbations rejected"};
}

Result c10_attack() {
  std::size_t base_pairs = 0, base_identity = 0, base_rec = 0, base_ok = 0;
  std::size_t aont_rec = 0, aont_ok = 0, aont_sessions_clean = 0, sessions = 0;
  for (std::uint64_t i = 0; i < 50; ++i) {
    const std::size_t ps = i % 2 ? 128 : 64;
    const std::size_t k = 3 + i % 6;
    const auto seed = seed_of(i);
    const auto msgs = demo_messages(ps, 32, seed);
    const AttackReport b = run_attack_demo(make(ps, k, Mode::base, i), msgs, seed);
    base_pairs += b.pairs;
    base_identity += b.identity_holds;
    base_rec += b.recoveries;
    base_ok += b.recovered;
    const AttackReport a = run_attack_demo(make(ps, k, Mode::aont, i), msgs, seed);
    aont_rec += a.recoveries;
    aont_ok += a.recovered;
    if (a.recovered == 0) ++aont_sessions_clean;
    ++sessions;
  }
  const bool base_pass = base_pairs > 0 && base_identity == base_pairs && base_ok == base_rec;
  const bool aont_pass = aont_rec > 0 && aont_ok == 0;
  return {base_pass && aont_pass,
          "base: identity " + std::to_string(base_identity) + "/" + std::to_string(base_pairs) + ", recovered " +
              std::to_string(base_ok) + "/" + std::to_string(base_rec) + "; aont: recovered " +
              std::to_string(aont_ok) + "/" + std::to_string(aont_rec) + " (expected 0), " +
              std::to_string(aont_sessions_clean) + "/" + std::to_string(sessions) + " sessions with no recovery"};
}

Result c11_faults() {
  std::mt19937_64 g(11);
  std::vector<std::uint8_t> d(20000);
  for (auto& b : d) b = static_cast<std::uint8_t>(g());
  const SharedSecret s = make(128, 7, Mode::base, 11);

  ChannelConfig tamper;
  tamper.tamper = 1.0;
  const Transcript t = run_transfer(s, d, tamper);
  const bool tamper_ok = t.mac_rejections == t.sent && t.accepted == 0 && t.delivered.empty();

  std::size_t drop_runs = 0, drop_ok = 0;
  for (std::uint8_t seed = 0; seed < 30; ++seed) {
    ChannelConfig c;
    c.drop = 0.02;
    c.seed = {seed};
    const Transcript r = run_transfer(s, d, c);
    if (r.dropped == 0) continue;
    ++drop_runs;
    if (r.error == Errc::missing_packet && r.missing_seq == r.dropped_seqs.front()) ++drop_ok;
  }

  PacketSender tx(s, RngStreams::seeded(seed_of(11)));
  auto pk = tx.send(d);
  auto tail = tx.flush();
  pk.insert(pk.end(), tail.begin(), tail.end());
  std::size_t perms = 0, perm_ok = 0;
  for (int rep = 0; rep < 50; ++rep) {
    auto shuffled = pk;
    const std::size_t chunk = 2 + g() % (ReorderBuffer::kDefaultWindow - 1);
    for (std::size_t i = 0; i < shuffled.size(); i += chunk) {
      std::shuffle(shuffled.begin() + i, shuffled.begin() + std::min(shuffled.size(), i + chunk), g);
    }
    PacketReceiver rx(s);
    std::vector<std::uint8_t> out;
    try {
      for (const auto& p : shuffled) {
        auto b = rx.receive(p);
        out.insert(out.end(), b.begin(), b.end());
      }
      rx.finish(pk.size());
    } catch (const Error&) {
      out.clear();
    }
    ++perms;
    if (out == d) ++perm_ok;
  }
  return {tamper_ok && drop_runs > 0 && drop_ok == drop_runs && perm_ok == perms,
          "tamper: " + std::to_string(t.mac_rejections) + "/" + std::to_string(t.sent) + " rejected, " +
              std::to_string(t.delivered.size()) + " bytes delivered; drop: " + std::to_string(drop_ok) + "/" +
              std::to_string(drop_runs) + " runs name the earliest dropped seq; permutations: " +
              std::to_string(perm_ok) + "/" + std::to_string(perms) + " identical"};
}

struct Criterion {
  const char* name;
  std::function<Result()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {"end-to-end roundtrip", c1_roundtrip},
      {"worked marker example", c2_worked_example},
      {"operation counts", c3_counts},
      {"AONT counts", c4_aont_counts},
      {"k=2 minimality", c5_k2_minimal},
      {"field axioms", c6_field},
      {"AONT all-or-nothing", c7_all_or_nothing},
      {"one-time-pad bijectivity", c8_otp},
      {"MAC", c9_mac},
      {"attack demonstration", c10_attack},
      {"fault injection", c11_faults},
  };
  int only = 0;
  if (argc == 3 && std::strcmp(argv[1], "--only") == 0) only = std::atoi(argv[2]);
  if (only < 0 || only > static_cast<int>(all.size())) {
    std::fprintf(stderr, "usage: %s [--only N]\n", argv[0]);
    return 2;
  }

  int failed = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (only != 0 && static_cast<int>(i) + 1 != only) continue;
    Result r;
    try {
      r = all[i].run();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %2zu %s: %s (%s)\n", i + 1, r.pass ? "PASS" : "FAIL", all[i].name, r.detail.c_str());
    std::fflush(stdout);
    if (!r.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
