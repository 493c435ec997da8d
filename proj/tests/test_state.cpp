#include "doctest.h"
#include "jigsaw/error.hpp"
#include "jigsaw/state.hpp"

using namespace jigsaw;

namespace {

SharedSecret make(Mode mode, std::uint8_t seed) {
  SeededRng rng(std::vector<std::uint8_t>{seed}, "keygen");
  KeygenParams p;
  p.ps = 64;
  p.k = 5;
  p.mode = mode;
  return keygen(p, rng);
}

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return Errc::config;
}

}  // namespace

TEST_CASE("sender and receiver state roundtrip bit-exactly") {
  for (Mode mode : {Mode::base, Mode::full_block, Mode::aont}) {
    const SharedSecret s = make(mode, 1);
    const auto fp = fingerprint(save_keyfile(s));
    SenderSession tx(s, RngStreams::seeded(std::vector<std::uint8_t>{4}));
    ReceiverSession rx(s);
    for (const auto& f : tx.push(std::vector<std::uint8_t>(111, 0x3A))) rx.push(f);

    const auto sb = save_sender_state(tx.export_state(), s, fp);
    CHECK(load_sender_state(sb, s, fp) == tx.export_state());
    CHECK(save_sender_state(load_sender_state(sb, s, fp), s, fp) == sb);

    const auto rb = save_receiver_state(rx.export_state(), s, fp);
    CHECK(load_receiver_state(rb, s, fp) == rx.export_state());
    CHECK(save_receiver_state(load_receiver_state(rb, s, fp), s, fp) == rb);
  }
}

TEST_CASE("state bound to its keyfile") {
  const SharedSecret s = make(Mode::base, 2), other = make(Mode::base, 3);
  const auto fp = fingerprint(save_keyfile(s));
  const auto fp2 = fingerprint(save_keyfile(other));
  SenderSession tx(s, RngStreams::seeded(std::vector<std::uint8_t>{4}));
  tx.push(std::vector<std::uint8_t>(30, 1));
  const auto sb = save_sender_state(tx.export_state(), s, fp);
  CHECK(code_of([&] { load_sender_state(sb, other, fp2); }) == Errc::fingerprint_mismatch);
  CHECK(code_of([&] { load_receiver_state(sb, s, fp); }) == Errc::invariant);

  auto bad = sb;
  bad[0] = 'X';
  CHECK(code_of([&] { load_sender_state(bad, s, fp); }) == Errc::bad_magic);
  bad = sb;
  bad[4] = 7;
  CHECK(code_of([&] { load_sender_state(bad, s, fp); }) == Errc::bad_version);
  bad.assign(sb.begin(), sb.end() - 1);
  CHECK(code_of([&] { load_sender_state(bad, s, fp); }) == Errc::truncated);
  bad = sb;
  bad.push_back(0);
  CHECK(code_of([&] { load_sender_state(bad, s, fp); }) == Errc::invariant);
}
