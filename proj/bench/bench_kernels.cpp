// Serial reference loops against their OpenMP counterparts.
//
// Args: number of slots, block size in bits.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "jigsaw/codec.hpp"
#include "jigsaw/kernels.hpp"

using namespace jigsaw;

namespace {

struct Inputs {
  std::vector<Part> parts;
  std::vector<std::size_t> offsets;
  std::vector<Block> blocks;
  std::vector<Block> pads;
};

Inputs make_inputs(std::size_t n, std::size_t ps) {
  std::mt19937_64 g(n * 131 + ps);
  Inputs in;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t len = 1 + g() % (ps - 2);
    Part p(len);
    for (std::size_t b = 0; b < len; ++b) p.set(b, g() & 1);
    in.offsets.push_back(1 + g() % max_offset(len + 2, ps));
    in.parts.push_back(std::move(p));
    std::vector<std::uint8_t> bytes(ps / 8);
    for (auto& x : bytes) x = static_cast<std::uint8_t>(g());
    in.pads.push_back(Block::from_bytes(bytes, ps));
  }
  in.blocks.resize(n);
  kernels::ref::embed_parts(in.parts, in.offsets, ps, in.blocks);
  return in;
}

template <bool Parallel>
void BM_embed(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0)), ps = static_cast<std::size_t>(state.range(1));
  const Inputs in = make_inputs(n, ps);
  std::vector<Block> out(n);
  for (auto _ : state) {
    kernels::embed_parts(Parallel, in.parts, in.offsets, ps, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

template <bool Parallel>
void BM_mask(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0)), ps = static_cast<std::size_t>(state.range(1));
  const Inputs in = make_inputs(n, ps);
  std::vector<Block> out(n);
  for (auto _ : state) {
    kernels::mask_blocks(Parallel, in.blocks, in.pads, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

template <bool Parallel>
void BM_extract(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0)), ps = static_cast<std::size_t>(state.range(1));
  const Inputs in = make_inputs(n, ps);
  std::vector<Part> out(n);
  for (auto _ : state) {
    kernels::extract_parts(Parallel, in.blocks, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

// Whole sender path: tear, embed, mask, transform.
template <bool Parallel>
void BM_session(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0)), ps = static_cast<std::size_t>(state.range(1));
  SeededRng rng(std::vector<std::uint8_t>{1}, "keygen");
  KeygenParams p;
  p.ps = ps;
  p.k = k;
  const SharedSecret secret = keygen(p, rng);
  const std::vector<std::uint8_t> data(1 << 18, 0x5A);
  for (auto _ : state) {
    SenderSession tx(secret, RngStreams::seeded(std::vector<std::uint8_t>{2}), Parallel);
    benchmark::DoNotOptimize(tx.push(data));
  }
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(data.size()));
}

void slot_args(benchmark::internal::Benchmark* b) {
  for (std::int64_t ps : {64, 1024}) {
    for (std::int64_t n : {16, 256, 4096}) b->Args({n, ps});
  }
}

void session_args(benchmark::internal::Benchmark* b) {
  for (std::int64_t k : {7, 64, 512}) b->Args({k, 1024});
}

}  // namespace

BENCHMARK(BM_embed<false>)->Name("embed/ref")->Apply(slot_args);
BENCHMARK(BM_embed<true>)->Name("embed/par")->Apply(slot_args)->UseRealTime();
BENCHMARK(BM_mask<false>)->Name("mask/ref")->Apply(slot_args);
BENCHMARK(BM_mask<true>)->Name("mask/par")->Apply(slot_args)->UseRealTime();
BENCHMARK(BM_extract<false>)->Name("extract/ref")->Apply(slot_args);
BENCHMARK(BM_extract<true>)->Name("extract/par")->Apply(slot_args)->UseRealTime();
BENCHMARK(BM_session<false>)->Name("session/ref")->Apply(session_args);
BENCHMARK(BM_session<true>)->Name("session/par")->Apply(session_args)->UseRealTime();

BENCHMARK_MAIN();
