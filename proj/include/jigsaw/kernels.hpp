#pragma once

// Block-parallel inner loops of the codec.
//
// Within one run every slot is independent: marking/embedding parts, masking
// with P_i, and unmasking/extracting on receive. The transform between runs is
// the only sequential barrier. `ref::` holds the plain loops and is the
// reference the OpenMP versions in `par::` are tested against.

#include <cstddef>
#include <span>

#include "jigsaw/bits.hpp"
#include "jigsaw/tear.hpp"

namespace jigsaw::kernels {

namespace ref {
/// out[i] = embed(affix(parts[i]), offsets[i], ps)
void embed_parts(std::span<const Part> parts, std::span<const std::size_t> offsets, std::size_t ps,
                 std::span<Block> out);
/// out[i] = in[i] ^ pads[i]
void mask_blocks(std::span<const Block> in, std::span<const Block> pads, std::span<Block> out);
/// out[i] = extract(in[i])
void extract_parts(std::span<const Block> in, std::span<Part> out);
}  // namespace ref

namespace par {
void embed_parts(std::span<const Part> parts, std::span<const std::size_t> offsets, std::size_t ps,
                 std::span<Block> out);
void mask_blocks(std::span<const Block> in, std::span<const Block> pads, std::span<Block> out);
void extract_parts(std::span<const Block> in, std::span<Part> out);
}  // namespace par

inline void embed_parts(bool parallel, std::span<const Part> parts, std::span<const std::size_t> offsets,
                        std::size_t ps, std::span<Block> out) {
  parallel ? par::embed_parts(parts, offsets, ps, out) : ref::embed_parts(parts, offsets, ps, out);
}

inline void mask_blocks(bool parallel, std::span<const Block> in, std::span<const Block> pads,
                        std::span<Block> out) {
  parallel ? par::mask_blocks(in, pads, out) : ref::mask_blocks(in, pads, out);
}

inline void extract_parts(bool parallel, std::span<const Block> in, std::span<Part> out) {
  parallel ? par::extract_parts(in, out) : ref::extract_parts(in, out);
}

}  // namespace jigsaw::kernels
