#include "jigsaw/tear.hpp"

#include <string>

#include "jigsaw/error.hpp"

namespace jigsaw {

std::vector<Part> tear(std::span<const std::uint8_t> data, std::size_t min_bits, std::size_t max_bits, Rng& rng) {
  if (min_bits < 1 || min_bits > max_bits) {
    throw Error(Errc::config, "part size window [" + std::to_string(min_bits) + ", " + std::to_string(max_bits) +
                                  "] is empty");
  }
  std::vector<Part> parts;
  if (data.empty()) return parts;
  const BitString bits = BitString::from_bytes(data);
  std::size_t pos = 0;
  while (pos < bits.size()) {
    const std::size_t want = min_bits == max_bits ? min_bits : rng.uniform(min_bits, max_bits);
    const std::size_t len = std::min(want, bits.size() - pos);
    parts.push_back(bits.slice(pos, len));
    pos += len;
  }
  return parts;
}

BitString affix(const Part& part, std::size_t ps) {
  if (part.size() + 2 > ps) throw Error(Errc::size_mismatch, "part longer than PS-2 bits");
  BitString marked;
  marked.push_back(true);
  marked.append(part);
  marked.push_back(true);
  return marked;
}

Block embed(const BitString& marked, std::size_t offset, std::size_t ps) {
  if (marked.size() > ps || offset < 1 || offset > max_offset(marked.size(), ps)) {
    throw Error(Errc::out_of_bounds, "embed offset " + std::to_string(offset) + " out of range");
  }
  Block b(ps);
  detail::copy_bits(b.words(), offset - 1, marked.words(), 0, marked.size());
  return b;
}

Part extract(const Block& block) {
  const std::size_t first = block.first_set();
  const std::size_t last = block.last_set();
  if (first == block.bits() || first == last) {
    throw Error(Errc::malformed_block, "block has fewer than two marker bits");
  }
  return block.to_bits().slice(first + 1, last - first - 1);
}

std::vector<std::uint8_t> reassemble(std::span<const Part> parts) {
  PartAssembler a;
  for (const auto& p : parts) a.push(p);
  a.finish();
  return a.drain();
}

std::vector<std::uint8_t> PartAssembler::drain() {
  const std::size_t whole = pending_.size() / 8 * 8;
  if (whole == 0) return {};
  std::vector<std::uint8_t> out = pending_.slice(0, whole).to_bytes();
  pending_.erase_prefix(whole);
  return out;
}

void PartAssembler::finish() const {
  if (pending_.size() % 8 != 0) {
    throw Error(Errc::incomplete_stream, std::to_string(pending_.size() % 8) + " dangling bits at end of stream");
  }
}

}  // namespace jigsaw
