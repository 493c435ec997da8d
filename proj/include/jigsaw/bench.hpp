#pragma once

// Closed-form block-operation counts, and the CSV used to plot them.
//
// For N blocks through a pad of k blocks:
//   base: N + floor(N/k)*(k-1) XORs, floor(N/k) multiplications
//   aont: 3N + floor(N/k)*(k-1) - 2 XORs, floor(N/k) + 1 multiplications
// AES is charged 11 block XORs per block (round-key additions only; table
// lookups and shifts are not counted, so this is a lower bound for AES).
//
// Mapping to the codec's instrumented counters: N counts every masked block,
// i.e. the data slots plus the one R slot per run. With that N the base-mode
// formula equals the instrumented counters exactly.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "jigsaw/counters.hpp"

namespace jigsaw {

enum class CountMode { base, aont };
enum class PartPolicy { best, worst };

CountMode parse_count_mode(std::string_view s);
const char* to_string(CountMode m);
const char* to_string(PartPolicy p);

struct Counts {
  std::uint64_t xors = 0;
  std::uint64_t mults = 0;
  friend bool operator==(const Counts&, const Counts&) = default;
};

Counts paper_counts(std::uint64_t n, std::uint64_t k, CountMode mode);
std::uint64_t aes_counts(std::uint64_t blocks);

/// Base-mode closed form evaluated at N = data slots + runs.
Counts instrumented_closed_form(std::uint64_t data_slots, std::uint64_t runs, std::uint64_t k);

/// Parts needed for size_bits of data: best case parts of PS bits, worst
/// case parts of PS/2 bits.
std::uint64_t parts_for(std::uint64_t size_bits, std::size_t ps, PartPolicy policy);

struct CsvRow {
  std::uint64_t k = 0;
  std::uint64_t data_size_bits = 0;
  std::uint64_t n = 0;
  std::uint64_t xors = 0;
  std::uint64_t mults = 0;
  std::uint64_t aes_xors = 0;
  std::string mode;
};

struct SweepSpec {
  std::uint64_t k_min = 2;
  std::uint64_t k_max = 64;
  std::vector<std::uint64_t> sizes_bits;
  std::size_t ps = 1024;
  CountMode mode = CountMode::base;
  std::vector<PartPolicy> policies = {PartPolicy::best, PartPolicy::worst};
};

std::vector<CsvRow> sweep(const SweepSpec& spec);

inline constexpr std::string_view kCsvHeader = "k,data_size_bits,N,xor_blocks,mult_blocks,aes_xor_blocks,mode";

/// Header plus one line per row, LF line endings.
std::string emit_csv(std::span<const CsvRow> rows);

}  // namespace jigsaw
