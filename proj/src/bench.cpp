#include "jigsaw/bench.hpp"

#include <string>

#include "jigsaw/error.hpp"

namespace jigsaw {

CountMode parse_count_mode(std::string_view s) {
  if (s == "base") return CountMode::base;
  if (s == "aont") return CountMode::aont;
  throw Error(Errc::config, "unknown count mode '" + std::string(s) + "'");
}

const char* to_string(CountMode m) { return m == CountMode::base ? "base" : "aont"; }
const char* to_string(PartPolicy p) { return p == PartPolicy::best ? "best" : "worst"; }

Counts paper_counts(std::uint64_t n, std::uint64_t k, CountMode mode) {
  if (k < 2) throw Error(Errc::domain, "k must be at least 2");
  const std::uint64_t changes = n / k;
  if (mode == CountMode::base) return {n + changes * (k - 1), changes};
  if (n == 0) throw Error(Errc::domain, "AONT count needs at least one part");
  return {3 * n + changes * (k - 1) - 2, changes + 1};
}

std::uint64_t aes_counts(std::uint64_t blocks) { return 11 * blocks; }

Counts instrumented_closed_form(std::uint64_t data_slots, std::uint64_t runs, std::uint64_t k) {
  return paper_counts(data_slots + runs, k, CountMode::base);
}

std::uint64_t parts_for(std::uint64_t size_bits, std::size_t ps, PartPolicy policy) {
  const std::uint64_t part = policy == PartPolicy::best ? ps : ps / 2;
  if (part == 0) throw Error(Errc::domain, "part size must be positive");
  return (size_bits + part - 1) / part;
}

std::vector<CsvRow> sweep(const SweepSpec& spec) {
  if (spec.k_min < 2 || spec.k_min > spec.k_max) throw Error(Errc::config, "k range must satisfy 2 <= min <= max");
  std::vector<CsvRow> rows;
  for (auto policy : spec.policies) {
    for (std::uint64_t k = spec.k_min; k <= spec.k_max; ++k) {
      for (auto size : spec.sizes_bits) {
        const std::uint64_t n = parts_for(size, spec.ps, policy);
        if (spec.mode == CountMode::aont && n == 0) continue;
        const Counts c = paper_counts(n, k, spec.mode);
        rows.push_back({k, size, n, c.xors, c.mults, aes_counts(parts_for(size, spec.ps, PartPolicy::best)),
                        std::string(to_string(spec.mode)) + "-" + to_string(policy)});
      }
    }
  }
  return rows;
}

std::string emit_csv(std::span<const CsvRow> rows) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += std::to_string(r.k) + ',' + std::to_string(r.data_size_bits) + ',' + std::to_string(r.n) + ',' +
           std::to_string(r.xors) + ',' + std::to_string(r.mults) + ',' + std::to_string(r.aes_xors) + ',' + r.mode +
           '\n';
  }
  return out;
}

}  // namespace jigsaw
