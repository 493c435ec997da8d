#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace jigsaw {

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);

/// Writes to a sibling temporary and renames it over `path`, so readers never
/// observe a partially written file.
void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace jigsaw
