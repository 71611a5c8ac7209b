#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <span>
#include <vector>

#include "isac/types.hpp"

namespace isac {

// Flat little-endian blobs. Real images are float32, measurements are
// interleaved (re, im) float64.

void write_f32(const std::filesystem::path& path, std::span<const float> values);
std::vector<float> read_f32(const std::filesystem::path& path);

void write_c128(const std::filesystem::path& path, std::span<const std::complex<double>> values);
std::vector<std::complex<double>> read_c128(const std::filesystem::path& path);

/// Streaming forms of the writers above, for blobs built in chunks.
void append_f32(std::ostream& os, std::span<const float> values);
void append_c128(std::ostream& os, std::span<const std::complex<double>> values);

/// FNV-1a 64 of a file's bytes, as 16 lowercase hex digits.
std::string file_checksum(const std::filesystem::path& path);

/// Writes to a sibling temporary and renames over `path`.
void write_text_atomic(const std::filesystem::path& path, const std::string& text);

std::string read_text(const std::filesystem::path& path);

}  // namespace isac
