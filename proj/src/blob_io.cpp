#include "isac/blob_io.hpp"

#include <bit>
#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include "isac/errors.hpp"

namespace isac {

namespace {

template <typename U>
U to_little(U v) {
  if constexpr (std::endian::native == std::endian::little) {
    return v;
  } else {
    U out = 0;
    for (std::size_t i = 0; i < sizeof(U); ++i) out = U((out << 8) | ((v >> (8 * i)) & 0xff));
    return out;
  }
}

std::string read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed: " + path.string());
  return bytes;
}

template <typename U>
void append_word(std::string& out, U word) {
  word = to_little(word);
  char buf[sizeof(U)];
  std::memcpy(buf, &word, sizeof(U));
  out.append(buf, sizeof(U));
}

template <typename U>
U word_at(const std::string& bytes, std::size_t offset) {
  U word;
  std::memcpy(&word, bytes.data() + offset, sizeof(U));
  return to_little(word);
}

void write_bytes(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot create " + path.string());
  out.write(bytes.data(), std::streamsize(bytes.size()));
  out.close();
  if (!out) throw IoError("write failed: " + path.string());
}

std::string encode_f32(std::span<const float> values) {
  std::string bytes;
  bytes.reserve(values.size() * 4);
  for (float v : values) append_word(bytes, std::bit_cast<std::uint32_t>(v));
  return bytes;
}

std::string encode_c128(std::span<const std::complex<double>> values) {
  std::string bytes;
  bytes.reserve(values.size() * 16);
  for (const auto& v : values) {
    append_word(bytes, std::bit_cast<std::uint64_t>(v.real()));
    append_word(bytes, std::bit_cast<std::uint64_t>(v.imag()));
  }
  return bytes;
}

}  // namespace

void write_f32(const std::filesystem::path& path, std::span<const float> values) {
  write_bytes(path, encode_f32(values));
}

void append_f32(std::ostream& os, std::span<const float> values) {
  const std::string bytes = encode_f32(values);
  os.write(bytes.data(), std::streamsize(bytes.size()));
  if (!os) throw IoError("blob write failed");
}

void append_c128(std::ostream& os, std::span<const std::complex<double>> values) {
  const std::string bytes = encode_c128(values);
  os.write(bytes.data(), std::streamsize(bytes.size()));
  if (!os) throw IoError("blob write failed");
}

std::vector<float> read_f32(const std::filesystem::path& path) {
  const std::string bytes = read_bytes(path);
  if (bytes.size() % 4 != 0) throw IoError("float32 blob length is not a multiple of 4: " + path.string());
  std::vector<float> out(bytes.size() / 4);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::bit_cast<float>(word_at<std::uint32_t>(bytes, 4 * i));
  return out;
}

void write_c128(const std::filesystem::path& path, std::span<const std::complex<double>> values) {
  write_bytes(path, encode_c128(values));
}

std::vector<std::complex<double>> read_c128(const std::filesystem::path& path) {
  const std::string bytes = read_bytes(path);
  if (bytes.size() % 16 != 0) throw IoError("complex128 blob length is not a multiple of 16: " + path.string());
  std::vector<std::complex<double>> out(bytes.size() / 16);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = {std::bit_cast<double>(word_at<std::uint64_t>(bytes, 16 * i)),
              std::bit_cast<double>(word_at<std::uint64_t>(bytes, 16 * i + 8))};
  }
  return out;
}

std::string file_checksum(const std::filesystem::path& path) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : read_bytes(path)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
  auto tmp = path;
  tmp += ".tmp";
  write_bytes(tmp, text);
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot rename onto " + path.string());
  }
}

std::string read_text(const std::filesystem::path& path) { return read_bytes(path); }

}  // namespace isac
