#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ifi/errors.hpp"

namespace ifi::detail {

inline void put_u8(std::ostream& os, std::uint8_t v) { os.put(static_cast<char>(v)); }

inline void put_u64(std::ostream& os, std::uint64_t v) {
  std::array<char, 8> b{};
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  os.write(b.data(), b.size());
}

inline void put_bytes(std::ostream& os, std::span<const std::uint8_t> bytes) {
  os.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

inline void get_exact(std::istream& is, char* out, std::size_t len, std::string_view what) {
  is.read(out, static_cast<std::streamsize>(len));
  if (static_cast<std::size_t>(is.gcount()) != len) {
    throw FormatError("truncated input while reading " + std::string(what));
  }
}

inline std::uint8_t get_u8(std::istream& is, std::string_view what) {
  char c = 0;
  get_exact(is, &c, 1, what);
  return static_cast<std::uint8_t>(c);
}

inline std::uint64_t get_u64(std::istream& is, std::string_view what) {
  std::array<char, 8> b{};
  get_exact(is, b.data(), b.size(), what);
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | static_cast<std::uint8_t>(b[i]);
  return v;
}

inline void expect_magic(std::istream& is, std::string_view magic) {
  std::string got(magic.size(), '\0');
  is.read(got.data(), static_cast<std::streamsize>(got.size()));
  if (static_cast<std::size_t>(is.gcount()) != magic.size() || got != magic) {
    throw FormatError("bad magic: expected '" + std::string(magic) + "'");
  }
}

inline void expect_eof(std::istream& is) {
  if (is.peek() != std::char_traits<char>::eof()) throw FormatError("trailing bytes after payload");
}

inline std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
  return os;
}

inline std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open '" + path.string() + "' for reading");
  return is;
}

inline void finish_write(std::ostream& os, const std::filesystem::path& path) {
  os.flush();
  if (!os) throw IoError("write to '" + path.string() + "' failed");
}

}  // namespace ifi::detail
