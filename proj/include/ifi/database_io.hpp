#pragma once

// IFDB file layout (all integers little-endian):
//
//   "IFDB"          4 bytes magic
//   version         u8, currently 1
//   n               u64
//   d               u64
//   rows            n * ceil(d/8) bytes, column j of a row at byte j/8, bit j%8
//                   (LSB first); padding bits must be zero.

#include <cstdint>
#include <filesystem>
#include <istream>
#include <ostream>
#include <vector>

#include "ifi/binary_io.hpp"
#include "ifi/database.hpp"

namespace ifi {

inline constexpr std::uint8_t kDatabaseFormatVersion = 1;

inline void write_db(const Database& db, std::ostream& os) {
  os.write("IFDB", 4);
  detail::put_u8(os, kDatabaseFormatVersion);
  detail::put_u64(os, db.n());
  detail::put_u64(os, db.d());
  const std::size_t row_bytes = (db.d() + 7) / 8;
  std::vector<std::uint8_t> buf(row_bytes);
  for (std::size_t i = 0; i < db.n(); ++i) {
    const auto words = db.row_words(i);
    for (std::size_t b = 0; b < row_bytes; ++b) {
      buf[b] = static_cast<std::uint8_t>(words[b / 8] >> (8 * (b % 8)));
    }
    detail::put_bytes(os, buf);
  }
}

inline Database read_db(std::istream& is) {
  detail::expect_magic(is, "IFDB");
  const auto version = detail::get_u8(is, "version");
  if (version != kDatabaseFormatVersion) throw FormatError("unsupported IFDB version " + std::to_string(version));
  const auto n = detail::get_u64(is, "n");
  const auto d = detail::get_u64(is, "d");
  if (n < 1 || d < 2) throw FormatError("IFDB dimensions out of range (n >= 1, d >= 2)");
  // Guards against absurd headers before allocating.
  if (d > (std::uint64_t{1} << 32) || n > (std::uint64_t{1} << 40)) throw FormatError("IFDB dimensions too large");

  const std::size_t row_bytes = (d + 7) / 8;
  const unsigned tail_bits = d % 8;
  const auto pad_mask = tail_bits == 0 ? std::uint8_t{0} : static_cast<std::uint8_t>(0xffU << tail_bits);
  std::vector<char> buf(row_bytes);
  std::vector<BitRow> rows;
  rows.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    detail::get_exact(is, buf.data(), row_bytes, "row payload");
    if (static_cast<std::uint8_t>(buf[row_bytes - 1]) & pad_mask) {
      throw FormatError("nonzero padding bits in row " + std::to_string(i));
    }
    BitRow row(d);
    auto words = row.words();
    for (std::size_t b = 0; b < row_bytes; ++b) {
      words[b / 8] |= std::uint64_t{static_cast<std::uint8_t>(buf[b])} << (8 * (b % 8));
    }
    rows.push_back(std::move(row));
  }
  detail::expect_eof(is);
  return Database(d, rows);
}

inline void write_db(const Database& db, const std::filesystem::path& path) {
  auto os = detail::open_out(path);
  write_db(db, os);
  detail::finish_write(os, path);
}

inline Database read_db(const std::filesystem::path& path) {
  auto is = detail::open_in(path);
  return read_db(is);
}

}  // namespace ifi
