#pragma once

// IFSK file layout (all integers little-endian):
//
//   "IFSK"       4 bytes magic
//   version      u8, currently 1
//   kind         u8, 0 = sampling, 1 = exact pairs
//   eps          u64 numerator, u64 denominator
//   k            u8
//   d            u64
//   size_bits    u64
//   payload      sampling: (size_bits / d) rows of ceil(d/8) bytes each
//                exact:    ceil(size_bits / 8) bytes of upper-triangle bits, LSB first

#include <cstdint>
#include <filesystem>
#include <istream>
#include <ostream>

#include "ifi/binary_io.hpp"
#include "ifi/sketch.hpp"

namespace ifi {

inline constexpr std::uint8_t kSketchFormatVersion = 1;

inline std::uint64_t expected_payload_bytes(SketchKind kind, std::uint64_t d, std::uint64_t size_bits) {
  if (kind == SketchKind::kSampling) return size_bits / d * ((d + 7) / 8);
  return (size_bits + 7) / 8;
}

inline void write_sketch(const SketchBlob& blob, std::ostream& os) {
  os.write("IFSK", 4);
  detail::put_u8(os, kSketchFormatVersion);
  detail::put_u8(os, static_cast<std::uint8_t>(blob.kind));
  detail::put_u64(os, blob.params.epsilon.num());
  detail::put_u64(os, blob.params.epsilon.den());
  detail::put_u8(os, static_cast<std::uint8_t>(blob.params.k));
  detail::put_u64(os, blob.params.d);
  detail::put_u64(os, blob.size_bits);
  detail::put_bytes(os, blob.payload);
}

inline SketchBlob read_sketch(std::istream& is) {
  detail::expect_magic(is, "IFSK");
  const auto version = detail::get_u8(is, "version");
  if (version != kSketchFormatVersion) throw FormatError("unsupported IFSK version " + std::to_string(version));
  const auto kind = detail::get_u8(is, "kind");
  if (kind > 1) throw FormatError("unknown sketch kind " + std::to_string(kind));

  SketchBlob blob;
  blob.kind = static_cast<SketchKind>(kind);
  const auto num = detail::get_u64(is, "epsilon numerator");
  const auto den = detail::get_u64(is, "epsilon denominator");
  if (den == 0) throw FormatError("zero epsilon denominator");
  blob.params.epsilon = Rational(num, den);
  blob.params.k = detail::get_u8(is, "k");
  blob.params.d = detail::get_u64(is, "d");
  blob.size_bits = detail::get_u64(is, "size_bits");
  try {
    blob.params.validate();
  } catch (const ParamError& e) {
    throw FormatError(std::string("invalid sketch header: ") + e.what());
  }
  if (blob.params.d > (std::uint64_t{1} << 32)) throw FormatError("sketch d too large");

  if (blob.kind == SketchKind::kExactPairs) {
    if (blob.params.k != 2) throw FormatError("exact-pairs sketch with k != 2");
    if (blob.size_bits != blob.params.d * (blob.params.d - 1) / 2) throw FormatError("exact-pairs size mismatch");
  } else if (blob.size_bits % blob.params.d != 0 || blob.size_bits == 0) {
    throw FormatError("sampling size_bits is not a positive multiple of d");
  }
  const auto bytes = expected_payload_bytes(blob.kind, blob.params.d, blob.size_bits);
  if (bytes > (std::uint64_t{1} << 36)) throw FormatError("sketch payload too large");
  blob.payload.resize(bytes);
  detail::get_exact(is, reinterpret_cast<char*>(blob.payload.data()), bytes, "payload");
  detail::expect_eof(is);
  return blob;
}

inline void write_sketch(const SketchBlob& blob, const std::filesystem::path& path) {
  auto os = detail::open_out(path);
  write_sketch(blob, os);
  detail::finish_write(os, path);
}

inline SketchBlob read_sketch(const std::filesystem::path& path) {
  auto is = detail::open_in(path);
  return read_sketch(is);
}

}  // namespace ifi
