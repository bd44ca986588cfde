#pragma once

// Instance manifest, a line-oriented text file:
//
//   ifi-manifest 1
//   d 64
//   epsilon 1/4
//   K 4
//   m 8
//   n 800
//   seed 2
//   perm 0 0: 5 2 7 0 1 3 6 4
//   perm 0 1: ...
//
// One "perm k l:" line per permutation in row-major (k, l) order, values are
// the images of 0..m-1.

#include <cstdint>
#include <filesystem>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ifi/binary_io.hpp"
#include "ifi/errors.hpp"
#include "ifi/hard_instance.hpp"
#include "ifi/permutation.hpp"
#include "ifi/rational.hpp"

namespace ifi {

struct Manifest {
  std::size_t d = 0;
  Rational epsilon{1, 1};
  std::size_t blocks = 0;
  std::size_t m = 0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  PermutationGrid perms;

  static Manifest of(const GeneralInstance& inst) {
    return {inst.d(), inst.epsilon, inst.blocks(), inst.m(), inst.n, inst.seed, inst.perms};
  }

  friend bool operator==(const Manifest&, const Manifest&) = default;
};

inline void write_manifest(const Manifest& mf, std::ostream& os) {
  os << "ifi-manifest 1\n"
     << "d " << mf.d << '\n'
     << "epsilon " << mf.epsilon.str() << '\n'
     << "K " << mf.blocks << '\n'
     << "m " << mf.m << '\n'
     << "n " << mf.n << '\n'
     << "seed " << mf.seed << '\n';
  for (std::size_t k = 0; k < mf.blocks; ++k) {
    for (std::size_t l = 0; l < mf.blocks; ++l) {
      os << "perm " << k << ' ' << l << ':';
      for (auto v : mf.perms.at(k, l).mapping()) os << ' ' << v;
      os << '\n';
    }
  }
}

namespace detail {

inline std::string next_line(std::istream& is, std::string_view what) {
  std::string line;
  if (!std::getline(is, line)) throw FormatError("manifest truncated before " + std::string(what));
  return line;
}

template <class T>
T keyed_value(std::istream& is, std::string_view key) {
  std::istringstream line(next_line(is, key));
  std::string got;
  T value{};
  if (!(line >> got) || got != key || !(line >> value) || !(line >> std::ws).eof()) {
    throw FormatError("manifest: expected '" + std::string(key) + " <value>'");
  }
  return value;
}

}  // namespace detail

inline Manifest read_manifest(std::istream& is) {
  if (detail::next_line(is, "header") != "ifi-manifest 1") throw FormatError("manifest: bad header");
  Manifest mf;
  mf.d = detail::keyed_value<std::size_t>(is, "d");
  try {
    mf.epsilon = Rational::parse(detail::keyed_value<std::string>(is, "epsilon"));
  } catch (const ParamError& e) {
    throw FormatError(std::string("manifest: ") + e.what());
  }
  mf.blocks = detail::keyed_value<std::size_t>(is, "K");
  mf.m = detail::keyed_value<std::size_t>(is, "m");
  mf.n = detail::keyed_value<std::size_t>(is, "n");
  mf.seed = detail::keyed_value<std::uint64_t>(is, "seed");

  BlockLayout layout;
  try {
    layout = block_layout(mf.d, mf.epsilon);
  } catch (const ParamError& e) {
    throw FormatError(std::string("manifest: ") + e.what());
  }
  if (layout.blocks != mf.blocks || layout.m != mf.m) throw FormatError("manifest: K or m inconsistent with d, epsilon");

  std::vector<Permutation> entries;
  for (std::size_t k = 0; k < mf.blocks; ++k) {
    for (std::size_t l = 0; l < mf.blocks; ++l) {
      std::istringstream line(detail::next_line(is, "perm line"));
      std::string tag;
      std::size_t lk = 0;
      std::size_t ll = 0;
      char colon = 0;
      if (!(line >> tag >> lk >> ll >> colon) || tag != "perm" || colon != ':' || lk != k || ll != l) {
        throw FormatError("manifest: expected 'perm " + std::to_string(k) + " " + std::to_string(l) + ":'");
      }
      std::vector<std::size_t> values;
      std::size_t v = 0;
      while (line >> v) values.push_back(v);
      if (!line.eof() || values.size() != mf.m) throw FormatError("manifest: malformed permutation values");
      try {
        entries.emplace_back(std::move(values));
      } catch (const ParamError& e) {
        throw FormatError(std::string("manifest: ") + e.what());
      }
    }
  }
  std::string rest;
  while (std::getline(is, rest)) {
    if (!rest.empty()) throw FormatError("manifest: unexpected trailing content");
  }
  mf.perms = PermutationGrid(mf.blocks, std::move(entries));
  return mf;
}

inline void write_manifest(const Manifest& mf, const std::filesystem::path& path) {
  auto os = detail::open_out(path);
  write_manifest(mf, os);
  detail::finish_write(os, path);
}

inline Manifest read_manifest(const std::filesystem::path& path) {
  auto is = detail::open_in(path);
  return read_manifest(is);
}

}  // namespace ifi
