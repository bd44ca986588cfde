#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ifi {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters: non-integral block layout, bad fraction, bad sizes.
class ParamError : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

/// Malformed IFDB / IFSK / manifest input.
class FormatError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class WrongKind : public Error {
 public:
  using Error::Error;
};

class ArityMismatch : public Error {
 public:
  using Error::Error;
};

class UnsupportedArity : public Error {
 public:
  using Error::Error;
};

/// The oracle did not single out exactly one NO answer for a row of the decoder's
/// query grid. For the constant-epsilon decoder `block` and `target` are both 0.
class DecodeAmbiguous : public Error {
 public:
  DecodeAmbiguous(std::size_t block, std::size_t target, std::size_t index, std::size_t no_answers)
      : DecodeAmbiguous(block, target, index, no_answers, std::to_string(no_answers) + " NO answers") {}

  DecodeAmbiguous(std::size_t block, std::size_t target, std::size_t index, std::size_t no_answers,
                  const std::string& detail)
      : Error("ambiguous decode at (k=" + std::to_string(block) + ", l=" + std::to_string(target) +
              ", i=" + std::to_string(index) + "): " + detail),
        block_(block),
        target_(target),
        index_(index),
        no_answers_(no_answers) {}

  std::size_t block() const { return block_; }
  std::size_t target() const { return target_; }
  std::size_t index() const { return index_; }
  std::size_t no_answers() const { return no_answers_; }

 private:
  std::size_t block_;
  std::size_t target_;
  std::size_t index_;
  std::size_t no_answers_;
};

}  // namespace ifi
