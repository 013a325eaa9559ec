#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace motzkin {

/// Parse/validation failure for the U/F/D word format or the tree
/// s-expression format. `position` is the offset at which the error was
/// detected: the index of the offending character for InvalidCharacter,
/// SyntaxError and NegativeLabel, and the length of the prefix whose
/// height first dips below zero for NegativeHeight.
class ParseError : public std::runtime_error {
 public:
  enum class Kind {
    InvalidCharacter,
    NegativeHeight,
    UnbalancedPath,
    SyntaxError,
    NegativeLabel,
  };

  ParseError(Kind kind, std::size_t position, std::string message,
             int final_height = 0)
      : std::runtime_error(std::move(message)),
        kind_(kind),
        position_(position),
        final_height_(final_height) {}

  Kind kind() const noexcept { return kind_; }
  std::size_t position() const noexcept { return position_; }
  /// Meaningful for UnbalancedPath only.
  int final_height() const noexcept { return final_height_; }

 private:
  Kind kind_;
  std::size_t position_;
  int final_height_;
};

/// Input lies outside the domain class of a map (e.g. contains UU where a
/// UU-free path is required).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The leaf/node correspondences are undefined on the root-only tree.
class TrivialTreeError : public std::runtime_error {
 public:
  TrivialTreeError() : std::runtime_error("correspondence undefined on the trivial tree") {}
};

/// strict_factor was asked to guarantee a leading flat and found none.
class MissingLeadingFlatError : public std::runtime_error {
 public:
  MissingLeadingFlatError()
      : std::runtime_error("segment has no leading flatstep") {}
};

/// The two forms of a map disagreed in Checked mode.
class ModeMismatchError : public std::runtime_error {
 public:
  ModeMismatchError(std::string recursive_out, std::string explicit_out)
      : std::runtime_error("checked mode mismatch: recursive form gave \"" +
                           recursive_out + "\", explicit form gave \"" +
                           explicit_out + "\""),
        recursive_(std::move(recursive_out)),
        explicit_(std::move(explicit_out)) {}

  const std::string& recursive_output() const noexcept { return recursive_; }
  const std::string& explicit_output() const noexcept { return explicit_; }

 private:
  std::string recursive_;
  std::string explicit_;
};

}  // namespace motzkin
