#pragma once

#include <stdexcept>
#include <string>

namespace formtree {

/// Invalid caller-supplied data: malformed boxes, empty inputs, bad layouts.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A documented precondition of an operation was not met.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Extraction failed to make progress. Should be unreachable.
class InternalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A document could not be decoded. `path()` is a JSON pointer into the
/// offending document.
class ParseError : public std::runtime_error {
 public:
  enum class Code { Malformed, UnknownNodeKind, UndersizedGroup };

  ParseError(Code code, std::string path, const std::string& what)
      : std::runtime_error(what + " at '" + (path.empty() ? "/" : path) + "'"),
        code_(code),
        path_(std::move(path)) {}

  Code code() const noexcept { return code_; }
  const std::string& path() const noexcept { return path_; }

 private:
  Code code_;
  std::string path_;
};

/// The synthetic generator could not satisfy a placement constraint.
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace formtree
