#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace strat {

/// Base of every error the library raises.  Strategy failure is never an
/// exception; it is an empty effect result.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text, with a 1-based source position.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t line, std::size_t col)
      : Error(std::to_string(line) + ":" + std::to_string(col) + ": " + what),
        line_(line), col_(col) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return col_; }

private:
  std::size_t line_;
  std::size_t col_;
};

/// A signature file that parses but violates a declaration invariant.
class SignatureError : public Error {
public:
  SignatureError(const std::string& what, std::string name)
      : Error(what + " `" + name + "`"), name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

private:
  std::string name_;
};

class UnknownConstructor : public Error {
public:
  explicit UnknownConstructor(std::string name)
      : Error("unknown constructor `" + name + "`"), name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

private:
  std::string name_;
};

using Path = std::vector<std::size_t>;

inline std::string format_path(const Path& path) {
  std::string out = "[";
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i != 0) out += ",";
    out += std::to_string(path[i]);
  }
  return out + "]";
}

/// Ill-sorted term: unknown constructor, arity or sort mismatch.  The path
/// lists child indices from the root to the offending node.
class SortError : public Error {
public:
  enum class Kind { UnknownConstructor, ArityMismatch, SortMismatch };

  SortError(Kind kind, Path path, std::string detail)
      : Error(describe(kind) + " at path " + format_path(path) + ": " + detail),
        kind_(kind), path_(std::move(path)) {}

  Kind kind() const noexcept { return kind_; }
  const Path& path() const noexcept { return path_; }

private:
  static std::string describe(Kind kind) {
    switch (kind) {
    case Kind::UnknownConstructor: return "unknown constructor";
    case Kind::ArityMismatch: return "arity mismatch";
    case Kind::SortMismatch: return "sort mismatch";
    }
    return "sort error";
  }

  Kind kind_;
  Path path_;
};

/// A type-preserving strategy produced a term of a different sort.
class SortViolation : public Error {
public:
  SortViolation(std::string tag, std::string expected, std::string actual)
      : Error("sort violation in update for `" + tag + "`: expected " + expected +
              ", got " + actual),
        tag_(std::move(tag)) {}

  const std::string& tag() const noexcept { return tag_; }

private:
  std::string tag_;
};

/// zero/plus requested from an effect kind that has neither.
class UnsupportedEffect : public Error {
public:
  using Error::Error;
};

/// Two strategies with different effect kinds were combined.
class EffectMismatch : public Error {
public:
  using Error::Error;
};

/// Dynamic value of the wrong shape (e.g. adding a string to an integer).
class ValueError : public Error {
public:
  using Error::Error;
};

class RuleError : public Error {
public:
  using Error::Error;
};

class DslError : public Error {
public:
  using Error::Error;
};

} // namespace strat
