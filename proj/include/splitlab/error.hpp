#pragma once

#include <stdexcept>
#include <string>

namespace splitlab {

/// Base of every error raised by the library. `code()` is a stable
/// machine-readable identifier used by the CLI and the HTTP API.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

/// A marking attempt that cannot produce a valid line.
class PlacementError : public Error {
 public:
  using Error::Error;
};

/// The new line would overlap an earlier collinear line.
class OverlapError : public PlacementError {
 public:
  explicit OverlapError(const std::string& what)
      : PlacementError("OverlapError", what) {}
};

/// The new line would have zero length or lie on the canvas border.
class DegenerateLineError : public PlacementError {
 public:
  explicit DegenerateLineError(const std::string& what)
      : PlacementError("DegenerateLineError", what) {}
};

class EmptyUndoError : public Error {
 public:
  EmptyUndoError() : Error("EmptyUndoError", "nothing to undo") {}
};

class EmptyInputError : public Error {
 public:
  explicit EmptyInputError(const std::string& what)
      : Error("EmptyInputError", what) {}
};

class DegenerateSampleError : public Error {
 public:
  explicit DegenerateSampleError(const std::string& what)
      : Error("DegenerateSampleError", what) {}
};

class InfeasibleError : public Error {
 public:
  explicit InfeasibleError(const std::string& what)
      : Error("InfeasibleError", what) {}
};

class InvalidArgumentError : public Error {
 public:
  explicit InvalidArgumentError(const std::string& what)
      : Error("InvalidArgumentError", what) {}
};

/// Malformed record, catalogue, CSV or config input. Carries the 1-based
/// line number (0 when not applicable) and the offending field name.
class ParseError : public Error {
 public:
  ParseError(int line, std::string field, const std::string& what)
      : Error("ParseError", format(line, field, what)),
        line_(line),
        field_(std::move(field)),
        detail_(what) {}

  int line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }
  const std::string& detail() const noexcept { return detail_; }

  /// The same error with `source` (typically a file name) prefixed.
  ParseError in(const std::string& source) const {
    ParseError copy(line_, field_, detail_);
    copy.message_ = source + ": " + copy.Error::what();
    return copy;
  }

  const char* what() const noexcept override {
    return message_.empty() ? Error::what() : message_.c_str();
  }

 private:
  static std::string format(int line, const std::string& field,
                            const std::string& what) {
    std::string out;
    if (line > 0) out += "line " + std::to_string(line) + ": ";
    if (!field.empty()) out += "field '" + field + "': ";
    return out + what;
  }

  int line_;
  std::string field_;
  std::string detail_;
  std::string message_;
};

}  // namespace splitlab
