#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kahler {

/// Base class of every failure raised by the library. `kind()` is the
/// stable machine-readable tag written into CLI error reports.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
  [[nodiscard]] virtual std::string_view kind() const noexcept { return "Error"; }
};

#define KAHLER_DEFINE_ERROR(Name)                                                   \
  class Name : public Error {                                                       \
  public:                                                                           \
    using Error::Error;                                                             \
    [[nodiscard]] std::string_view kind() const noexcept override { return #Name; } \
  }

/// Singular parameter point: pole, sqrt of a non-positive value, atan2(0, 0).
KAHLER_DEFINE_ERROR(DomainError);
/// The differential of the immersion has rank < 2.
KAHLER_DEFINE_ERROR(RankError);
/// sin(theta) below the adapted-frame cutoff; the tangent plane is (nearly) complex.
KAHLER_DEFINE_ERROR(NearComplexError);
/// |eta| below cutoff, so the Lagrangian angle does not exist at the point.
KAHLER_DEFINE_ERROR(UndefinedAngleError);
KAHLER_DEFINE_ERROR(NonConvergenceError);
KAHLER_DEFINE_ERROR(FrameError);
KAHLER_DEFINE_ERROR(ParamError);
KAHLER_DEFINE_ERROR(UnsupportedDomainError);
/// A file could not be opened or read.
KAHLER_DEFINE_ERROR(IoError);

#undef KAHLER_DEFINE_ERROR

/// Expression or surface-file syntax error. `offset` is the 1-based byte
/// position of the offending character (one past the end for premature end
/// of input); `line`/`column` are 1-based as well.
class ParseError : public Error {
public:
  ParseError(std::size_t offset, std::string expected, std::string message,
             std::size_t line = 1, std::size_t column = 0)
      : Error(message), offset_(offset), line_(line), column_(column == 0 ? offset : column),
        expected_(std::move(expected)) {}

  [[nodiscard]] std::string_view kind() const noexcept override { return "ParseError"; }
  [[nodiscard]] std::size_t offset() const noexcept { return offset_; }
  [[nodiscard]] std::size_t line() const noexcept { return line_; }
  [[nodiscard]] std::size_t column() const noexcept { return column_; }
  [[nodiscard]] const std::string& expected() const noexcept { return expected_; }

private:
  std::size_t offset_;
  std::size_t line_;
  std::size_t column_;
  std::string expected_;
};

} // namespace kahler
