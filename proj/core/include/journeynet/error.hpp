#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace journeynet {

/// Failure categories surfaced by the library. Each maps to one named error
/// condition of an operation's contract.
enum class ErrorKind {
  DegenerateBoundary,
  MissingRegion,
  UnknownRegion,
  EmptyNetwork,
  TooFewWindows,
  MissingInterval,
  EmptySample,
  DegenerateSample,
  InvalidP,
  ZeroVariance,
  DegenerateTable,
  DegenerateGroup,
  TooShort,
  TooFewPoints,
  KTooLarge,
  MissingAttributes,
  EmptyAfterFilter,
  InvalidConfig,
  ParseError,
  IntegrityError,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised while reading input files. Row numbers are 1-based and count the
/// header line, so they match what a text editor shows.
class ParseError : public Error {
 public:
  ParseError(std::string file, std::size_t row, std::string column, const std::string& reason)
      : Error(ErrorKind::ParseError,
              file + ":" + std::to_string(row) + " column '" + column + "': " + reason),
        file_(std::move(file)),
        row_(row),
        column_(std::move(column)) {}

  const std::string& file() const noexcept { return file_; }
  std::size_t row() const noexcept { return row_; }
  const std::string& column() const noexcept { return column_; }

 private:
  std::string file_;
  std::size_t row_;
  std::string column_;
};

}  // namespace journeynet
