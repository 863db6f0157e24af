#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cdd {

enum class Errc {
  SyntaxError,
  UnknownSymbol,
  ArityMismatch,
  FreeVariable,
  DomainEmpty,
  EvaluationOverflow,
  TypeMismatch,
  InvalidStructure,
  HigherOrderGraph,
  CapExceeded,
  Unsupported,
  DimensionMismatch,
  IndexOutOfRange,
  SchemaError,
  InfeasibleSeed,
  UnknownSurfaceReference,
  UnsupportedRelation,
  BoxOutsideAmbient,
  SeedNotContained,
  InfeasibleInput,
  IoError,
};

std::string_view to_string(Errc code);

// Every failure surfaced by the library is an Error carrying one of the
// codes above; the CLI maps codes onto exit statuses.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, std::string expected, const std::string& found)
      : Error(Errc::SyntaxError, "at offset " + std::to_string(position) + ": expected " +
                                     expected + ", found " + found),
        position_(position),
        expected_(std::move(expected)) {}

  std::size_t position() const noexcept { return position_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t position_;
  std::string expected_;
};

}  // namespace cdd
