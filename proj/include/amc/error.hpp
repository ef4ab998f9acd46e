#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace amc {

/// Base of all errors raised by the checker core.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed formula or model text. `position` is a byte offset when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position = npos)
      : Error(position == npos ? what : what + " at offset " + std::to_string(position)),
        position_(position) {}

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Well-formed input that violates a semantic constraint (unbound variable,
/// undefined outcome, empty effectivity set, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A query that cannot be answered for the given model, e.g. an EF engine on
/// a CGF, or a modality over a coalition absent from a sparse EF.
class CheckError : public Error {
 public:
  using Error::Error;
};

/// A file that cannot be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

class TimeoutError : public Error {
 public:
  TimeoutError() : Error("timeout") {}
};

}  // namespace amc
