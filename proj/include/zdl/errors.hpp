#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace zdl {

// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

// A file could not be opened or read.
class InputError : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class MonotonicityError : public Error {
 public:
  explicit MonotonicityError(std::size_t line)
      : Error("line " + std::to_string(line) + ": ordinates are not strictly increasing"),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IncompleteScanError : public Error {
 public:
  using Error::Error;
};

class OffsetTooLargeError : public Error {
 public:
  using Error::Error;
};

class EmptyInputError : public Error {
 public:
  using Error::Error;
};

class InsufficientPointsError : public Error {
 public:
  using Error::Error;
};

class InfeasibleMomentsError : public Error {
 public:
  using Error::Error;
};

class DegenerateSampleError : public Error {
 public:
  using Error::Error;
};

}  // namespace zdl
