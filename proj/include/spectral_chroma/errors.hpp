#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spectral_chroma {

// Base of every error raised by the library. The CLI maps subclasses onto exit
// codes (2 parse/input, 3 solver, 4 chain violation).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " (at byte offset " + std::to_string(offset) + ")"), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

// Violated precondition on caller-supplied data.
class InputError : public Error {
 public:
  using Error::Error;
};

// Enumeration guard (n too large for exact combinatorics).
class SizeError : public InputError {
 public:
  using InputError::InputError;
};

// Numerical failure inside a solver (Cholesky breakdown, iteration cap, ...).
class SolverError : public Error {
 public:
  using Error::Error;
};

// A certificate or duality check did not verify.
class CertificationError : public Error {
 public:
  using Error::Error;
};

// Logic/consistency failure that must abort (e.g. lo > hi in the h bracket, a
// violated inequality in the chain verifier).
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace spectral_chroma
