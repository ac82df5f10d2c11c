#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace slicelab {

// Every failure thrown by the library derives from Error. The C API maps the
// concrete type onto a status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the operation's domain (wrong popcount, bad index, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A documented precondition of a constructive procedure does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Malformed decision tree: cycle, dangling child, repeated query on a path.
class StructuralError : public Error {
 public:
  using Error::Error;
};

// Input text (table file, board string, JSON) failed to parse.
class ParseError : public Error {
 public:
  using Error::Error;
};

// The operation would exceed its state/enumeration budget.
class ResourceError : public Error {
 public:
  ResourceError(const std::string& what, std::uint64_t attempted)
      : Error(what + " (attempted " + std::to_string(attempted) + ")"), attempted_(attempted) {}

  std::uint64_t attempted() const noexcept { return attempted_; }

 private:
  std::uint64_t attempted_;
};

// An invariant that a proof guarantees was violated. Firing means a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace slicelab
