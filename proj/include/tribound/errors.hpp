#pragma once

#include <stdexcept>
#include <string>

namespace tribound {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (diagram JSON, polynomial expression, cache file).
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t position = npos)
      : Error(position == npos ? what : what + " at position " + std::to_string(position)),
        position_(position) {}

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A diagram that parses but violates one of the structural invariants.
class StructuralError : public Error {
 public:
  using Error::Error;
};

class ConnectivityError : public StructuralError {
 public:
  using StructuralError::StructuralError;
};

class PlanarityError : public StructuralError {
 public:
  using StructuralError::StructuralError;
};

/// Region propagation produced two different colors for one face.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Inputs built over different moduli were combined.
class ModulusMismatch : public Error {
 public:
  using Error::Error;
};

/// Exact integer arithmetic left the representable range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// A set computation would exceed its configured cardinality cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// Argument outside the operation's domain (bad modulus, a == b, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace tribound
