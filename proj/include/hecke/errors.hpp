#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hecke {

/// Argument outside the range a table was built for.
class OutOfRange : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Requested table size exceeds the supported cap.
class CapacityExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Argument outside the mathematical domain of a formula.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A file-backed prime source has no entry for a prime the caller needs.
class MissingPrimeCoefficient : public std::runtime_error {
 public:
  explicit MissingPrimeCoefficient(std::uint64_t p)
      : std::runtime_error("missing prime coefficient for p=" + std::to_string(p)), prime_(p) {}
  std::uint64_t prime() const noexcept { return prime_; }

 private:
  std::uint64_t prime_;
};

/// Local Euler factor expansion left an imaginary residue above tolerance.
class NonRealCoefficient : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Prime-power tail of a weight does not converge under its envelope.
class DivergentTail : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed prime coefficient file or CLI value.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hecke
