#pragma once

#include <stdexcept>
#include <string>

namespace mvbasis {

/// A caller broke a documented precondition (mismatched lengths, wrong basis tag, ...).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Malformed textual input: words, vector specs, shapes.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An enumeration or word length exceeds the configured bound.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Polynomial arithmetic across two different variable tables.
class VarTableMismatch : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A division that must be exact left a remainder.
class InexactDivision : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a chart recursion step that is supposed to divide exactly does not.
/// Any occurrence means the recursion as implemented is wrong; runs must abort.
class RecursionFalsified : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mvbasis
