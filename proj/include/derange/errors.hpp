#ifndef DERANGE_ERRORS_HPP
#define DERANGE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace derange {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operands have different group degrees / square orders.
struct DegreeMismatch : Error {
  using Error::Error;
};

// Text did not describe a bijection of {1,...,n}.
struct InvalidPermutation : Error {
  using Error::Error;
};

// File parser failure with 1-based position information.
struct ParseError : Error {
  ParseError(const std::string& what, int line_, int col_)
      : Error(what + " (line " + std::to_string(line_) + ", column " +
              std::to_string(col_) + ")"),
        line(line_),
        col(col_) {}
  int line;
  int col;
};

struct NotOrthogonal : Error {
  using Error::Error;
};

// An ordered clique pair violates the disconnected-pair invariants.
struct BrokenPair : Error {
  using Error::Error;
};

struct InvalidRectangle : Error {
  using Error::Error;
};

struct CompositeModulus : Error {
  using Error::Error;
};

// Requested prime does not divide the group degree.
struct CharacteristicMismatch : Error {
  using Error::Error;
};

struct NonIntegralTrace : Error {
  using Error::Error;
};

// R-set candidate fails one of the structural bullets; the message names it.
struct StructuralReject : Error {
  using Error::Error;
};

struct NoUsableDependency : Error {
  using Error::Error;
};

// Refusal to start a long-running computation without the opt-in flag.
struct ResourceLimit : Error {
  ResourceLimit(const std::string& what, std::string flag)
      : Error(what), required_flag(std::move(flag)) {}
  std::string required_flag;
};

// A fact guaranteed by a theorem failed to hold; indicates a defect.
struct VerificationFailure : Error {
  using Error::Error;
};

}  // namespace derange

#endif
