#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace berkdyn {

enum class Errc {
  InvalidConfig,
  DivisionByZero,
  PrecisionExhausted,
  NotIntegral,
  NotASquare,
  OddValuation,
  ZeroPolynomial,
  NotSquarefree,
  NoRootsInField,
  InfinityHasNoDiameter,
  TypeIPoint,
  SamePoint,
  NotNested,
  TypeIVLimit,
  ZeroFunction,
  DegreesSplit,
  HypothesisFails,
  HasZeros,
  NotFixed,
  DegenerateMap,
  IrreducibleFactorTooLarge,
  BranchLeavesField,
  LeadingCoeffVanishes,
  FactorDegreeTooLarge,
  NotRepelling,
  CollisionRadiusExceeded,
  MultipleRoot,
  ParseError,
  Unsupported,
};

std::string_view errc_name(Errc code);

/// Every domain failure in the library is reported through this type; the
/// code is what callers branch on, the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Parse failures carry the byte offset into the input.
class ParseError : public Error {
 public:
  ParseError(std::size_t pos, const std::string& what)
      : Error(Errc::ParseError, what + " at position " + std::to_string(pos)), pos_(pos) {}

  std::size_t position() const noexcept { return pos_; }

 private:
  std::size_t pos_;
};

}  // namespace berkdyn
