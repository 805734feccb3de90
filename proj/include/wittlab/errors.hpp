#pragma once

#include <stdexcept>
#include <string>

namespace wittlab {

// Every failure mode the library reports. Names are part of the C API and
// JSON error contract, so keep them stable.
enum class Err {
  InvalidArgument,
  EvenResidueChar,
  NotIrreducible,
  WildExtension,
  PrecisionExhausted,
  DivisionByZeroAtPrecision,
  NoSimpleRoot,
  NotARoot,
  NotQuadratic,
  HypothesisViolated,
  NotInFixedField,
  CaseMismatch,
  DegenerateAtPrecision,
  NotSymmetricOrSkew,
  NotAGenerator,
  NotSkew,
  NotSelfDual,
  SingularSystem,
  DissimilarGroups,
  ZeroBeta,
  UnknownClass,
  NonSkewWittType,
  WrongCase,
  NotInNormalizer,
  BasisMismatch,
  UnknownSubcommand,
  UnsupportedInvolution,
};

const char* err_name(Err e);

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& msg);
  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] void fail(Err code, const std::string& msg);

}  // namespace wittlab
