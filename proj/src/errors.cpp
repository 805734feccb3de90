#include "wittlab/errors.hpp"

namespace wittlab {

const char* err_name(Err e) {
  switch (e) {
    case Err::InvalidArgument: return "InvalidArgument";
    case Err::EvenResidueChar: return "EvenResidueChar";
    case Err::NotIrreducible: return "NotIrreducible";
    case Err::WildExtension: return "WildExtension";
    case Err::PrecisionExhausted: return "PrecisionExhausted";
    case Err::DivisionByZeroAtPrecision: return "DivisionByZeroAtPrecision";
    case Err::NoSimpleRoot: return "NoSimpleRoot";
    case Err::NotARoot: return "NotARoot";
    case Err::NotQuadratic: return "NotQuadratic";
    case Err::HypothesisViolated: return "HypothesisViolated";
    case Err::NotInFixedField: return "NotInFixedField";
    case Err::CaseMismatch: return "CaseMismatch";
    case Err::DegenerateAtPrecision: return "DegenerateAtPrecision";
    case Err::NotSymmetricOrSkew: return "NotSymmetricOrSkew";
    case Err::NotAGenerator: return "NotAGenerator";
    case Err::NotSkew: return "NotSkew";
    case Err::NotSelfDual: return "NotSelfDual";
    case Err::SingularSystem: return "SingularSystem";
    case Err::DissimilarGroups: return "DissimilarGroups";
    case Err::ZeroBeta: return "ZeroBeta";
    case Err::UnknownClass: return "UnknownClass";
    case Err::NonSkewWittType: return "NonSkewWittType";
    case Err::WrongCase: return "WrongCase";
    case Err::NotInNormalizer: return "NotInNormalizer";
    case Err::BasisMismatch: return "BasisMismatch";
    case Err::UnknownSubcommand: return "UnknownSubcommand";
    case Err::UnsupportedInvolution: return "UnsupportedInvolution";
  }
  return "Unknown";
}

Error::Error(Err code, const std::string& msg)
    : std::runtime_error(std::string(err_name(code)) + ": " + msg), code_(code) {}

void fail(Err code, const std::string& msg) { throw Error(code, msg); }

}  // namespace wittlab
