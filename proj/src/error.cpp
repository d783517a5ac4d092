#include "effdim/error.hpp"

namespace effdim {

std::string_view errc_name(Errc c) {
  switch (c) {
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::NotAssociative: return "NotAssociative";
    case Errc::NotPrime: return "NotPrime";
    case Errc::ReduciblePolynomial: return "ReduciblePolynomial";
    case Errc::Inconsistent: return "Inconsistent";
    case Errc::NotGenerating: return "NotGenerating";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::NotEffective: return "NotEffective";
    case Errc::HypothesisFailed: return "HypothesisFailed";
    case Errc::ActionInconsistent: return "ActionInconsistent";
    case Errc::NotCommutativeInverse: return "NotCommutativeInverse";
    case Errc::NotAGGM: return "NotAGGM";
    case Errc::NotGroupMapping: return "NotGroupMapping";
    case Errc::StructureMatrixNotOneSidedInvertible: return "StructureMatrixNotOneSidedInvertible";
    case Errc::NotLRB: return "NotLRB";
    case Errc::NotClosed: return "NotClosed";
    case Errc::TooLarge: return "TooLarge";
    case Errc::FieldTooSmall: return "FieldTooSmall";
    case Errc::RetriesExhausted: return "RetriesExhausted";
    case Errc::HypothesesFail: return "HypothesesFail";
    case Errc::NotAcyclic: return "NotAcyclic";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::RuleInapplicable: return "RuleInapplicable";
    case Errc::UnknownFamily: return "UnknownFamily";
    case Errc::Malformed: return "Malformed";
  }
  return "Unknown";
}

}  // namespace effdim
