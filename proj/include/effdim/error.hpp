#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace effdim {

enum class Errc {
  IndexOutOfRange,
  NotAssociative,
  NotPrime,
  ReduciblePolynomial,
  Inconsistent,
  NotGenerating,
  FieldMismatch,
  NotEffective,
  HypothesisFailed,
  ActionInconsistent,
  NotCommutativeInverse,
  NotAGGM,
  NotGroupMapping,
  StructureMatrixNotOneSidedInvertible,
  NotLRB,
  NotClosed,
  TooLarge,
  FieldTooSmall,
  RetriesExhausted,
  HypothesesFail,
  NotAcyclic,
  BudgetExceeded,
  RuleInapplicable,
  UnknownFamily,
  Malformed,
};

std::string_view errc_name(Errc c);

// Single exception type for the library; the code tells callers what went
// wrong and `witness` optionally carries up to three element indices.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what,
        std::optional<std::array<std::uint32_t, 3>> witness = std::nullopt)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code),
        witness_(witness) {}

  Errc code() const noexcept { return code_; }
  const std::optional<std::array<std::uint32_t, 3>>& witness() const noexcept {
    return witness_;
  }

 private:
  Errc code_;
  std::optional<std::array<std::uint32_t, 3>> witness_;
};

}  // namespace effdim
