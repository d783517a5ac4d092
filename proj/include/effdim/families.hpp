#pragma once

// Named families of semigroups with their known effective dimension over C,
// and the exact rule for transformation monoids with a doubly transitive
// group of units.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "effdim/quiver.hpp"
#include "effdim/rep.hpp"
#include "effdim/semigroup.hpp"

namespace effdim {

inline constexpr std::size_t kFamilyBudget = 10000;

// Partial maps on {0, ..., points-1} (-1 = undefined), sorted
// lexicographically; the product ab is "a after b", so the natural module
// is the left linearized action.
struct TransformationMonoid {
  int points = 0;
  std::vector<std::vector<int>> maps;
  CayleyTable table;
  std::vector<Elem> units;  // elements that are permutations

  // Sorts and deduplicates `maps` and builds the composition table.
  static TransformationMonoid from_maps(int points, std::vector<std::vector<int>> maps);
  // Closure of the generators under composition (identity included).
  static TransformationMonoid generated(int points, const std::vector<std::vector<int>>& gens);
  bool total() const;
};

struct FamilyMetadata {
  std::string name;
  nlohmann::json params;
  std::optional<int> known_effdim_over_C;
  std::string closed_form;  // e.g. "2^n-1"
  std::string source;       // "table", "proposition", "cited-external" or "none"
  std::string note;
  nlohmann::json to_json() const;
};

struct Family {
  CayleyTable table;
  FamilyMetadata meta;
  std::optional<TransformationMonoid> transformations;
  std::optional<Quiver> quiver;
  std::optional<PathSemigroup> paths;
};

// Families with a constructor (see family_names); parameters are a JSON
// object such as {"n": 3} or {"m": 2, "n": 4}.
Family make_family(const std::string& name, const nlohmann::json& params);
std::vector<std::string> family_names();
// Metadata without construction; also covers the cited-only families
// "K" (Kiselman) and "PAut" (partial linear bijections).
FamilyMetadata family_metadata(const std::string& name, const nlohmann::json& params);

template <class Field>
struct DoublyTransitiveResult {
  int value = 0;
  MatrixRep<Field> witness;  // natural module
};

// Total transformation monoid whose units act 2-transitively and which
// contains a singular map; the characteristic must not divide the order of
// the unit group. Raises RuleInapplicable naming the failed hypothesis.
template <class Field>
DoublyTransitiveResult<Field> doubly_transitive_effdim(std::shared_ptr<const CayleyTable> table,
                                                       const TransformationMonoid& t, const Field& field);

extern template DoublyTransitiveResult<RationalField> doubly_transitive_effdim<RationalField>(
    std::shared_ptr<const CayleyTable>, const TransformationMonoid&, const RationalField&);
extern template DoublyTransitiveResult<FiniteField> doubly_transitive_effdim<FiniteField>(
    std::shared_ptr<const CayleyTable>, const TransformationMonoid&, const FiniteField&);

}  // namespace effdim
