#pragma once

// Commutative inverse monoids: Clifford decomposition, the dual monoid of
// characters, minimal monoid generation and the resulting effective
// dimension (with lattice and abelian-group shortcuts).

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "effdim/rep.hpp"
#include "effdim/semigroup.hpp"

namespace effdim {

// M as a semilattice E(M) of abelian groups G_e. Group elements are given
// coordinates in Z/d_1 x ... x Z/d_k (invariant factors d_t > 1).
struct CliffordStructure {
  std::vector<Elem> idempotents;                 // sorted
  std::vector<std::uint32_t> support;            // per element: index of the idempotent e with s in G_e
  std::vector<std::vector<Elem>> groups;         // members of each G_e
  std::vector<std::vector<std::uint64_t>> factors;  // invariant factors of each G_e
  std::vector<std::vector<std::uint64_t>> coords;   // per element, coordinates in its own group
  std::vector<std::vector<Elem>> basis;          // per group: element with unit coordinate t
  std::uint64_t exponent = 1;                    // lcm of all group exponents
  std::vector<std::vector<bool>> leq;            // leq[i][j]: e_i <= e_j, i.e. e_i e_j = e_i
  std::vector<std::vector<std::uint32_t>> join;  // least upper bound in E(M)

  std::uint32_t idempotent_index(Elem e) const;
};

// Throws NotCommutativeInverse unless M is a commutative inverse monoid.
CliffordStructure clifford_structure(const CayleyTable& m);

// A character of M: values[s] in Z/exponent encodes xi^values[s]; -1
// encodes the value 0.
using CharacterValues = std::vector<std::int64_t>;

struct DualElement {
  std::uint32_t support;                    // index into CliffordStructure::idempotents
  std::vector<std::uint64_t> character;     // coordinates against the invariant factors of G_support
};

struct DualMonoid {
  CayleyTable table;
  std::vector<DualElement> elements;
  std::vector<CharacterValues> values;  // per dual element, a function on M
  std::uint64_t exponent = 1;
  std::vector<Elem> support_elements;   // idempotents of M, for the sidecar

  nlohmann::json sidecar() const;
};

DualMonoid dual_monoid(const CayleyTable& m);
DualMonoid dual_monoid(const CayleyTable& m, const CliffordStructure& c);

struct MinGenerators {
  int count = 0;
  std::vector<Elem> generators;
};

// Minimum number of monoid generators, by exhaustive search after removing
// the elements every generating set must contain.
MinGenerators min_generators(const CayleyTable& m);

enum class CommInverseRule { Lattice, AbelianGroup, DualMonoid };
std::string rule_name(CommInverseRule r);

struct CommInverseResult {
  int value = 0;
  CommInverseRule rule = CommInverseRule::DualMonoid;
  std::string certificate;
  std::vector<CharacterValues> characters;  // a generating set of the dual, as functions on M
  std::uint64_t exponent = 1;
  std::vector<std::uint64_t> group_orders;  // |G_e| for every idempotent
};

CommInverseResult effdim_comm_inverse(const CayleyTable& m);

// Number of join-irreducible elements of a finite lattice given as a meet
// semilattice with top (a commutative band monoid).
int count_join_irreducibles(const CayleyTable& lattice);

// Diagonal representation s -> diag(xi^chi_1(s), ..., xi^chi_d(s)), where xi
// must have multiplicative order exactly `exponent`.
template <class Field>
MatrixRep<Field> character_witness(std::shared_ptr<const CayleyTable> m, const std::vector<CharacterValues>& chars,
                                   const Field& field, const typename Field::scalar_type& xi);

// Element of exact multiplicative order n, if any.
std::optional<Gf> element_of_order(const FiniteField& f, std::uint64_t n);

// Witness over a field that contains the needed roots of unity: Q when the
// exponent is at most 2, otherwise F_p with p from root_of_unity(exponent).
AnyRep comm_inverse_witness(std::shared_ptr<const CayleyTable> m, const CommInverseResult& r);

extern template MatrixRep<RationalField> character_witness<RationalField>(std::shared_ptr<const CayleyTable>,
                                                                          const std::vector<CharacterValues>&,
                                                                          const RationalField&, const Rational&);
extern template MatrixRep<FiniteField> character_witness<FiniteField>(std::shared_ptr<const CayleyTable>,
                                                                      const std::vector<CharacterValues>&,
                                                                      const FiniteField&, const Gf&);

}  // namespace effdim
