#pragma once

// Generalised group mapping semigroups: Rees coordinates of the
// distinguished ideal, the AGGM rank rule and the group-mapping rule.

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "effdim/rep.hpp"
#include "effdim/semigroup.hpp"

namespace effdim {

inline constexpr std::uint32_t kNoIndex = UINT32_MAX;

struct ReesStructure {
  std::vector<Elem> ideal;        // sorted; contains the zero when there is one
  std::optional<Elem> zero;
  Elem idempotent = 0;            // e, the least idempotent of I \ {z}
  SubSemigroup group;             // G = H_e
  std::vector<std::uint32_t> r_index, l_index;  // per element of S, kNoIndex outside I \ {z}
  std::vector<Elem> r_reps;       // r_i in R_i ∩ L_e (r = e on e's own class)
  std::vector<Elem> l_reps;       // q_lambda in R_e ∩ L_lambda
  // Rees coordinates (i, position of g in `group`, lambda) with x = r_i g q_lambda.
  std::vector<std::array<std::uint32_t, 3>> coords;
  // m x n, entry = position in `group` of q_lambda r_i, or -1 for zero.
  std::vector<std::vector<std::int64_t>> structure_matrix;

  std::size_t n() const { return r_reps.size(); }  // R-classes
  std::size_t m() const { return l_reps.size(); }  // L-classes
  nlohmann::json to_json() const;
};

enum class GGMKind { NotGGM, AGGM, GroupMapping };
std::string ggm_kind_name(GGMKind k);

struct GGMClass {
  GGMKind kind = GGMKind::NotGGM;
  std::optional<ReesStructure> rees;
  std::string reason;
  std::optional<std::pair<Elem, Elem>> witness;  // two elements acting identically on the ideal
};

GGMClass classify_ggm(const CayleyTable& s);

// Rank of the 0/1 structure matrix over `field`.
template <class Field>
Index structure_rank(const ReesStructure& rees, const Field& field);

template <class Field>
struct GGMResult {
  int value = 0;
  MatrixRep<Field> witness;
  std::string certificate;
};

template <class Field>
GGMResult<Field> aggm_effdim(std::shared_ptr<const CayleyTable> s, const Field& field);

enum class InvertibleSide { Left, Right };

// Left or right invertibility of the structure matrix over QG, tested by
// the rank of its unfolding into |G| x |G| regular-representation blocks.
std::optional<InvertibleSide> structure_matrix_invertibility(const CayleyTable& s, const GGMClass& cls);

// `g_module` must be an effective representation of rees.group.table of
// dimension g_effdim.
template <class Field>
GGMResult<Field> group_mapping_effdim(std::shared_ptr<const CayleyTable> s, int g_effdim,
                                      const MatrixRep<Field>& g_module);

// The witness construction alone (valid without invertibility, as an upper
// bound): Ae (x)_G V on the left R-class side.
template <class Field>
MatrixRep<Field> group_mapping_module(std::shared_ptr<const CayleyTable> s, const ReesStructure& rees,
                                      const MatrixRep<Field>& g_module);

#define EFFDIM_GGM_EXTERN(F)                                                                                \
  extern template Index structure_rank<F>(const ReesStructure&, const F&);                                 \
  extern template GGMResult<F> aggm_effdim<F>(std::shared_ptr<const CayleyTable>, const F&);               \
  extern template GGMResult<F> group_mapping_effdim<F>(std::shared_ptr<const CayleyTable>, int,            \
                                                       const MatrixRep<F>&);                               \
  extern template MatrixRep<F> group_mapping_module<F>(std::shared_ptr<const CayleyTable>, const ReesStructure&, \
                                                       const MatrixRep<F>&);
EFFDIM_GGM_EXTERN(RationalField)
EFFDIM_GGM_EXTERN(FiniteField)
#undef EFFDIM_GGM_EXTERN

}  // namespace effdim
