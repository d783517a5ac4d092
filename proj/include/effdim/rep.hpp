#pragma once

// Matrix representations of finite semigroups.

#include <memory>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "effdim/linalg.hpp"
#include "effdim/semigroup.hpp"

namespace effdim {

struct RepCheckResult {
  bool is_homomorphism = false;
  std::optional<std::pair<Elem, Elem>> hom_failure;  // (a, b) with phi(ab) != phi(a)phi(b)
  bool is_effective = false;
  std::optional<std::pair<Elem, Elem>> collapsed;    // a != b with equal images
  bool is_faithful = false;
  Index annihilator_dim = 0;
  bool is_unital = true;  // identity maps to I (vacuous without an identity)
};

template <class Field>
class MatrixRep {
 public:
  using scalar_type = typename Field::scalar_type;
  using matrix_type = Matrix<scalar_type>;

  MatrixRep(std::shared_ptr<const CayleyTable> s, Field field, Index dim, std::vector<matrix_type> images)
      : s_(std::move(s)), field_(std::move(field)), dim_(dim), images_(std::move(images)) {
    if (images_.size() != s_->size()) throw Error(Errc::IndexOutOfRange, "one image per element is required");
    for (auto& m : images_) {
      if (m.rows() != dim_ || m.cols() != dim_) throw Error(Errc::IndexOutOfRange, "image has the wrong shape");
      canonicalize(field_, m);
    }
  }

  const CayleyTable& semigroup() const { return *s_; }
  const std::shared_ptr<const CayleyTable>& semigroup_ptr() const { return s_; }
  const Field& field() const { return field_; }
  Index dim() const { return dim_; }
  const matrix_type& image(Elem a) const { return images_[a]; }
  const std::vector<matrix_type>& images() const { return images_; }

  const std::optional<RepCheckResult>& check() const { return check_; }
  bool verified() const { return check_.has_value(); }
  void set_check(RepCheckResult r) { check_ = std::move(r); }

 private:
  std::shared_ptr<const CayleyTable> s_;
  Field field_;
  Index dim_;
  std::vector<matrix_type> images_;
  std::optional<RepCheckResult> check_;
};

using AnyRep = std::variant<MatrixRep<RationalField>, MatrixRep<FiniteField>>;

// Images for every element by breadth-first right multiplication from the
// generators. A monoid identity not reached this way maps to I.
template <class Field>
MatrixRep<Field> extend_from_generators(std::shared_ptr<const CayleyTable> s, const Field& field,
                                        const std::vector<Elem>& gens,
                                        const std::vector<Matrix<typename Field::scalar_type>>& images);

// Above this order the homomorphism check uses generator-times-element pairs
// (equivalent, by induction on word length) instead of all pairs.
inline constexpr std::size_t kFullPairCheckLimit = 200;

template <class Field>
RepCheckResult verify(const MatrixRep<Field>& rep);

// verify() and record the result on the representation.
template <class Field>
const RepCheckResult& verify_in_place(MatrixRep<Field>& rep) {
  rep.set_check(verify(rep));
  return *rep.check();
}

enum class CombineOp { DirectSum, Tensor };

template <class Field>
MatrixRep<Field> combine(CombineOp op, const MatrixRep<Field>& a, const MatrixRep<Field>& b);

struct SteinbergResult {
  bool reached = false;
  int k = 0;  // least k with a faithful sum, when reached
  std::vector<Index> annihilator_dims;  // after including V^{(x)0}, ..., V^{(x)k}
};

// k_max < 0 selects |S^•|.
template <class Field>
SteinbergResult steinberg_bound(const MatrixRep<Field>& rep, int k_max = -1);

template <class Field>
struct RegularReps {
  MatrixRep<Field> full;
  std::optional<MatrixRep<Field>> reduced;
  std::string reduced_construction;  // "group-quotient", "left-ideal-quotient" or "left-ideal-quotient(op)"
};

template <class Field>
RegularReps<Field> regular_reps(std::shared_ptr<const CayleyTable> s, const Field& field);

// Dimensions of the regular and reduced regular modules without building
// them; `reduced_dim` is empty when the group hypothesis fails.
struct RegularDims {
  Index full = 0;
  std::optional<Index> reduced;
  std::string construction;
};
RegularDims regular_dims(const CayleyTable& s, std::uint64_t characteristic);

enum class ActionSide { Left, Right };

// maps[s][j] is the image of point j under s, or -1 when undefined.
template <class Field>
MatrixRep<Field> linearize_partial_action(std::shared_ptr<const CayleyTable> s, const Field& field,
                                          std::size_t points, const std::vector<std::vector<int>>& maps,
                                          ActionSide side = ActionSide::Left);

// Images transposed: a representation of the opposite semigroup.
template <class Field>
MatrixRep<Field> transpose_rep(const MatrixRep<Field>& rep, std::shared_ptr<const CayleyTable> op);

template <class Field>
nlohmann::json encode_rep(const MatrixRep<Field>& rep);
template <class Field>
MatrixRep<Field> decode_rep(std::shared_ptr<const CayleyTable> s, const Field& field, const nlohmann::json& j);

nlohmann::json encode_any_rep(const AnyRep& rep);
AnyRep decode_any_rep(std::shared_ptr<const CayleyTable> s, const nlohmann::json& j);
Index rep_dim(const AnyRep& rep);
RepCheckResult verify_any(const AnyRep& rep);

#define EFFDIM_REP_EXTERN(F)                                                                                   \
  extern template MatrixRep<F> extend_from_generators<F>(std::shared_ptr<const CayleyTable>, const F&,        \
                                                         const std::vector<Elem>&,                            \
                                                         const std::vector<Matrix<F::scalar_type>>&);         \
  extern template RepCheckResult verify<F>(const MatrixRep<F>&);                                              \
  extern template MatrixRep<F> combine<F>(CombineOp, const MatrixRep<F>&, const MatrixRep<F>&);               \
  extern template SteinbergResult steinberg_bound<F>(const MatrixRep<F>&, int);                               \
  extern template RegularReps<F> regular_reps<F>(std::shared_ptr<const CayleyTable>, const F&);               \
  extern template MatrixRep<F> linearize_partial_action<F>(std::shared_ptr<const CayleyTable>, const F&,      \
                                                           std::size_t, const std::vector<std::vector<int>>&, \
                                                           ActionSide);                                       \
  extern template MatrixRep<F> transpose_rep<F>(const MatrixRep<F>&, std::shared_ptr<const CayleyTable>);     \
  extern template nlohmann::json encode_rep<F>(const MatrixRep<F>&);                                          \
  extern template MatrixRep<F> decode_rep<F>(std::shared_ptr<const CayleyTable>, const F&, const nlohmann::json&);

EFFDIM_REP_EXTERN(RationalField)
EFFDIM_REP_EXTERN(FiniteField)
#undef EFFDIM_REP_EXTERN

}  // namespace effdim
