#pragma once

// Exhaustive search for effective representations over small finite fields.

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "effdim/rep.hpp"
#include "effdim/semigroup.hpp"

namespace effdim {

// Search supports q <= 16 and d <= 4 (entries pack into 64-bit keys).
inline constexpr int kSearchMaxDim = 4;
inline constexpr std::uint64_t kSearchMaxField = 16;

struct SearchTask {
  std::shared_ptr<const CayleyTable> semigroup;
  int d = 1;
  FiniteField field;
  std::vector<Elem> gens;  // generator order used for the assignment
  bool unital = false;     // the identity is pinned to I
};

// Greedy generators (identity implicit for monoids).
SearchTask make_search_task(std::shared_ptr<const CayleyTable> s, int d, const FiniteField& field);

struct SearchOptions {
  std::uint64_t budget = 1'000'000'000;  // matrix assignments tried
  unsigned jobs = 1;
  // Restrict the first generator to rational canonical forms. Conjugation
  // preserves effectiveness and the identity, so this loses nothing.
  bool conjugacy_reduction = true;
};

struct SearchResult {
  std::optional<MatrixRep<FiniteField>> rep;  // empty: exhaustive negative
  std::uint64_t nodes = 0;
};

SearchResult decide_dim(const SearchTask& task, const SearchOptions& opt = {});

enum class FqKind { Exact, LowerBoundOnly };

struct FqResult {
  FqKind kind = FqKind::Exact;
  int value = 0;  // exact value, or d_max when every d <= d_max was refuted
  std::optional<MatrixRep<FiniteField>> witness;
  std::vector<std::uint64_t> nodes_per_dim;  // index d
};

FqResult effdim_over_Fq(std::shared_ptr<const CayleyTable> s, const FiniteField& field, int d_max,
                        const SearchOptions& opt = {});

// log10 of q^{d^2 |gens|}, the unpruned search space.
double search_space_log10(const SearchTask& task);

// One matrix per conjugacy class of d x d matrices over the field
// (block-diagonal companion matrices of invariant factor chains).
std::vector<Matrix<Gf>> conjugacy_representatives(const FiniteField& field, int d);

}  // namespace effdim
