#pragma once

// Left regular bands, sign vectors, hyperplane face semigroups, free left
// regular bands and rectangular bands.

#include <memory>
#include <string>
#include <vector>

#include "effdim/rep.hpp"
#include "effdim/semigroup.hpp"

namespace effdim {

bool is_left_regular_band(const CayleyTable& m);

struct SupportLattice {
  CayleyTable lattice;          // principal left ideals, Ma ∩ Mb = Mab
  std::vector<Elem> sigma;      // M -> lattice
  std::vector<Elem> representative;  // one preimage per lattice element
};

SupportLattice support_lattice(const CayleyTable& m);

struct BoundResult {
  int value = 0;
  std::string certificate;
};

BoundResult lrb_lower_bound(const CayleyTable& m);

// Coordinates in {0, +1, -1}; 0 is the identity, + and - are left zeros.
struct SignVector {
  std::vector<std::int8_t> coords;

  static SignVector parse(const std::string& text);
  std::string str() const;
  SignVector operator*(const SignVector& o) const;
  bool operator==(const SignVector& o) const { return coords == o.coords; }
  bool operator<(const SignVector& o) const { return coords < o.coords; }
};

// {+,-,0}^n with element index = base-3 digits (0 -> '0', 1 -> '+', 2 -> '-'),
// least significant digit first.
CayleyTable sign_monoid(int n);
SignVector sign_of_index(int n, Elem a);

// Points 0..n; the face's image is the linearised right partial action.
template <class Field>
MatrixRep<Field> sign_power_rep(int n, const Field& field);

template <class Field>
struct BandResult {
  int value = 0;
  MatrixRep<Field> witness;
  std::string certificate;
};

// One face per line over {+,-,0}, '#' starts a comment.
std::vector<SignVector> parse_faces(const std::string& text);
CayleyTable face_semigroup(const std::vector<SignVector>& faces);

template <class Field>
BandResult<Field> hyperplane_effdim(const std::vector<SignVector>& faces, const Field& field);

// Free left regular band monoid on n letters: injective words, the empty
// word first.
struct FreeLRB {
  CayleyTable table;
  std::vector<std::vector<int>> words;
};
FreeLRB free_lrb(int n);

// a -> f_a into {+,-,0}^{A ∪ B}, B the 2-subsets, extended multiplicatively.
SignVector free_lrb_embedding(int n, const std::vector<int>& word);

template <class Field>
BandResult<Field> free_lrb_effdim(int n, const Field& field);

// Element (i, j) has index i*n + j.
CayleyTable rectangular_band(std::size_t m, std::size_t n);

template <class Field>
BandResult<Field> rectangular_band_effdim(std::size_t m, std::size_t n, const Field& field);

#define EFFDIM_BANDS_EXTERN(F)                                                                     \
  extern template MatrixRep<F> sign_power_rep<F>(int, const F&);                                   \
  extern template BandResult<F> hyperplane_effdim<F>(const std::vector<SignVector>&, const F&);    \
  extern template BandResult<F> free_lrb_effdim<F>(int, const F&);                                 \
  extern template BandResult<F> rectangular_band_effdim<F>(std::size_t, std::size_t, const F&);
EFFDIM_BANDS_EXTERN(RationalField)
EFFDIM_BANDS_EXTERN(FiniteField)
#undef EFFDIM_BANDS_EXTERN

}  // namespace effdim
