#pragma once

// Nilpotent and cyclic semigroups: the power lower bound, generic witnesses
// for free and free commutative nilpotent semigroups, the partial-injective
// rule and cyclic semigroups.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "effdim/rep.hpp"
#include "effdim/semigroup.hpp"

namespace effdim {

// Free nilpotent semigroup N_{m,n}: words of length 1..n-1 over m letters
// (shortlex; the letters are elements 0..m-1) and the zero, last.
CayleyTable free_nilpotent(int m, int n);
// CN_{m,n}: monomials of degree 1..n-1 in m variables, zero last; the
// variables are elements 0..m-1.
CayleyTable free_commutative_nilpotent(int m, int n);
// NC_m: non-empty subsets of an m-set (bitmask - 1), zero last.
CayleyTable nc_semigroup(int m);
// Proper non-empty subsets of disjoint sets of the given sizes, then w, then z.
CayleyTable partinj_family(const std::vector<int>& sizes);
// C_{m,n} = <x | x^{n+1} = x^m>; element i is x^{i+1}.
CayleyTable cyclic_semigroup(int m, int n);

// Largest n with s^n = s^{n+1} != s^{n-1}, where s^0 is the identity of S•
// (so a non-identity idempotent contributes 1).
int cornilp_bound(const CayleyTable& s);

enum class NilpotentKind { Free, FreeCommutative };

struct GenericOptions {
  std::uint64_t seed = 1;
  int retry_cap = 32;
  std::uint64_t field_floor = 65536;
};

template <class Field>
struct GenericSample {
  std::uint64_t seed = 0;
  int retries_used = 0;
  bool below_floor = false;
  bool deterministic = false;  // prime construction over Q
  std::vector<Matrix<typename Field::scalar_type>> tuple;  // generator images
  nlohmann::json to_json(const Field& field) const;
};

template <class Field>
struct GenericResult {
  MatrixRep<Field> rep;
  GenericSample<Field> sample;
};

template <class Field>
GenericResult<Field> generic_nilpotent_rep(NilpotentKind kind, int m, int n, const Field& field,
                                           const GenericOptions& opt = {});

template <class Field>
struct NilResult {
  int value = 0;
  MatrixRep<Field> witness;
  std::string certificate;
};

// Requires: nilpotent with zero z, left action of S on S \ {z} by partial
// injections, a unique w != z with Sw = {z}.
template <class Field>
NilResult<Field> partinj_effdim(std::shared_ptr<const CayleyTable> s, const Field& field);

struct CyclicResult {
  int value = 0;
  AnyRep witness;
  std::string certificate;
};

CyclicResult cyclic_effdim(int m, int n);

#define EFFDIM_NIL_EXTERN(F)                                                                                    \
  extern template GenericResult<F> generic_nilpotent_rep<F>(NilpotentKind, int, int, const F&,                  \
                                                            const GenericOptions&);                             \
  extern template NilResult<F> partinj_effdim<F>(std::shared_ptr<const CayleyTable>, const F&);                 \
  extern template struct GenericSample<F>;
EFFDIM_NIL_EXTERN(RationalField)
EFFDIM_NIL_EXTERN(FiniteField)
#undef EFFDIM_NIL_EXTERN

}  // namespace effdim
