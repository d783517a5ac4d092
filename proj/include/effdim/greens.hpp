#pragma once

#include <cstdint>
#include <vector>

#include "effdim/semigroup.hpp"

namespace effdim {

struct MaximalSubgroup {
  Elem idempotent;
  std::uint32_t j_class;
  SubSemigroup group;  // H_e with its embedding
};

// Green's structure. Class ids are assigned in order of the least element
// of each class, so they are deterministic.
struct GreensData {
  std::vector<std::uint32_t> r_class, l_class, j_class, h_class;
  std::uint32_t num_r = 0, num_l = 0, num_j = 0, num_h = 0;
  // j_below[a][b] is true when J_a <= J_b (J-class ids).
  std::vector<std::vector<bool>> j_below;
  std::vector<bool> j_regular;  // per J-class
  std::vector<Elem> idempotents;
  std::uint32_t minimal_j = 0;
  std::vector<Elem> minimal_ideal;
  // With a zero: each 0-minimal ideal J ∪ {0}, sorted.
  std::vector<std::vector<Elem>> zero_minimal_ideals;
  std::vector<MaximalSubgroup> maximal_subgroups;  // one per regular J-class

  std::vector<Elem> members(const std::vector<std::uint32_t>& cls, std::uint32_t id) const;
  bool j_less(std::uint32_t a, std::uint32_t b) const { return a != b && j_below[a][b]; }
};

GreensData derive_structure(const CayleyTable& s);

struct ChainLengths {
  int idempotent_chain = 0;
  int regular_j_chain = 0;
};
ChainLengths chain_lengths(const CayleyTable& s);
ChainLengths chain_lengths(const CayleyTable& s, const GreensData& g);

}  // namespace effdim
