#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "effdim/error.hpp"

namespace effdim {

using Elem = std::uint32_t;

// Multiplication table of a finite semigroup on {0, ..., n-1}; row index is
// the left factor. Construct through `validate` (or `trusted` for tables
// produced by code that guarantees associativity).
class CayleyTable {
 public:
  CayleyTable() = default;

  static CayleyTable validate(const std::vector<std::vector<std::int64_t>>& rows,
                              std::vector<std::string> names = {});
  static CayleyTable trusted(std::size_t n, std::vector<Elem> data, std::vector<std::string> names = {});

  std::size_t size() const { return n_; }
  Elem operator()(Elem a, Elem b) const { return data_[a * n_ + b]; }
  Elem mul(Elem a, Elem b) const { return data_[a * n_ + b]; }
  const std::vector<Elem>& data() const { return data_; }
  const std::vector<std::string>& names() const { return names_; }
  std::string name(Elem a) const { return names_.empty() ? std::to_string(a) : names_[a]; }
  const std::optional<Elem>& identity() const { return identity_; }
  const std::optional<Elem>& zero() const { return zero_; }
  bool is_monoid() const { return identity_.has_value(); }
  bool is_idempotent(Elem a) const { return mul(a, a) == a; }

  friend bool operator==(const CayleyTable& a, const CayleyTable& b) { return a.n_ == b.n_ && a.data_ == b.data_; }

 private:
  void detect_units();

  std::size_t n_ = 0;
  std::vector<Elem> data_;
  std::vector<std::string> names_;
  std::optional<Elem> identity_;
  std::optional<Elem> zero_;
};

// A derived table with the embedding of the original elements.
struct Adjoined {
  CayleyTable table;
  Elem adjoined;      // index of the identity/zero in `table`
  bool added = false; // false when the original already had one
};

// S^1: a new identity is always appended as the last element.
Adjoined adjoin_identity(const CayleyTable& s);
// S^0 likewise for a new zero.
Adjoined adjoin_zero(const CayleyTable& s);
// S^• = S when S is a monoid, otherwise S^1.
Adjoined monoidal(const CayleyTable& s);
CayleyTable opposite(const CayleyTable& s);

struct Variants {
  Adjoined one;     // S^1
  Adjoined bullet;  // S^•
  CayleyTable op;   // S^op
};
Variants adjoin_variants(const CayleyTable& s);

// Restriction of the table to a closed subset; `elems` is sorted and the
// sub-table uses positions in it.
struct SubSemigroup {
  CayleyTable table;
  std::vector<Elem> elems;
};
SubSemigroup restrict_to(const CayleyTable& s, const std::vector<Elem>& subset);

struct IndexPeriod {
  std::uint32_t index = 1;
  std::uint32_t period = 1;
  friend bool operator==(const IndexPeriod&, const IndexPeriod&) = default;
};
IndexPeriod index_period(const CayleyTable& s, Elem a);

struct BasicFlags {
  bool is_monoid = false;
  bool is_group = false;
  bool is_commutative = false;
  bool is_band = false;
  bool is_inverse = false;
  bool is_left_regular_band = false;
  bool is_nilpotent = false;
  std::uint32_t nilpotency_index = 0;  // least k with S^k = {z}; 0 if not nilpotent
  bool has_zero = false;
};
BasicFlags classify_basic(const CayleyTable& s);

// Least subsemigroup containing X (submonoid when `monoid` is set and S has
// an identity). Sorted.
std::vector<Elem> generated_closure(const CayleyTable& s, const std::vector<Elem>& X, bool monoid = false);

// Greedy small generating set: repeatedly add the element enlarging the
// closure the most (ties broken by index). For monoids the identity is
// implicit when `monoid` is true.
std::vector<Elem> greedy_generators(const CayleyTable& s, bool monoid = false);

// Isomorphism test by backtracking over images of a generating set.
std::optional<std::vector<Elem>> find_isomorphism(const CayleyTable& a, const CayleyTable& b);

std::vector<Elem> idempotents(const CayleyTable& s);

// Tables are hashed as SHA-256 over little-endian u32 n followed by entries.
std::string table_hash(const CayleyTable& s);
std::string sha256_hex(const std::string& bytes);
std::string table_bytes(const CayleyTable& s);

}  // namespace effdim
