#pragma once

// The rule pipeline: certified lower and upper bounds on the effective
// dimension of a finite semigroup over a field.
//
// Over Q the values are those over C: rules that need roots of unity
// (commutative inverse monoids, cyclic groups, group-mapping semigroups
// with abelian maximal subgroup) build their witness over a prime field
// F_p with p = 1 modulo the exponent, a splitting field of good
// characteristic on which these values agree with the complex ones.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "effdim/families.hpp"
#include "effdim/field.hpp"
#include "effdim/rep.hpp"
#include "effdim/semigroup.hpp"

namespace effdim {

struct LowerCertificate {
  int value = 0;
  std::string name;
  nlohmann::json payload;
};

struct UpperCertificate {
  int value = 0;
  std::string name;
  // Absent for constructions too large to materialize (the regular
  // representations of big semigroups); `construction` then says which.
  std::optional<AnyRep> witness;
  std::string construction;
  nlohmann::json payload;
};

struct EffDimReport {
  std::string hash;
  std::string field;
  std::vector<LowerCertificate> lower;
  std::vector<UpperCertificate> upper;
  bool exact = false;
  std::optional<int> value;
  std::vector<std::string> rules_fired;
  std::vector<std::string> conflicts;  // disagreements between rules; empty on a sound run
  nlohmann::json family;               // metadata of a recognized family, or null

  int lower_value() const;
  std::optional<int> upper_value() const;
  nlohmann::json to_json(bool with_witnesses = true) const;
};

struct ReportOptions {
  std::uint64_t seed = 1;
  bool search = false;  // refine over a finite field by exhaustive search
  int search_dmax = kSearchDefaultDmax;
  std::uint64_t budget = 100'000'000;
  unsigned jobs = 1;
  const Family* family = nullptr;  // used when its table equals the input
  std::size_t materialize_limit = 64;

  static constexpr int kSearchDefaultDmax = 4;
};

EffDimReport effdim_interval(std::shared_ptr<const CayleyTable> s, const AnyField& field,
                             const ReportOptions& opt = {});

// Decodes every serialized witness of a report JSON against `s` and checks
// that it is an effective homomorphism of the stated dimension.
bool reverify_report(std::shared_ptr<const CayleyTable> s, const nlohmann::json& report);

struct TableRow {
  std::string row;  // human-readable family label
  std::string family;
  nlohmann::json params;
  std::optional<int> expected;  // from the family metadata
  std::string status;           // "computed-exact", "witness-only" or "cited-external"
  int lower = 0;
  std::optional<int> upper;
  std::optional<int> value;
  std::vector<std::string> rules;
  bool agrees = true;
  nlohmann::json to_json() const;
};

// Rows of the table of known values, with parameters capped by max_n; the
// diff is the list of rows that disagree with the metadata.
struct TableDocument {
  std::vector<TableRow> rows;
  std::vector<TableRow> diff() const;
  nlohmann::json to_json() const;
  std::string to_text() const;
};

TableDocument report_table(int max_n, const AnyField& field, const ReportOptions& opt = {});

}  // namespace effdim
