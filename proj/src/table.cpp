#include <sstream>

#include "effdim/report.hpp"

namespace effdim {

namespace {

struct Spec {
  std::string label;
  std::string family;
  nlohmann::json params;
};

std::vector<Spec> table_specs(int max_n) {
  using nlohmann::json;
  std::vector<Spec> v;
  auto add = [&](std::string label, std::string fam, json p) { v.push_back({std::move(label), std::move(fam), std::move(p)}); };
  for (int n = 2; n <= std::min(max_n, 4); ++n) add("Symmetric group S_n", "S", {{"n", n}});
  for (int n = 2; n <= std::min(max_n, 4); ++n) add("Full transformation semigroup T_n", "T", {{"n", n}});
  for (int n = 1; n <= std::min(max_n, 4); ++n) add("Partial transformations PT_n", "PT", {{"n", n}});
  for (int n = 1; n <= std::min(max_n, 4); ++n) add("Symmetric inverse semigroup IS_n", "IS", {{"n", n}});
  for (auto [n, q] : std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {2, 2}, {2, 3}})
    add("Full matrix semigroup Mat_n(F_q)", "Mat", {{"n", n}, {"q", q}});
  for (int m = 1; m <= 2; ++m)
    for (int n = 2; n <= max_n; ++n) add("Free nilpotent semigroup N_{m,n}", "N", {{"m", m}, {"n", n}});
  for (int m = 1; m <= 2; ++m)
    for (int n = 2; n <= max_n; ++n) add("Free commutative nilpotent CN_{m,n}", "CN", {{"m", m}, {"n", n}});
  for (int n = 2; n <= max_n; ++n) add("Left zero semigroup", "rectangular", {{"m", n}, {"n", 1}});
  for (int n = 2; n <= max_n; ++n) add("Right zero semigroup", "rectangular", {{"m", 1}, {"n", n}});
  for (int m = 2; m <= max_n; ++m)
    for (int n = 2; n <= max_n; ++n) add("Rectangular band R_{m,n}", "rectangular", {{"m", m}, {"n", n}});
  for (int n = 1; n <= std::min(max_n, 3); ++n) add("Binary relations B_n", "B", {{"n", n}});
  for (int n = 1; n <= max_n; ++n) add("Path semigroup of A_n", "path", {{"n", n}});
  for (int n = 1; n <= max_n; ++n) add("Incidence semigroup of a chain", "incidence", {{"n", n}});
  for (int N = 1; N <= max_n; ++N) add("Truncated path semigroup of a loop", "truncated", {{"N", N}});
  for (int m = 1; m <= max_n; ++m) add("Nilpotent cyclic semigroup C_{m,m}", "C", {{"m", m}, {"n", m}});
  for (int m = 1; m <= max_n; ++m)
    for (int n = m + 1; n <= max_n + 1; ++n) add("Cyclic semigroup C_{m,n}", "C", {{"m", m}, {"n", n}});
  for (int n = 1; n <= std::min(max_n, 3); ++n) add("Free left regular band F_n", "F", {{"n", n}});
  for (int m = 1; m <= max_n; ++m) add("NC_m", "NC", {{"m", m}});
  add("Partial-injective nilpotent family", "partinj", {{"sizes", {2, 2}}});
  for (int n = 2; n <= max_n + 2; ++n) add("Lattice L_n", "L", {{"n", n}});
  for (int n = 2; n <= max_n + 1; ++n) add("Cyclic group Z/n", "Z", {{"n", n}});
  add("Klein four-group", "abelian", {{"factors", {2, 2}}});
  for (int n = 1; n <= std::min(max_n, 3); ++n) add("Signed symmetric inverse monoid Z/2 wr IS_n", "wreath", {{"m", 2}, {"n", n}});
  for (int n = 1; n <= std::min(max_n, 4); ++n) add("Sign monoid {+,-,0}^n", "sign", {{"n", n}});
  for (int n = 1; n <= max_n; ++n) add("Kiselman semigroup K_n", "K", {{"n", n}});
  for (auto [n, q] : std::vector<std::pair<int, int>>{{1, 2}, {2, 2}, {2, 3}})
    add("Partial linear bijections PAut(F_q^n)", "PAut", {{"n", n}, {"q", q}});
  return v;
}

}  // namespace

nlohmann::json TableRow::to_json() const {
  nlohmann::json j{{"row", row}, {"family", family}, {"params", params}, {"status", status},
                   {"lower", lower}, {"rules", rules}, {"agrees", agrees}};
  j["expected"] = expected ? nlohmann::json(*expected) : nlohmann::json(nullptr);
  j["upper"] = upper ? nlohmann::json(*upper) : nlohmann::json(nullptr);
  j["value"] = value ? nlohmann::json(*value) : nlohmann::json(nullptr);
  return j;
}

std::vector<TableRow> TableDocument::diff() const {
  std::vector<TableRow> out;
  for (const auto& r : rows)
    if (!r.agrees) out.push_back(r);
  return out;
}

nlohmann::json TableDocument::to_json() const {
  nlohmann::json rs = nlohmann::json::array(), d = nlohmann::json::array();
  for (const auto& r : rows) rs.push_back(r.to_json());
  for (const auto& r : diff()) d.push_back(r.to_json());
  return {{"rows", rs}, {"diff", d}};
}

std::string TableDocument::to_text() const {
  std::ostringstream os;
  for (const auto& r : rows) {
    os << r.row << ' ' << r.params.dump() << ": ";
    if (r.value)
      os << *r.value;
    else if (r.status == "cited-external")
      os << "-";
    else
      os << '[' << r.lower << ", " << (r.upper ? std::to_string(*r.upper) : "?") << ']';
    os << "  expected " << (r.expected ? std::to_string(*r.expected) : "?") << "  " << r.status
       << (r.agrees ? "" : "  MISMATCH") << '\n';
  }
  return os.str();
}

TableDocument report_table(int max_n, const AnyField& field, const ReportOptions& opt) {
  TableDocument doc;
  for (const auto& spec : table_specs(max_n)) {
    TableRow row;
    row.row = spec.label;
    row.family = spec.family;
    row.params = spec.params;
    const FamilyMetadata meta = family_metadata(spec.family, spec.params);
    row.expected = meta.known_effdim_over_C;
    if (meta.source == "cited-external") {
      row.status = "cited-external";
      doc.rows.push_back(std::move(row));
      continue;
    }
    const Family fam = make_family(spec.family, spec.params);
    ReportOptions o = opt;
    o.family = &fam;
    const auto rep = effdim_interval(std::make_shared<const CayleyTable>(fam.table), field, o);
    row.lower = rep.lower_value();
    row.upper = rep.upper_value();
    row.value = rep.value;
    row.rules = rep.rules_fired;
    row.status = rep.exact ? "computed-exact" : "witness-only";
    if (row.expected) {
      if (rep.exact)
        row.agrees = *rep.value == *row.expected;
      else
        row.agrees = row.lower <= *row.expected && (!row.upper || *row.expected <= *row.upper);
    }
    row.agrees = row.agrees && rep.conflicts.empty();
    doc.rows.push_back(std::move(row));
  }
  return doc;
}

}  // namespace effdim
