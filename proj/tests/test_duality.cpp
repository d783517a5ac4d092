#include <catch_amalgamated.hpp>

#include "effdim/duality.hpp"
#include "oracles.hpp"

using namespace effdim;

namespace {

std::shared_ptr<const CayleyTable> share(CayleyTable t) { return std::make_shared<const CayleyTable>(std::move(t)); }

std::vector<CayleyTable> commutative_inverse_samples() {
  using namespace oracle;
  std::vector<CayleyTable> base = {
      CayleyTable::validate({{0}}), cyclic_group(2), cyclic_group(3), cyclic_group(4),
      with_zero(cyclic_group(2)), with_zero(cyclic_group(3)), chain(2), chain(3), lattice_Ln(2),
  };
  std::vector<CayleyTable> out = base;
  for (std::size_t i = 0; i < base.size(); ++i)
    for (std::size_t j = i; j < base.size(); ++j)
      if (base[i].size() * base[j].size() <= 16) out.push_back(direct_product(base[i], base[j]));
  out.push_back(direct_product(cyclic_group(2), direct_product(cyclic_group(2), cyclic_group(2))));
  out.push_back(with_zero(direct_product(cyclic_group(2), cyclic_group(2))));
  out.push_back(oracle::skew_lattice());
  for (std::size_t n = 1; n <= 4; ++n)
    for (auto& s : all_semigroups(n)) {
      auto f = classify_basic(s);
      if (f.is_monoid && f.is_commutative && f.is_inverse) out.push_back(s);
    }
  return out;
}

// Smallest monoid generating set by trying every subset.
int brute_min_generators(const CayleyTable& m) {
  const std::size_t n = m.size();
  int best = static_cast<int>(n);
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<Elem> gens;
    for (Elem x = 0; x < n; ++x)
      if (mask >> x & 1) gens.push_back(x);
    if (static_cast<int>(gens.size()) >= best) continue;
    if (generated_closure(m, gens, true).size() == n) best = static_cast<int>(gens.size());
  }
  return best;
}

}  // namespace

TEST_CASE("dual monoid examples") {
  auto z4 = oracle::cyclic_group(4);
  auto d = dual_monoid(z4);
  CHECK(d.table.size() == 4);
  CHECK(find_isomorphism(d.table, z4));

  // A lattice dualises to itself with the join operation.
  auto l = oracle::lattice_Ln(3);
  auto dl = dual_monoid(l);
  auto joins = oracle::from_fn(l.size(), [&](Elem a, Elem b) {
    // join = meet of all common upper bounds
    Elem j = *l.identity();
    for (Elem f = 0; f < l.size(); ++f)
      if (l(a, f) == a && l(b, f) == b) j = l(j, f);
    return j;
  });
  CHECK(find_isomorphism(dl.table, joins));

  auto t = CayleyTable::validate({{0}});
  CHECK(dual_monoid(t).table.size() == 1);
  CHECK_THROWS_AS(dual_monoid(oracle::left_zero(2)), Error);
  CHECK_THROWS_AS(dual_monoid(oracle::all_maps(2, false, false)), Error);
}

TEST_CASE("min_generators examples") {
  auto k4 = oracle::direct_product(oracle::cyclic_group(2), oracle::cyclic_group(2));
  CHECK(min_generators(k4).count == 2);
  CHECK(min_generators(CayleyTable::validate({{0}})).count == 0);
  auto ps = oracle::power_set(3, true);
  auto g = min_generators(ps);
  CHECK(g.count == 3);
  CHECK(g.generators == std::vector<Elem>{1, 2, 4});
}

TEST_CASE("effdim_comm_inverse examples") {
  auto l3 = effdim_comm_inverse(oracle::lattice_Ln(3));
  CHECK(l3.value == 3);
  CHECK(l3.rule == CommInverseRule::Lattice);
  auto z4 = effdim_comm_inverse(oracle::cyclic_group(4));
  CHECK(z4.value == 1);
  CHECK(z4.rule == CommInverseRule::AbelianGroup);
  CHECK(effdim_comm_inverse(oracle::chain(4)).value == 3);
  CHECK(effdim_comm_inverse(oracle::direct_product(oracle::cyclic_group(2), oracle::cyclic_group(2))).value == 2);
  CHECK(effdim_comm_inverse(oracle::with_zero(oracle::cyclic_group(2))).value == 1);
  CHECK(effdim_comm_inverse(CayleyTable::validate({{0}})).value == 0);
}

TEST_CASE("lattice rule counts join-irreducibles, not meet-irreducibles") {
  auto l = oracle::skew_lattice();
  CHECK(count_join_irreducibles(l) == 3);
  auto r = effdim_comm_inverse(l);
  CHECK(r.value == 3);
  // The general route through the dual monoid agrees.
  CHECK(min_generators(dual_monoid(l).table).count == 3);
}

TEST_CASE("duality invariants on small commutative inverse monoids") {
  for (const auto& m : commutative_inverse_samples()) {
    CAPTURE(m.size());
    auto c = clifford_structure(m);
    std::size_t total = 0;
    for (auto& g : c.groups) total += g.size();
    CHECK(total == m.size());
    auto d = dual_monoid(m, c);
    CHECK(d.table.size() == m.size());
    // The dual is associative, commutative and inverse again.
    std::vector<std::vector<std::int64_t>> rows(d.table.size());
    for (Elem x = 0; x < d.table.size(); ++x)
      for (Elem y = 0; y < d.table.size(); ++y) rows[x].push_back(d.table(x, y));
    REQUIRE_NOTHROW(CayleyTable::validate(rows));
    auto dd = dual_monoid(d.table);
    CHECK(find_isomorphism(dd.table, m).has_value());

    // Every dual element is multiplicative as a function on M.
    for (const auto& v : d.values)
      for (Elem s = 0; s < m.size(); ++s)
        for (Elem t = 0; t < m.size(); ++t) {
          const auto a = v[s], b = v[t], ab = v[m(s, t)];
          const std::int64_t expect = (a < 0 || b < 0) ? -1 : (a + b) % static_cast<std::int64_t>(d.exponent);
          CHECK(ab == expect);
        }

    // E(dual) is order-anti-isomorphic to E(M): idempotent counts agree
    // and comparable pairs correspond.
    auto cd = clifford_structure(d.table);
    CHECK(cd.idempotents.size() == c.idempotents.size());

    auto g = min_generators(d.table);
    CHECK(generated_closure(d.table, g.generators, true).size() == d.table.size());
    if (m.size() <= 16) CHECK(g.count == brute_min_generators(d.table));

    // Generators of the dual separate the points of M.
    auto r = effdim_comm_inverse(m);
    CHECK(r.value == g.count);
    for (Elem s = 0; s < m.size(); ++s)
      for (Elem t = s + 1; t < m.size(); ++t) {
        bool separated = false;
        for (const auto& chi : r.characters) separated = separated || chi[s] != chi[t];
        CHECK(separated);
      }
    auto w = comm_inverse_witness(share(m), r);
    auto chk = verify_any(w);
    CHECK(chk.is_homomorphism);
    CHECK(chk.is_effective);
    CHECK(rep_dim(w) == r.value);
  }
}

TEST_CASE("element of given order") {
  auto f = make_field(2, 2);
  auto x = element_of_order(f, 3);
  REQUIRE(x);
  CHECK(*x * *x * *x == f.one());
  CHECK(!element_of_order(make_field(7), 4));
}

TEST_CASE("dual sidecar lists supports and characters") {
  auto d = dual_monoid(oracle::with_zero(oracle::cyclic_group(2)));
  auto j = d.sidecar();
  CHECK(j["elements"].size() == 3);
  CHECK(j["exponent"] == 2);
}
