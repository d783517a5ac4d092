#include <catch_amalgamated.hpp>

#include <set>

#include "effdim/greens.hpp"
#include "oracles.hpp"

using namespace effdim;

TEST_CASE("validate accepts tables and detects units") {
  auto lz = CayleyTable::validate({{0, 0}, {1, 1}});
  CHECK(!lz.identity());
  CHECK(!lz.zero());

  auto t2 = oracle::all_maps(2, false, false);
  CHECK(t2.size() == 4);
  CHECK(t2.identity().has_value());
}

TEST_CASE("validate rejects ragged and non-associative input") {
  try {
    CayleyTable::validate({{0, 1}, {1, 0}, {0}});
    FAIL("expected IndexOutOfRange");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::IndexOutOfRange);
  }
  CHECK_THROWS_AS(CayleyTable::validate({{0, 2}, {1, 0}}), Error);
  try {
    // x*y defined as y+1 mod 2 is not associative.
    CayleyTable::validate({{1, 0}, {1, 0}});
    FAIL("expected NotAssociative");
  } catch (const Error& e) {
    REQUIRE(e.code() == Errc::NotAssociative);
    REQUIRE(e.witness());
    auto [a, b, c] = *e.witness();
    std::vector<std::vector<int>> t{{1, 0}, {1, 0}};
    CHECK(t[t[a][b]][c] != t[a][t[b][c]]);
  }
}

TEST_CASE("adjoin variants") {
  auto lz = oracle::left_zero(2);
  auto v = adjoin_variants(lz);
  CHECK(v.one.table.size() == 3);
  CHECK(v.bullet.table.size() == 3);
  CHECK(v.bullet.table.identity() == std::optional<Elem>(2));
  auto z4 = oracle::cyclic_group(4);
  auto vz = adjoin_variants(z4);
  CHECK(vz.bullet.table == z4);
  CHECK(!vz.bullet.added);
  CHECK(vz.one.table.size() == 5);
  CHECK(opposite(opposite(lz)) == lz);
  CHECK(opposite(lz) == CayleyTable::validate({{0, 1}, {0, 1}}));
}

TEST_CASE("Green's structure of R_{2,2}") {
  auto g = derive_structure(oracle::rectangular(2, 2));
  CHECK(g.num_j == 1);
  CHECK(g.num_r == 2);
  CHECK(g.num_l == 2);
  CHECK(g.num_h == 4);
  CHECK(g.j_regular[0]);
}

TEST_CASE("Green's structure of IS_2 follows rank") {
  auto is2 = oracle::all_maps(2, true, true);
  REQUIRE(is2.size() == 7);
  auto g = derive_structure(is2);
  CHECK(g.num_j == 3);
  for (std::uint32_t c = 0; c < g.num_j; ++c) CHECK(g.j_regular[c]);
  CHECK(g.minimal_ideal.size() == 1);
  CHECK(chain_lengths(is2).idempotent_chain == 2);
  CHECK(chain_lengths(is2).regular_j_chain == 2);
}

TEST_CASE("groups have a single Green class") {
  auto g = derive_structure(oracle::direct_product(oracle::cyclic_group(2), oracle::cyclic_group(3)));
  CHECK(g.num_j == 1);
  CHECK(g.num_r == 1);
  CHECK(g.num_l == 1);
  CHECK(g.num_h == 1);
  REQUIRE(g.maximal_subgroups.size() == 1);
  CHECK(g.maximal_subgroups[0].group.table.size() == 6);
}

TEST_CASE("trivial monoid has chain length 0") {
  auto t = CayleyTable::validate({{0}});
  CHECK(chain_lengths(t).idempotent_chain == 0);
  CHECK(chain_lengths(t).regular_j_chain == 0);
}

TEST_CASE("zero-minimal ideals") {
  // B_2-like: rectangular band with zero adjoined has one 0-minimal ideal.
  auto s = adjoin_zero(oracle::rectangular(2, 2)).table;
  auto g = derive_structure(s);
  REQUIRE(g.zero_minimal_ideals.size() == 1);
  CHECK(g.zero_minimal_ideals[0].size() == 5);
  CHECK(g.minimal_ideal == std::vector<Elem>{4});
}

TEST_CASE("index and period") {
  auto c24 = oracle::monogenic(2, 4);
  CHECK(index_period(c24, 0) == IndexPeriod{2, 3});
  auto z4 = oracle::cyclic_group(4);
  CHECK(index_period(z4, 1) == IndexPeriod{1, 4});
  CHECK(index_period(z4, 0) == IndexPeriod{1, 1});
}

TEST_CASE("classify_basic") {
  auto f2 = oracle::free_lrb(2);
  REQUIRE(f2.size() == 4);
  auto fl = classify_basic(f2);
  CHECK(fl.is_band);
  CHECK(fl.is_left_regular_band);
  CHECK(!fl.is_commutative);

  auto k = classify_basic(oracle::direct_product(oracle::cyclic_group(2), oracle::cyclic_group(2)));
  CHECK(k.is_group);
  CHECK(k.is_commutative);
  CHECK(k.is_inverse);

  // Null semigroup with a square-zero pair: x^2 = 0 gives index 2.
  auto n = oracle::monogenic(3, 3);  // x, x^2, x^3 = 0
  auto fn = classify_basic(n);
  CHECK(fn.is_nilpotent);
  CHECK(fn.nilpotency_index == 3);
  CHECK(!classify_basic(oracle::cyclic_group(3)).is_nilpotent);
  CHECK(classify_basic(oracle::all_maps(2, true, true)).is_inverse);
  CHECK(!classify_basic(oracle::all_maps(2, false, false)).is_inverse);
}

TEST_CASE("generated closure") {
  auto z4 = oracle::cyclic_group(4);
  CHECK(generated_closure(z4, {1}).size() == 4);
  CHECK(generated_closure(z4, {2}) == std::vector<Elem>{0, 2});
  auto f2 = oracle::free_lrb(2);
  std::vector<Elem> letters;
  for (Elem x = 0; x < f2.size(); ++x)
    if (generated_closure(f2, {x}).size() == 1 && x < 4) letters.push_back(x);
  CHECK(generated_closure(f2, {0, 2}).size() == 4);
  auto all = std::vector<Elem>{0, 1, 2, 3};
  CHECK(generated_closure(f2, all) == all);
  CHECK(greedy_generators(z4).size() == 1);
}

TEST_CASE("isomorphism test") {
  auto a = oracle::direct_product(oracle::cyclic_group(2), oracle::cyclic_group(3));
  auto b = oracle::cyclic_group(6);
  auto iso = find_isomorphism(a, b);
  REQUIRE(iso);
  for (Elem x = 0; x < 6; ++x)
    for (Elem y = 0; y < 6; ++y) CHECK((*iso)[a(x, y)] == b((*iso)[x], (*iso)[y]));
  CHECK(!find_isomorphism(oracle::cyclic_group(4),
                          oracle::direct_product(oracle::cyclic_group(2), oracle::cyclic_group(2))));
  CHECK(find_isomorphism(oracle::monogenic(1, 4), oracle::cyclic_group(4)));
}

TEST_CASE("table hash is stable") {
  auto h = table_hash(CayleyTable::validate({{0}}));
  CHECK(h.size() == 64);
  CHECK(h == sha256_hex(std::string("\x01\0\0\0\0\0\0\0", 8)));
}

TEST_CASE("structural properties on random semigroups") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    auto s = oracle::random_semigroup(rng, 2 + trial % 4, 1 + trial % 3, trial % 2 == 1);
    auto g = derive_structure(s);
    const std::size_t n = s.size();
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b) {
        bool same_h = g.h_class[a] == g.h_class[b];
        CHECK(same_h == (g.r_class[a] == g.r_class[b] && g.l_class[a] == g.l_class[b]));
      }
    auto c = chain_lengths(s, g);
    CHECK(c.idempotent_chain == c.regular_j_chain);

    auto gop = derive_structure(opposite(s));
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b) {
        CHECK((gop.r_class[a] == gop.r_class[b]) == (g.l_class[a] == g.l_class[b]));
        CHECK((gop.l_class[a] == gop.l_class[b]) == (g.r_class[a] == g.r_class[b]));
      }
    for (std::uint32_t cls = 0; cls < g.num_j; ++cls) {
      if (!g.j_regular[cls]) continue;
      bool has_idem = false;
      for (Elem e : g.idempotents) has_idem = has_idem || g.j_class[e] == cls;
      CHECK(has_idem);
    }
    for (Elem a = 0; a < n; ++a) {
      auto ip = index_period(s, a);
      std::vector<Elem> powers{a};
      for (std::uint32_t k = 1; k + 1 < ip.index + ip.period; ++k) powers.push_back(s(powers.back(), a));
      CHECK(std::set<Elem>(powers.begin(), powers.end()).size() == powers.size());
      CHECK(s(powers.back(), a) == powers[ip.index - 1]);
    }
  }
}

TEST_CASE("enumeration oracle matches known semigroup counts") {
  // Semigroups of order 1..4 up to isomorphism: 1, 5, 24, 188.
  CHECK(oracle::all_semigroups(1).size() == 1);
  CHECK(oracle::all_semigroups(2).size() == 5);
  CHECK(oracle::all_semigroups(3).size() == 24);
  CHECK(oracle::all_semigroups(4).size() == 188);
}
