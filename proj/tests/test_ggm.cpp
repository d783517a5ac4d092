#include <catch_amalgamated.hpp>

#include <numeric>
#include <random>

#include "effdim/duality.hpp"
#include "effdim/ggm.hpp"
#include "oracles.hpp"

using namespace effdim;

namespace {

std::shared_ptr<const CayleyTable> share(CayleyTable t) { return std::make_shared<const CayleyTable>(std::move(t)); }

CayleyTable relabel(const CayleyTable& s, const std::vector<Elem>& pi) {
  std::vector<Elem> inv(pi.size());
  for (Elem a = 0; a < pi.size(); ++a) inv[pi[a]] = a;
  return oracle::from_fn(s.size(), [&](Elem a, Elem b) { return pi[s(inv[a], inv[b])]; });
}

int gm_value(const CayleyTable& t) {
  auto s = share(t);
  const auto cls = classify_ggm(*s);
  REQUIRE(cls.kind == GGMKind::GroupMapping);
  auto g = share(cls.rees->group.table);
  const auto ci = effdim_comm_inverse(*g);
  const AnyRep mod = comm_inverse_witness(g, ci);
  return std::visit(
      [&](const auto& m) {
        auto r = group_mapping_effdim(s, ci.value, m);
        CHECK(r.witness.dim() == r.value);
        CHECK(r.witness.check()->is_homomorphism);
        CHECK(r.witness.check()->is_effective);
        return r.value;
      },
      mod);
}

}  // namespace

TEST_CASE("classification of small examples") {
  CHECK(classify_ggm(oracle::all_maps(2, true, true)).kind == GGMKind::AGGM);
  CHECK(classify_ggm(oracle::brandt(2)).kind == GGMKind::AGGM);
  const auto t2 = classify_ggm(oracle::all_maps(2, false, false));
  CHECK(t2.kind == GGMKind::NotGGM);
  REQUIRE(t2.witness);
  CHECK(t2.witness->first != t2.witness->second);
  CHECK(classify_ggm(oracle::matrix_monoid(3, 2)).kind == GGMKind::GroupMapping);
  CHECK(classify_ggm(oracle::rectangular(2, 2)).kind == GGMKind::NotGGM);
  CHECK(classify_ggm(oracle::cyclic_group(3)).kind == GGMKind::GroupMapping);
}

TEST_CASE("Rees coordinates reproduce the product") {
  for (const auto& s : {oracle::brandt(3), oracle::all_maps(3, true, true), oracle::matrix_monoid(3, 2),
                        oracle::cyclic_wreath_partial(2, 2)}) {
    const auto cls = classify_ggm(s);
    REQUIRE(cls.rees);
    const auto& r = *cls.rees;
    const auto& g = r.group;
    for (Elem x : r.ideal) {
      if (r.zero && x == *r.zero) continue;
      for (Elem y : r.ideal) {
        if (r.zero && y == *r.zero) continue;
        const auto cx = r.coords[x], cy = r.coords[y];
        const auto p = r.structure_matrix[cx[2]][cy[0]];
        const Elem xy = s(x, y);
        if (p < 0) {
          REQUIRE(r.zero);
          CHECK(xy == *r.zero);
        } else {
          const Elem mid = g.table(g.table(cx[1], static_cast<Elem>(p)), cy[1]);
          CHECK(r.coords[xy] == std::array<std::uint32_t, 3>{cx[0], mid, cy[2]});
        }
      }
    }
  }
}

TEST_CASE("AGGM values") {
  const RationalField rat;
  const FiniteField f2 = make_field(2);
  CHECK(aggm_effdim(share(oracle::brandt(2)), rat).value == 2);
  CHECK(aggm_effdim(share(oracle::all_maps(2, true, true)), rat).value == 2);
  CHECK(aggm_effdim(share(oracle::all_maps(3, true, true)), rat).value == 3);
  CHECK(aggm_effdim(share(oracle::brandt(3)), f2).value == 3);
  CHECK(aggm_effdim(share(oracle::matrix_monoid(2, 2)), rat).value == 3);
  // P = J - I on three lines has rank 2 in characteristic 2: the natural module.
  CHECK(aggm_effdim(share(oracle::matrix_monoid(2, 2)), f2).value == 2);
  CHECK(classify_ggm(oracle::with_zero(oracle::brandt(2))).kind == GGMKind::NotGGM);
  CHECK_THROWS_AS(aggm_effdim(share(oracle::all_maps(2, false, false)), rat), Error);
  CHECK_THROWS_AS(aggm_effdim(share(oracle::matrix_monoid(3, 2)), rat), Error);
}

TEST_CASE("AGGM rank is invariant under relabelling") {
  const auto base = oracle::matrix_monoid(2, 2);
  const RationalField rat;
  const int want = aggm_effdim(share(base), rat).value;
  std::mt19937_64 rng(7);
  std::vector<Elem> pi(base.size());
  std::iota(pi.begin(), pi.end(), 0);
  for (int t = 0; t < 100; ++t) {
    std::shuffle(pi.begin(), pi.end(), rng);
    const auto cls = classify_ggm(relabel(base, pi));
    REQUIRE(cls.kind == GGMKind::AGGM);
    CHECK(structure_rank(*cls.rees, rat) == want);
  }
}

TEST_CASE("group-mapping values") {
  CHECK(gm_value(oracle::matrix_monoid(3, 2)) == 4);
  CHECK(gm_value(oracle::cyclic_wreath_partial(2, 2)) == 2);
  CHECK(gm_value(oracle::cyclic_wreath_partial(3, 2)) == 2);
  CHECK(gm_value(oracle::cyclic_wreath_partial(2, 3)) == 3);
  CHECK(gm_value(oracle::cyclic_group(6)) == 1);
}

TEST_CASE("opposite semigroup has the same kind") {
  for (const auto& s : {oracle::brandt(2), oracle::all_maps(3, true, true), oracle::all_maps(2, false, false),
                        oracle::matrix_monoid(3, 2), oracle::cyclic_wreath_partial(2, 2)}) {
    CHECK(classify_ggm(opposite(s)).kind == classify_ggm(s).kind);
  }
}

TEST_CASE("one-sided invertibility of the structure matrix") {
  const auto s = oracle::matrix_monoid(3, 2);
  CHECK(structure_matrix_invertibility(s, classify_ggm(s)).has_value());
  const auto w = oracle::cyclic_wreath_partial(2, 2);
  const auto c = classify_ggm(w);
  REQUIRE(c.rees);
  CHECK(c.rees->n() == c.rees->m());
  CHECK(structure_matrix_invertibility(w, c) == InvertibleSide::Left);
}
