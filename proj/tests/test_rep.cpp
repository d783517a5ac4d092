#include <catch_amalgamated.hpp>

#include "effdim/greens.hpp"
#include "effdim/rep.hpp"
#include "oracles.hpp"

using namespace effdim;

namespace {

std::shared_ptr<const CayleyTable> share(CayleyTable t) { return std::make_shared<const CayleyTable>(std::move(t)); }

Matrix<Gf> scalar1(const FiniteField& f, std::int64_t v) {
  Matrix<Gf> m(1, 1);
  m(0, 0) = f.from_int(v);
  return m;
}

MatrixRep<FiniteField> z4_character(std::int64_t x) {
  auto f5 = make_field(5);
  return extend_from_generators(share(oracle::cyclic_group(4)), f5, {1}, {scalar1(f5, x)});
}

}  // namespace

TEST_CASE("extend_from_generators follows powers") {
  auto rep = z4_character(2);
  std::vector<std::uint64_t> values;
  for (Elem a = 0; a < 4; ++a) values.push_back(rep.image(a)(0, 0).value());
  CHECK(values == std::vector<std::uint64_t>{1, 2, 4, 3});

  auto f5 = make_field(5);
  auto z4 = share(oracle::cyclic_group(4));
  try {
    extend_from_generators(z4, f5, {2}, {scalar1(f5, 4)});
    FAIL("expected NotGenerating");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotGenerating);
  }
  // Every element as its own generator reproduces the given images.
  std::vector<Matrix<Gf>> imgs;
  for (Elem a = 0; a < 4; ++a) imgs.push_back(rep.image(a));
  auto same = extend_from_generators(z4, f5, {0, 1, 2, 3}, imgs);
  for (Elem a = 0; a < 4; ++a) CHECK(same.image(a) == rep.image(a));
}

TEST_CASE("verify distinguishes effective and faithful") {
  auto rep = z4_character(2);
  auto r = verify(rep);
  CHECK(r.is_homomorphism);
  CHECK(r.is_effective);
  CHECK(!r.is_faithful);
  CHECK(r.annihilator_dim == 3);

  auto collapsed = z4_character(4);  // x -> 4 = -1 identifies x and x^3
  auto c = verify(collapsed);
  CHECK(c.is_homomorphism);
  CHECK(!c.is_effective);
  REQUIRE(c.collapsed);
  CHECK(c.collapsed->first == 0);
  CHECK(c.collapsed->second == 2);

  auto bad = z4_character(2);
  std::vector<Matrix<Gf>> imgs = bad.images();
  imgs[3] = scalar1(make_field(5), 2);
  MatrixRep<FiniteField> broken(bad.semigroup_ptr(), bad.field(), 1, imgs);
  CHECK(!verify(broken).is_homomorphism);
}

TEST_CASE("combine direct sums and tensors") {
  auto a = z4_character(2);
  auto t = combine(CombineOp::Tensor, a, a);
  CHECK(t.dim() == 1);
  CHECK(t.image(1)(0, 0).value() == 4);
  auto s = combine(CombineOp::DirectSum, a, t);
  CHECK(s.dim() == 2);
  CHECK(verify(s).is_homomorphism);
  auto b = combine(CombineOp::Tensor, s, s);
  CHECK(b.dim() == 4);
  CHECK(verify(b).is_homomorphism);
  CHECK_THROWS_AS(combine(CombineOp::DirectSum, z4_character(2),
                          extend_from_generators(share(oracle::cyclic_group(4)), make_field(7), {1},
                                                 {scalar1(make_field(7), 2)})),
                  Error);
}

TEST_CASE("Steinberg bound") {
  auto res = steinberg_bound(z4_character(2));
  CHECK(res.reached);
  CHECK(res.k == 3);
  CHECK(res.annihilator_dims == std::vector<Index>{3, 2, 1, 0});

  auto reg = regular_reps(share(oracle::cyclic_group(2)), RationalField{}).full;
  REQUIRE(verify(reg).is_faithful);
  auto r2 = steinberg_bound(reg);
  CHECK(r2.reached);
  CHECK(r2.k <= 1);

  try {
    steinberg_bound(z4_character(4));
    FAIL("expected NotEffective");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotEffective);
  }
}

TEST_CASE("regular representations") {
  auto lz = share(oracle::left_zero(2));
  auto r = regular_reps(lz, RationalField{});
  CHECK(r.full.dim() == 3);
  REQUIRE(r.reduced);
  CHECK(r.reduced->dim() == 2);
  CHECK(r.reduced->check()->is_effective);

  auto z2 = share(oracle::cyclic_group(2));
  auto f3 = make_field(3);
  auto r3 = regular_reps(z2, f3);
  REQUIRE(r3.reduced);
  CHECK(r3.reduced->dim() == 1);
  CHECK(r3.reduced->image(1)(0, 0) == f3.from_int(-1));
  CHECK(r3.reduced->image(0)(0, 0) == f3.one());

  try {
    regular_reps(z2, make_field(2));
    FAIL("expected HypothesisFailed");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::HypothesisFailed);
  }
}

TEST_CASE("reduced regular representation is effective on random semigroups") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    auto s = share(oracle::random_semigroup(rng, 2 + trial % 3, 1 + trial % 2, trial % 3 == 0));
    if (s->size() > 30) continue;
    auto r = regular_reps(s, RationalField{});
    CHECK(r.full.check()->is_effective);
    REQUIRE(r.reduced);
    CHECK(r.reduced->check()->is_effective);
    CHECK(r.reduced->check()->is_homomorphism);
    auto dims = regular_dims(*s, 0);
    CHECK(dims.full == r.full.dim());
    CHECK(dims.reduced == std::optional<Index>(r.reduced->dim()));
    CHECK(r.reduced->dim() <= r.full.dim() - 1);
    // Transposes give a representation of the opposite semigroup.
    auto op = share(opposite(*s));
    CHECK(verify(transpose_rep(*r.reduced, op)).is_effective);
  }
}

TEST_CASE("linearized partial actions") {
  auto pt2 = share(oracle::all_maps(2, true, false));
  std::vector<std::vector<int>> maps;
  // all_maps encodes 'undefined' as the point count; enumerate the same way.
  std::vector<std::vector<int>> enc;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) enc.push_back({a, b});
  for (auto& m : enc) maps.push_back({m[0] == 2 ? -1 : m[0], m[1] == 2 ? -1 : m[1]});
  auto rep = linearize_partial_action(pt2, RationalField{}, 2, maps);
  CHECK(rep.dim() == 2);
  CHECK(rep.check()->is_effective);
  CHECK(rep.check()->is_unital);
  const Elem id = *pt2->identity();
  CHECK(rep.image(id) == identity(RationalField{}, 2));
  CHECK(rep.image(8) == zeros(RationalField{}, 2, 2));

  // The same points acted on from the right by the opposite semigroup.
  auto op = share(opposite(*pt2));
  auto right = linearize_partial_action(op, RationalField{}, 2, maps, ActionSide::Right);
  CHECK(right.check()->is_homomorphism);

  maps[1] = {1, 1};
  try {
    linearize_partial_action(pt2, RationalField{}, 2, maps);
    FAIL("expected ActionInconsistent");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ActionInconsistent);
  }
}

TEST_CASE("representation invariants") {
  std::mt19937_64 rng(5);
  auto f3 = make_field(3);
  for (int trial = 0; trial < 20; ++trial) {
    auto s = share(oracle::random_semigroup(rng, 2 + trial % 2, 1 + trial % 2, trial % 2 == 0));
    if (s->size() > 12) continue;
    auto full = regular_reps(s, f3).full;
    auto chk = verify(full);
    CHECK(chk.is_effective);
    CHECK((!chk.is_faithful || chk.is_effective));
    auto t = combine(CombineOp::Tensor, full, full);
    CHECK(verify(t).is_homomorphism);

    // Padding with a zero block (identity block for monoids) keeps the flags.
    Matrix<Gf> pad = s->identity() ? identity(f3, 1) : zeros(f3, 1, 1);
    std::vector<Matrix<Gf>> pads(s->size(), pad);
    if (s->identity())
      for (Elem a = 0; a < s->size(); ++a)
        if (a != *s->identity()) pads[a] = zeros(f3, 1, 1);
    MatrixRep<FiniteField> padrep(s, f3, 1, pads);
    if (verify(padrep).is_homomorphism) {
      auto padded = verify(combine(CombineOp::DirectSum, full, padrep));
      CHECK(padded.is_homomorphism == chk.is_homomorphism);
      CHECK(padded.is_effective == chk.is_effective);
    }

    // A collapsing representation stays collapsing in every tensor power.
    std::vector<Matrix<Gf>> ones(s->size(), identity(f3, 1));
    MatrixRep<FiniteField> trivial(s, f3, 1, ones);
    if (s->size() > 1) {
      auto p = trivial;
      for (int k = 0; k < 3; ++k) {
        CHECK(!verify(p).is_effective);
        p = combine(CombineOp::Tensor, p, trivial);
      }
    }
  }
}

TEST_CASE("representation JSON round-trips exactly") {
  auto s = share(oracle::left_zero(2));
  auto rep = *regular_reps(s, RationalField{}).reduced;
  auto j = encode_rep(rep);
  auto back = decode_rep(s, RationalField{}, j);
  CHECK(encode_rep(back).dump() == j.dump());
  auto any = decode_any_rep(s, j);
  CHECK(rep_dim(any) == 2);
  auto f4 = make_field(2, 2);
  auto g = extend_from_generators(share(oracle::cyclic_group(3)), f4, {1}, {Matrix<Gf>::Constant(1, 1, f4.element(2))});
  auto jg = encode_rep(g);
  CHECK(encode_rep(decode_rep(g.semigroup_ptr(), f4, jg)).dump() == jg.dump());
  CHECK(verify(g).is_effective);
}
