#include <catch_amalgamated.hpp>

#include "effdim/nilpotent.hpp"
#include "oracles.hpp"

using namespace effdim;

namespace {

std::shared_ptr<const CayleyTable> share(CayleyTable t) { return std::make_shared<const CayleyTable>(std::move(t)); }

template <class Field>
bool is_nilpotent_matrix(const Field& field, const Matrix<typename Field::scalar_type>& a) {
  Matrix<typename Field::scalar_type> p = a;
  for (Index i = 1; i < a.rows(); ++i) p = p * a;
  return p == zeros(field, a.rows(), a.cols());
}

}  // namespace

TEST_CASE("constructors") {
  CHECK(free_nilpotent(1, 3).size() == 3);
  CHECK(free_nilpotent(2, 3).size() == 7);
  CHECK(classify_basic(free_nilpotent(2, 4)).nilpotency_index == 4);
  CHECK(free_commutative_nilpotent(2, 3).size() == 6);
  CHECK(classify_basic(free_commutative_nilpotent(2, 3)).is_commutative);
  CHECK(nc_semigroup(2).size() == 4);
  CHECK(classify_basic(nc_semigroup(3)).nilpotency_index == 4);
  CHECK(partinj_family({2, 2}).size() == 6);
  CHECK(partinj_family({3, 2, 4}).size() == 2 - 6 + 8 + 4 + 16);
  CHECK(classify_basic(partinj_family({3, 2})).nilpotency_index == 4);
  for (int m = 1; m <= 4; ++m)
    for (int n = m; n <= 6; ++n) CHECK(find_isomorphism(cyclic_semigroup(m, n), oracle::monogenic(m, n)).has_value());
  // N_{1,n} is the monogenic semigroup of index n with a zero.
  CHECK(find_isomorphism(free_nilpotent(1, 4), oracle::monogenic(4, 4)).has_value());
}

TEST_CASE("power lower bound") {
  const auto n13 = free_nilpotent(1, 3);
  CHECK(cornilp_bound(n13) == 3);
  CHECK(cornilp_bound(oracle::rectangular(2, 2)) == 1);
  CHECK(cornilp_bound(oracle::chain(3)) == 1);
  CHECK(cornilp_bound(cyclic_semigroup(2, 4)) == 1);
  CHECK(cornilp_bound(cyclic_semigroup(3, 3)) == 3);
  CHECK(cornilp_bound(CayleyTable::validate({{0}})) == 0);
  CHECK(cornilp_bound(oracle::cyclic_group(3)) == 0);
  CHECK(cornilp_bound(free_nilpotent(2, 3)) == 3);
}

TEST_CASE("generic witnesses") {
  const RationalField q;
  const auto f = generic_nilpotent_rep(NilpotentKind::Free, 2, 3, q);
  CHECK(f.rep.dim() == 3);
  CHECK(f.rep.check()->is_effective);
  const auto c = generic_nilpotent_rep(NilpotentKind::FreeCommutative, 2, 3, q);
  CHECK(c.sample.deterministic);
  Matrix<Rational> j = zeros(q, 3, 3);
  j(0, 1) = j(1, 2) = Rational(1);
  CHECK(c.rep.image(0) == Matrix<Rational>(j * Rational(2)));
  CHECK(c.rep.image(1) == Matrix<Rational>(j * Rational(3)));
  CHECK(c.rep.check()->is_effective);

  const FiniteField f2 = make_field(2);
  const auto tiny = generic_nilpotent_rep(NilpotentKind::Free, 1, 2, f2);
  CHECK(tiny.sample.below_floor);
  Matrix<Gf> x = zeros(f2, 2, 2);
  x(0, 1) = f2.one();
  CHECK(tiny.rep.image(0) == x);
  CHECK_THROWS_AS(generic_nilpotent_rep(NilpotentKind::Free, 2, 3, f2), Error);
}

TEST_CASE("prime construction separates all words") {
  const RationalField q;
  for (int m = 1; m <= 3; ++m)
    for (int n = 2; n <= 4; ++n) {
      const auto r = generic_nilpotent_rep(NilpotentKind::FreeCommutative, m, n, q);
      CHECK(r.rep.check()->is_effective);
      CHECK(r.rep.dim() == n);
    }
}

TEST_CASE("generic sampling succeeds over a large field", "[slow]") {
  const FiniteField big = make_field(17, 4);
  REQUIRE(*big.size() >= 65536);
  for (int m = 1; m <= 3; ++m)
    for (int n = 2; n <= 4; ++n)
      for (auto kind : {NilpotentKind::Free, NilpotentKind::FreeCommutative}) {
        GenericOptions opt;
        opt.seed = static_cast<std::uint64_t>(100 * m + n);
        const auto r = generic_nilpotent_rep(kind, m, n, big, opt);
        CHECK(r.sample.retries_used < 32);
        CHECK(!r.sample.below_floor);
        const auto& s = r.rep.semigroup();
        const Elem z = *s.zero();
        CHECK(r.rep.image(z) == zeros(big, n, n));
        for (Elem a = 0; a < s.size(); ++a) CHECK(is_nilpotent_matrix(big, r.rep.image(a)));
        CHECK(cornilp_bound(s) == n);
      }
}

TEST_CASE("partial-injective rule") {
  const RationalField q;
  const auto nc2 = partinj_effdim(share(nc_semigroup(2)), q);
  CHECK(nc2.value == 4);
  CHECK(nc2.witness.dim() == 4);
  CHECK(partinj_effdim(share(partinj_family({2, 2})), q).value == 6);
  CHECK(partinj_effdim(share(free_nilpotent(1, 3)), q).value == 3);
  CHECK(partinj_effdim(share(nc_semigroup(3)), make_field(2)).value == 8);
  try {
    partinj_effdim(share(free_nilpotent(2, 3)), q);
    FAIL("expected HypothesesFail");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::HypothesesFail);
  }
  CHECK_THROWS_AS(partinj_effdim(share(oracle::cyclic_group(2)), q), Error);
  for (const auto& s : {nc_semigroup(2), nc_semigroup(3), partinj_family({2, 3})}) {
    CHECK(cornilp_bound(s) <= partinj_effdim(share(s), q).value);
  }
}

TEST_CASE("cyclic semigroups") {
  const auto r24 = cyclic_effdim(2, 4);
  CHECK(r24.value == 3);
  const auto& w = std::get<MatrixRep<FiniteField>>(r24.witness);
  CHECK(w.field().characteristic() == 7);
  CHECK(cyclic_effdim(3, 3).value == 3);
  CHECK(cyclic_effdim(1, 1).value == 0);
  // <x | x^5 = x> is the cyclic group of order 4.
  CHECK(cyclic_effdim(1, 4).value == 1);
  for (int m = 1; m <= 4; ++m)
    for (int n = m; n <= 7; ++n) {
      const auto r = cyclic_effdim(m, n);
      const auto& rep = std::get<MatrixRep<FiniteField>>(r.witness);
      CHECK(rep.check()->is_effective);
      if (m > 1) CHECK(r.value == std::min(m + 1, n));
      const auto& x = rep.image(0);
      Matrix<Gf> p = x, pm;
      for (int k = 1; k <= n; ++k) {
        if (k == m) pm = p;
        if (k < n) p = p * x;
      }
      p = p * x;  // x^{n+1}
      CHECK(p == pm);
    }
}
