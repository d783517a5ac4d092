#include <catch_amalgamated.hpp>

#include <set>

#include "effdim/nilpotent.hpp"
#include "effdim/search.hpp"
#include "oracles.hpp"

using namespace effdim;

namespace {

std::shared_ptr<const CayleyTable> share(CayleyTable t) { return std::make_shared<const CayleyTable>(std::move(t)); }

// Conjugacy classes of d x d matrices over F_p, by brute-force orbit marking.
std::size_t brute_class_count(int p, int d) {
  const std::size_t n2 = static_cast<std::size_t>(d * d);
  std::size_t total = 1;
  for (std::size_t i = 0; i < n2; ++i) total *= static_cast<std::size_t>(p);
  auto decode = [&](std::size_t code) {
    std::vector<int> m(n2);
    for (std::size_t i = 0; i < n2; ++i, code /= p) m[i] = static_cast<int>(code % p);
    return m;
  };
  auto encode = [&](const std::vector<int>& m) {
    std::size_t c = 0;
    for (std::size_t i = n2; i-- > 0;) c = c * p + static_cast<std::size_t>(m[i]);
    return c;
  };
  auto mul = [&](const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> c(n2, 0);
    for (int r = 0; r < d; ++r)
      for (int col = 0; col < d; ++col) {
        int s = 0;
        for (int k = 0; k < d; ++k) s += a[r * d + k] * b[k * d + col];
        c[r * d + col] = s % p;
      }
    return c;
  };
  std::vector<int> ident(n2, 0);
  for (int i = 0; i < d; ++i) ident[i * d + i] = 1;
  // Pairs (P, P^{-1}) by search.
  std::vector<std::pair<std::vector<int>, std::vector<int>>> gl;
  for (std::size_t a = 0; a < total; ++a)
    for (std::size_t b = 0; b < total; ++b) {
      auto x = decode(a), y = decode(b);
      if (mul(x, y) == ident) gl.emplace_back(x, y);
    }
  std::vector<char> mark(total, 0);
  std::size_t classes = 0;
  for (std::size_t c = 0; c < total; ++c) {
    if (mark[c]) continue;
    ++classes;
    const auto m = decode(c);
    for (const auto& [pm, pinv] : gl) mark[encode(mul(mul(pm, m), pinv))] = 1;
  }
  return classes;
}

bool has_rep(const CayleyTable& s, int q, int d, SearchOptions opt = {}) {
  return decide_dim(make_search_task(share(s), d, make_field(q)), opt).rep.has_value();
}

int fq_value(const CayleyTable& s, int q, int d_max) {
  const auto r = effdim_over_Fq(share(s), make_field(q), d_max);
  return r.kind == FqKind::Exact ? r.value : -1;
}

}  // namespace

TEST_CASE("conjugacy representatives cover every class once") {
  for (auto [p, d] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}}) {
    const auto reps = conjugacy_representatives(make_field(p), d);
    CAPTURE(p, d);
    CHECK(reps.size() == brute_class_count(p, d));
  }
  CHECK(conjugacy_representatives(make_field(2), 4).size() == 34);
  CHECK(conjugacy_representatives(make_field(2, 2), 2).size() == 20);
}

TEST_CASE("decision examples") {
  CHECK_FALSE(has_rep(oracle::cyclic_group(2), 2, 1));
  CHECK_FALSE(has_rep(oracle::rectangular(2, 2), 2, 2));
  CHECK_FALSE(has_rep(oracle::rectangular(2, 2), 3, 2));
  CHECK(has_rep(oracle::rectangular(2, 2), 2, 3));
  CHECK(fq_value(oracle::all_maps(3, false, true), 7, 2) == 2);
  CHECK(fq_value(oracle::cyclic_group(2), 3, 2) == 1);
  CHECK(fq_value(oracle::cyclic_group(3), 7, 2) == 1);
  CHECK(fq_value(oracle::cyclic_group(3), 2, 3) == 2);
  const auto nc = effdim_over_Fq(share(nc_semigroup(2)), make_field(2), 3);
  CHECK(nc.kind == FqKind::LowerBoundOnly);
  CHECK(nc.value == 3);
  CHECK(fq_value(nc_semigroup(2), 2, 4) == 4);
  CHECK(fq_value(oracle::monogenic(1, 1), 2, 2) == 0);
}

TEST_CASE("witnesses are verified effective representations") {
  auto r = effdim_over_Fq(share(oracle::rectangular(2, 2)), make_field(2), 3);
  REQUIRE(r.witness);
  CHECK(r.value == 3);
  const auto& chk = verify_in_place(*r.witness);
  CHECK(chk.is_homomorphism);
  CHECK(chk.is_effective);
}

TEST_CASE("conjugacy reduction does not change decisions") {
  SearchOptions plain;
  plain.conjugacy_reduction = false;
  for (std::size_t n = 1; n <= 3; ++n)
    for (const auto& s : oracle::all_semigroups(n))
      for (int d = 1; d <= 2; ++d) CHECK(has_rep(s, 2, d) == has_rep(s, 2, d, plain));
}

TEST_CASE("decisions are monotone in d") {
  for (std::size_t n = 2; n <= 3; ++n)
    for (const auto& s : oracle::all_semigroups(n)) {
      bool prev = false;
      for (int d = 1; d <= 3; ++d) {
        const bool now = has_rep(s, 2, d);
        CHECK((!prev || now));
        prev = now;
      }
    }
}

TEST_CASE("opposite and identity adjunction agree over F_2") {
  for (std::size_t n = 1; n <= 3; ++n)
    for (const auto& s : oracle::all_semigroups(n)) {
      const int v = fq_value(s, 2, 4);
      CHECK(v == fq_value(opposite(s), 2, 4));
      if (!s.identity()) CHECK(v == fq_value(adjoin_identity(s).table, 2, 4));
    }
}

TEST_CASE("negative answers survive a permuted generator order") {
  auto task = make_search_task(share(oracle::rectangular(2, 2)), 2, make_field(2));
  REQUIRE(task.gens.size() >= 2);
  REQUIRE_FALSE(decide_dim(task).rep);
  std::reverse(task.gens.begin(), task.gens.end());
  CHECK_FALSE(decide_dim(task).rep);
  auto ncf = make_search_task(share(nc_semigroup(2)), 3, make_field(2));
  std::reverse(ncf.gens.begin(), ncf.gens.end());
  CHECK_FALSE(decide_dim(ncf).rep);
}

TEST_CASE("parallel roots reduce deterministically") {
  const auto task = make_search_task(share(oracle::rectangular(2, 2)), 3, make_field(2));
  SearchOptions one, four;
  four.jobs = 4;
  const auto a = decide_dim(task, one), b = decide_dim(task, four);
  REQUIRE(a.rep);
  REQUIRE(b.rep);
  CHECK(a.rep->images() == b.rep->images());
}

TEST_CASE("budget and limits") {
  SearchOptions tiny;
  tiny.budget = 10;
  CHECK_THROWS_AS(effdim_over_Fq(share(nc_semigroup(2)), make_field(2), 4, tiny), Error);
  CHECK_THROWS_AS(decide_dim(make_search_task(share(oracle::cyclic_group(2)), 5, make_field(2))), Error);
  CHECK_THROWS_AS(decide_dim(make_search_task(share(oracle::cyclic_group(2)), 1, make_field(17))), Error);
  const auto t = make_search_task(share(oracle::rectangular(2, 2)), 3, make_field(2));
  CHECK(search_space_log10(t) == Catch::Approx(9 * t.gens.size() * std::log10(2.0)));
}
