#include <catch_amalgamated.hpp>

#include "effdim/quiver.hpp"

using namespace effdim;

namespace {

Quiver make(std::size_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
  Quiver q;
  for (std::size_t v = 0; v < n; ++v) q.vertices.push_back(std::to_string(v));
  for (auto [a, b] : edges) q.edges.push_back({a, b, std::to_string(a) + std::to_string(b) + "_" + std::to_string(q.edges.size())});
  return q;
}

// Paths counted by powers of the adjacency matrix, plus the zero.
std::size_t count_paths(const Quiver& q) {
  const std::size_t n = q.num_vertices();
  std::vector<std::vector<std::size_t>> a(n, std::vector<std::size_t>(n, 0)), p(n, std::vector<std::size_t>(n, 0));
  for (const auto& e : q.edges) a[e.src][e.dst]++;
  std::size_t total = n;
  for (std::size_t v = 0; v < n; ++v) p[v][v] = 1;
  for (std::size_t len = 1; len <= n; ++len) {
    std::vector<std::vector<std::size_t>> next(n, std::vector<std::size_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j) next[i][j] += p[i][k] * a[k][j];
    p = next;
    for (auto& row : p)
      for (auto x : row) total += x;
  }
  return total + 1;
}

}  // namespace

TEST_CASE("path semigroup construction") {
  const auto a3 = Quiver::chain(3);
  const auto ps = build_path_semigroup(PathKind::Path, a3);
  CHECK(ps.table.size() == 7);
  CHECK(ps.table.zero() == std::optional<Elem>(ps.zero));
  const auto diamond = make(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
  CHECK(build_path_semigroup(PathKind::Path, diamond).table.size() == 11);
  CHECK(build_path_semigroup(PathKind::Incidence, diamond).table.size() == 10);
  const auto kron = make(2, {{0, 1}, {0, 1}});
  CHECK(build_path_semigroup(PathKind::Path, kron).table.size() == 5);
  for (const auto& q : {a3, diamond, kron, make(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {0, 3}})})
    CHECK(build_path_semigroup(PathKind::Path, q).table.size() == count_paths(q));
  CHECK_THROWS_AS(build_path_semigroup(PathKind::Path, Quiver::loop()), Error);
  CHECK_THROWS_AS(build_path_semigroup(PathKind::Incidence, make(2, {{0, 1}, {1, 0}})), Error);
}

TEST_CASE("truncated and incidence construction") {
  const auto t = build_path_semigroup(PathKind::Truncated, Quiver::loop(), 3);
  REQUIRE(t.table.size() == 4);
  const Elem e = 1;
  CHECK(t.table(t.table(e, e), e) == t.zero);
  CHECK(t.table(e, e) != t.zero);
  CHECK(t.table(0, e) == e);  // the empty path is the identity here
  const auto inc = build_path_semigroup(
      PathKind::Incidence, Quiver::from_json(nlohmann::json::parse(R"({"relation": [[0,1],[1,2]]})")));
  CHECK(inc.table.size() == 7);
  const auto q = Quiver::from_json(nlohmann::json::parse(R"({"relation": [[0,1],[1,2],[0,2]]})"));
  CHECK(q.edges.size() == 2);  // the Hasse diagram drops 0 < 2
  const auto round = Quiver::from_json(Quiver::chain(3).to_json());
  CHECK(round.edges.size() == 2);
  CHECK_THROWS_AS(Quiver::from_json(nlohmann::json::parse(R"({"relation": [[0,1],[1,0]]})")), Error);
}

TEST_CASE("generic path witnesses") {
  const RationalField q;
  const auto a3 = Quiver::chain(3);
  const auto ps = build_path_semigroup(PathKind::Path, a3);
  const auto r = generic_quiver_rep(ps, a3, q);
  CHECK(r.rep.dim() == 3);
  CHECK(r.rep.check()->is_effective);
  CHECK(quiver_lower_bound(ps, a3) == 3);

  const auto kron = make(2, {{0, 1}, {0, 1}});
  const auto pk = build_path_semigroup(PathKind::Path, kron);
  const auto rk = generic_quiver_rep(pk, kron, make_field(97));
  CHECK(rk.rep.dim() == 2);
  CHECK(rk.edge_maps[0] != rk.edge_maps[1]);

  const auto diamond = make(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
  const auto pd = build_path_semigroup(PathKind::Path, diamond);
  const auto rd = generic_quiver_rep(pd, diamond, q);
  CHECK(rd.rep.dim() == 4);
  for (Elem a = 0; a < pd.paths.size(); ++a) {
    CHECK(rd.rep.image(a) != zeros(q, 4, 4));
    for (Elem b = a + 1; b < pd.paths.size(); ++b)
      if (pd.paths[a].source == pd.paths[b].source && pd.paths[a].target == pd.paths[b].target)
        CHECK(rd.rep.image(a) != rd.rep.image(b));
  }
}

TEST_CASE("truncated witnesses") {
  const RationalField q;
  const auto loop = Quiver::loop();
  const auto ps = build_path_semigroup(PathKind::Truncated, loop, 3);
  const auto r = generic_quiver_rep(ps, loop, q);
  CHECK(r.rep.dim() == 3);
  CHECK(r.exact);
  CHECK(quiver_lower_bound(ps, loop) == 3);

  const auto two_cycle = make(2, {{0, 1}, {1, 0}});
  const auto p2 = build_path_semigroup(PathKind::Truncated, two_cycle, 2);
  const auto r2 = generic_quiver_rep(p2, two_cycle, q);
  CHECK(r2.rep.dim() == 4);
  CHECK(r2.rep.check()->is_effective);
  CHECK(quiver_lower_bound(p2, two_cycle) == 4);
  for (Elem a = 0; a < p2.paths.size(); ++a) {
    const auto& m = r2.rep.image(a);
    if (p2.paths[a].edges.empty()) CHECK(Matrix<Rational>(m * m) == m);
    else CHECK(Matrix<Rational>(m * m * m * m) == zeros(q, 4, 4));
  }
  CHECK(r2.rep.image(p2.zero) == zeros(q, 4, 4));

  const auto a2 = Quiver::chain(2);
  const auto pa = build_path_semigroup(PathKind::Truncated, a2, 2);
  CHECK_FALSE(generic_quiver_rep(pa, a2, q).exact);
  CHECK(quiver_lower_bound(pa, a2) == 2);
}

TEST_CASE("incidence natural module is effective on all small posets") {
  const FiniteField f2 = make_field(2);
  for (std::uint32_t n = 1; n <= 5; ++n) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    for (std::uint32_t a = 0; a < n; ++a)
      for (std::uint32_t b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
    for (std::uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) {
      std::vector<std::pair<std::uint32_t, std::uint32_t>> rel;
      for (std::size_t i = 0; i < pairs.size(); ++i)
        if (mask >> i & 1) rel.push_back(pairs[i]);
      // Only transitively closed relations (each poset with a natural labelling appears).
      bool closed = true;
      for (auto [a, b] : rel)
        for (auto [c, d] : rel)
          if (b == c && std::find(rel.begin(), rel.end(), std::make_pair(a, d)) == rel.end()) closed = false;
      if (!closed) continue;
      nlohmann::json j = {{"relation", nlohmann::json::array()}, {"vertices", nlohmann::json::array()}};
      for (std::uint32_t v = 0; v < n; ++v) j["vertices"].push_back(std::to_string(v));
      for (auto [a, b] : rel) j["relation"].push_back({a, b});
      const auto q = Quiver::from_json(j);
      const auto ps = build_path_semigroup(PathKind::Incidence, q);
      CHECK(ps.table.size() == n + rel.size() + 1);
      const auto r = generic_quiver_rep(ps, q, f2);
      CHECK(r.rep.dim() == n);
      CHECK(r.rep.check()->is_effective);
    }
  }
}
