#include "effdim/quiver.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>

namespace effdim {

std::vector<std::uint32_t> Quiver::strongly_connected_components() const {
  const std::size_t n = vertices.size();
  std::vector<std::vector<std::uint32_t>> out(n);
  for (const auto& e : edges) out[e.src].push_back(e.dst);
  std::vector<std::int64_t> idx(n, -1), low(n, 0);
  std::vector<bool> on(n, false);
  std::vector<std::uint32_t> comp(n, 0), stack;
  std::int64_t counter = 0;
  std::uint32_t ncomp = 0;
  std::function<void(std::uint32_t)> dfs = [&](std::uint32_t v) {
    idx[v] = low[v] = counter++;
    stack.push_back(v);
    on[v] = true;
    for (auto w : out[v]) {
      if (idx[w] < 0) {
        dfs(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on[w]) {
        low[v] = std::min(low[v], idx[w]);
      }
    }
    if (low[v] == idx[v]) {
      std::uint32_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on[w] = false;
        comp[w] = ncomp;
      } while (w != v);
      ++ncomp;
    }
  };
  for (std::uint32_t v = 0; v < n; ++v)
    if (idx[v] < 0) dfs(v);
  return comp;
}

bool Quiver::acyclic() const {
  const auto comp = strongly_connected_components();
  for (const auto& e : edges)
    if (comp[e.src] == comp[e.dst]) return false;  // loop or edge inside a cycle
  return true;
}

bool Quiver::every_vertex_on_cycle() const {
  const auto comp = strongly_connected_components();
  std::vector<bool> has_edge(vertices.size(), false);
  for (const auto& e : edges)
    if (comp[e.src] == comp[e.dst]) has_edge[e.src] = true;
  // A component with an internal edge puts all its vertices on a cycle.
  std::vector<bool> comp_ok(vertices.size(), false);
  for (std::size_t v = 0; v < vertices.size(); ++v)
    if (has_edge[v]) comp_ok[comp[v]] = true;
  for (std::size_t v = 0; v < vertices.size(); ++v)
    if (!comp_ok[comp[v]]) return false;
  return true;
}

Quiver Quiver::from_json(const nlohmann::json& j) {
  Quiver q;
  if (!j.is_object()) throw Error(Errc::Malformed, "quiver must be a JSON object");
  if (j.contains("relation")) {
    std::size_t n = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> rel;
    for (const auto& p : j.at("relation")) {
      if (!p.is_array() || p.size() != 2) throw Error(Errc::Malformed, "relation entries are pairs");
      rel.emplace_back(p[0].get<std::uint32_t>(), p[1].get<std::uint32_t>());
      n = std::max<std::size_t>(n, std::max(rel.back().first, rel.back().second) + 1);
    }
    if (j.contains("vertices")) {
      q.vertices = j.at("vertices").get<std::vector<std::string>>();
      if (q.vertices.size() < n) throw Error(Errc::Malformed, "relation mentions an unknown vertex");
      n = q.vertices.size();
    } else {
      for (std::size_t v = 0; v < n; ++v) q.vertices.push_back(std::to_string(v));
    }
    std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
    for (auto [a, b] : rel)
      if (a != b) le[a][b] = true;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t a = 0; a < n; ++a)
        if (le[a][k])
          for (std::size_t b = 0; b < n; ++b)
            if (le[k][b]) le[a][b] = true;
    for (std::size_t a = 0; a < n; ++a)
      if (le[a][a]) throw Error(Errc::NotAcyclic, "relation is not antisymmetric");
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        if (!le[a][b]) continue;
        bool cover = true;
        for (std::size_t c = 0; c < n && cover; ++c) cover = !(le[a][c] && le[c][b]);
        if (cover)
          q.edges.push_back({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b),
                             q.vertices[a] + "<" + q.vertices[b]});
      }
    return q;
  }
  q.vertices = j.at("vertices").get<std::vector<std::string>>();
  for (const auto& e : j.at("edges")) {
    QuiverEdge edge{e.at("src").get<std::uint32_t>(), e.at("dst").get<std::uint32_t>(),
                    e.value("label", std::string())};
    if (edge.src >= q.vertices.size() || edge.dst >= q.vertices.size())
      throw Error(Errc::IndexOutOfRange, "edge endpoint out of range");
    if (edge.label.empty()) edge.label = "e" + std::to_string(q.edges.size());
    q.edges.push_back(std::move(edge));
  }
  return q;
}

nlohmann::json Quiver::to_json() const {
  nlohmann::json es = nlohmann::json::array();
  for (const auto& e : edges) es.push_back({{"src", e.src}, {"dst", e.dst}, {"label", e.label}});
  return {{"vertices", vertices}, {"edges", es}};
}

Quiver Quiver::chain(std::size_t n) {
  Quiver q;
  for (std::size_t v = 0; v < n; ++v) q.vertices.push_back(std::to_string(v + 1));
  for (std::uint32_t v = 0; v + 1 < n; ++v) q.edges.push_back({v, v + 1, "a" + std::to_string(v + 1)});
  return q;
}

Quiver Quiver::loop() {
  Quiver q;
  q.vertices = {"1"};
  q.edges = {{0, 0, "e"}};
  return q;
}

PathSemigroup build_path_semigroup(PathKind kind, const Quiver& q, int truncation) {
  if ((kind == PathKind::Path || kind == PathKind::Incidence) && !q.acyclic())
    throw Error(Errc::NotAcyclic, "path and incidence semigroups need an acyclic quiver");
  if (kind == PathKind::Truncated && truncation < 1) throw Error(Errc::IndexOutOfRange, "truncation N must be >= 1");
  const std::size_t n = q.num_vertices();
  PathSemigroup ps;
  ps.kind = kind;
  ps.truncation = truncation;

  std::vector<QuiverPath> paths;
  for (std::uint32_t v = 0; v < n; ++v) paths.push_back({v, v, {}});
  for (std::size_t i = 0; i < paths.size(); ++i) {
    if (kind == PathKind::Truncated && static_cast<int>(paths[i].edges.size()) + 1 >= truncation) continue;
    for (std::uint32_t e = 0; e < q.edges.size(); ++e) {
      if (q.edges[e].src != paths[i].target) continue;
      QuiverPath p = paths[i];
      p.edges.push_back(e);
      p.target = q.edges[e].dst;
      paths.push_back(std::move(p));
      if (paths.size() > kPathElementBudget) throw Error(Errc::TooLarge, "path semigroup exceeds the element budget");
    }
  }
  if (kind == PathKind::Incidence) {
    std::map<std::pair<std::uint32_t, std::uint32_t>, bool> seen;
    std::vector<QuiverPath> reps;
    for (auto& p : paths)
      if (seen.emplace(std::make_pair(p.source, p.target), true).second) reps.push_back(p);
    paths = std::move(reps);
  }
  // Breadth-first order already sorts by length; sort edge sequences within a length.
  std::stable_sort(paths.begin() + static_cast<std::ptrdiff_t>(n), paths.end(), [](const auto& a, const auto& b) {
    return a.edges.size() != b.edges.size() ? a.edges.size() < b.edges.size() : a.edges < b.edges;
  });

  const std::size_t size = paths.size() + 1;
  const Elem z = static_cast<Elem>(size - 1);
  std::map<std::vector<std::uint32_t>, Elem> by_edges;
  std::map<std::pair<std::uint32_t, std::uint32_t>, Elem> by_ends;
  for (Elem i = 0; i < paths.size(); ++i) {
    if (!paths[i].edges.empty()) by_edges[paths[i].edges] = i;
    by_ends.emplace(std::make_pair(paths[i].source, paths[i].target), i);
  }
  std::vector<Elem> t(size * size, z);
  for (Elem a = 0; a < paths.size(); ++a)
    for (Elem b = 0; b < paths.size(); ++b) {
      const auto &p = paths[a], &r = paths[b];
      if (p.target != r.source) continue;
      if (kind == PathKind::Incidence) {
        t[a * size + b] = by_ends.at({p.source, r.target});
        continue;
      }
      if (p.edges.empty()) {
        t[a * size + b] = b;
        continue;
      }
      if (r.edges.empty()) {
        t[a * size + b] = a;
        continue;
      }
      if (kind == PathKind::Truncated && static_cast<int>(p.edges.size() + r.edges.size()) >= truncation) continue;
      std::vector<std::uint32_t> cat = p.edges;
      cat.insert(cat.end(), r.edges.begin(), r.edges.end());
      t[a * size + b] = by_edges.at(cat);
    }
  std::vector<std::string> names;
  for (const auto& p : paths) {
    if (kind == PathKind::Incidence) {
      names.push_back("(" + q.vertices[p.source] + "," + q.vertices[p.target] + ")");
    } else if (p.edges.empty()) {
      names.push_back("eps_" + q.vertices[p.source]);
    } else {
      std::string s;
      for (auto e : p.edges) s += (s.empty() ? "" : ".") + q.edges[e].label;
      names.push_back(s);
    }
  }
  names.push_back("z");
  ps.table = CayleyTable::trusted(size, std::move(t), std::move(names));
  ps.paths = std::move(paths);
  ps.zero = z;
  return ps;
}

template <class Field>
MatrixRep<Field> quiver_module(std::shared_ptr<const CayleyTable> s, const PathSemigroup& ps, const Field& field,
                               const std::vector<Index>& dims,
                               const std::vector<Matrix<typename Field::scalar_type>>& edge_maps) {
  using S = typename Field::scalar_type;
  std::vector<Index> offset(dims.size() + 1, 0);
  for (std::size_t v = 0; v < dims.size(); ++v) offset[v + 1] = offset[v] + dims[v];
  const Index total = offset.back();
  std::vector<Matrix<S>> imgs;
  for (const auto& p : ps.paths) {
    Matrix<S> block = identity(field, dims[p.source]);
    for (auto e : p.edges) block = Matrix<S>(block * edge_maps[e]);
    Matrix<S> m = zeros(field, total, total);
    m.block(offset[p.source], offset[p.target], dims[p.source], dims[p.target]) = block;
    imgs.push_back(std::move(m));
  }
  imgs.push_back(zeros(field, total, total));
  return MatrixRep<Field>(std::move(s), field, total, std::move(imgs));
}

template <class Field>
QuiverRepResult<Field> generic_quiver_rep(const PathSemigroup& ps, const Quiver& q, const Field& field,
                                          const QuiverOptions& opt) {
  using S = typename Field::scalar_type;
  auto s = std::make_shared<const CayleyTable>(ps.table);
  const std::size_t n = q.num_vertices();
  QuiverRepResult<Field> out{MatrixRep<Field>(s, field, 0, std::vector<Matrix<S>>(s->size(), zeros(field, 0, 0))),
                             {}, {}, 0, true, opt.seed};
  const Index block = ps.kind == PathKind::Truncated ? ps.truncation : 1;
  out.dimension_vector.assign(n, block);
  if (ps.kind == PathKind::Truncated) out.exact = q.every_vertex_on_cycle();

  if (ps.kind == PathKind::Incidence) {
    for (std::size_t e = 0; e < q.edges.size(); ++e) out.edge_maps.push_back(identity(field, 1));
    out.rep = quiver_module(s, ps, field, out.dimension_vector, out.edge_maps);
    const auto& chk = verify_in_place(out.rep);
    if (!chk.is_homomorphism || !chk.is_effective) throw Error(Errc::Inconsistent, "natural incidence module not effective");
    return out;
  }
  for (int attempt = 0; attempt < opt.retry_cap; ++attempt) {
    std::mt19937_64 rng(opt.seed + static_cast<std::uint64_t>(attempt) * 0x9E3779B97F4A7C15ull);
    out.edge_maps.clear();
    for (std::size_t e = 0; e < q.edges.size(); ++e) {
      Matrix<S> m = zeros(field, block, block);
      if (ps.kind == PathKind::Path) {
        m(0, 0) = field.random_nonzero(rng);
      } else {
        for (Index r = 0; r < block; ++r)
          for (Index c = r + 1; c < block; ++c) m(r, c) = field.random_nonzero(rng);
      }
      out.edge_maps.push_back(std::move(m));
    }
    out.rep = quiver_module(s, ps, field, out.dimension_vector, out.edge_maps);
    const auto& chk = verify_in_place(out.rep);
    if (chk.is_homomorphism && chk.is_effective) {
      out.retries_used = attempt;
      return out;
    }
  }
  const auto size = field.size();
  throw Error(Errc::RetriesExhausted, "no effective quiver representation in " + std::to_string(opt.retry_cap) +
                                          " attempts over a field of size " +
                                          (size ? std::to_string(*size) : std::string("infinite")));
}

int quiver_lower_bound(const PathSemigroup& ps, const Quiver& q) {
  const int n = static_cast<int>(q.num_vertices());
  if (ps.kind == PathKind::Truncated && q.every_vertex_on_cycle()) return ps.truncation * n;
  return n;
}

#define EFFDIM_QUIVER_INSTANTIATE(F)                                                                          \
  template MatrixRep<F> quiver_module<F>(std::shared_ptr<const CayleyTable>, const PathSemigroup&, const F&, \
                                         const std::vector<Index>&, const std::vector<Matrix<F::scalar_type>>&); \
  template QuiverRepResult<F> generic_quiver_rep<F>(const PathSemigroup&, const Quiver&, const F&,           \
                                                    const QuiverOptions&);
EFFDIM_QUIVER_INSTANTIATE(RationalField)
EFFDIM_QUIVER_INSTANTIATE(FiniteField)

}  // namespace effdim
