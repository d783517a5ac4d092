#include "effdim/greens.hpp"

#include <algorithm>
#include <functional>

namespace effdim {

namespace {

struct Components {
  std::vector<std::uint32_t> comp;   // component per vertex, in Tarjan completion order
  std::uint32_t count = 0;
};

// Iterative Tarjan over the graph x -> succ(x, i) for i in [0, degree).
template <class Succ>
Components strongly_connected(std::size_t n, std::size_t degree, Succ succ) {
  Components out;
  out.comp.assign(n, UINT32_MAX);
  std::vector<std::int64_t> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::uint32_t> stack;
  std::int64_t counter = 0;
  struct Frame {
    std::uint32_t v;
    std::size_t next;
  };
  for (std::uint32_t root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.next < degree) {
        const std::uint32_t w = succ(f.v, f.next++);
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      const std::uint32_t v = f.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == index[v]) {
        for (;;) {
          const std::uint32_t w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          out.comp[w] = out.count;
          if (w == v) break;
        }
        ++out.count;
      }
    }
  }
  return out;
}

// Renumber so ids follow the least member.
std::vector<std::uint32_t> canonical_ids(const std::vector<std::uint32_t>& raw, std::uint32_t& count,
                                         std::vector<std::uint32_t>* mapping = nullptr) {
  std::vector<std::int64_t> remap(raw.size() + 1, -1);
  std::vector<std::uint32_t> out(raw.size());
  count = 0;
  for (std::size_t x = 0; x < raw.size(); ++x) {
    if (remap[raw[x]] < 0) remap[raw[x]] = count++;
    out[x] = static_cast<std::uint32_t>(remap[raw[x]]);
  }
  if (mapping) {
    mapping->assign(raw.size() + 1, 0);
    for (std::size_t i = 0; i < remap.size(); ++i)
      if (remap[i] >= 0) (*mapping)[i] = static_cast<std::uint32_t>(remap[i]);
  }
  return out;
}

}  // namespace

std::vector<Elem> GreensData::members(const std::vector<std::uint32_t>& cls, std::uint32_t id) const {
  std::vector<Elem> out;
  for (Elem x = 0; x < cls.size(); ++x)
    if (cls[x] == id) out.push_back(x);
  return out;
}

GreensData derive_structure(const CayleyTable& s) {
  const std::size_t n = s.size();
  GreensData g;

  auto r = strongly_connected(n, n, [&](std::uint32_t v, std::size_t i) { return s(v, static_cast<Elem>(i)); });
  auto l = strongly_connected(n, n, [&](std::uint32_t v, std::size_t i) { return s(static_cast<Elem>(i), v); });
  auto j = strongly_connected(n, 2 * n, [&](std::uint32_t v, std::size_t i) {
    return i < n ? s(v, static_cast<Elem>(i)) : s(static_cast<Elem>(i - n), v);
  });
  g.r_class = canonical_ids(r.comp, g.num_r);
  g.l_class = canonical_ids(l.comp, g.num_l);
  std::vector<std::uint32_t> tarjan_to_id;
  g.j_class = canonical_ids(j.comp, g.num_j, &tarjan_to_id);

  {
    std::vector<std::uint32_t> pair_ids(n);
    for (Elem x = 0; x < n; ++x) pair_ids[x] = g.r_class[x] * g.num_l + g.l_class[x];
    std::uint32_t dummy = 0;
    std::vector<std::int64_t> remap(static_cast<std::size_t>(g.num_r) * g.num_l, -1);
    g.h_class.resize(n);
    for (Elem x = 0; x < n; ++x) {
      if (remap[pair_ids[x]] < 0) remap[pair_ids[x]] = dummy++;
      g.h_class[x] = static_cast<std::uint32_t>(remap[pair_ids[x]]);
    }
    g.num_h = dummy;
  }

  // Reachability over the condensation. Tarjan completes sinks first, so
  // processing components in completion order sees successors first.
  const std::uint32_t J = g.num_j;
  const std::size_t words = (J + 63) / 64;
  std::vector<std::vector<std::uint64_t>> reach(J, std::vector<std::uint64_t>(words, 0));
  std::vector<std::vector<Elem>> by_tarjan(j.count);
  for (Elem x = 0; x < n; ++x) by_tarjan[j.comp[x]].push_back(x);
  std::vector<std::uint32_t> mark(J, UINT32_MAX);
  for (std::uint32_t c = 0; c < j.count; ++c) {
    const std::uint32_t id = tarjan_to_id[c];
    reach[id][id / 64] |= std::uint64_t{1} << (id % 64);
    mark[id] = id;
    for (Elem x : by_tarjan[c])
      for (Elem y = 0; y < n; ++y)
        for (Elem w : {s(x, y), s(y, x)}) {
          const std::uint32_t wid = g.j_class[w];
          if (mark[wid] == id) continue;
          mark[wid] = id;
          for (std::size_t t = 0; t < words; ++t) reach[id][t] |= reach[wid][t];
        }
  }
  g.j_below.assign(J, std::vector<bool>(J, false));
  for (std::uint32_t a = 0; a < J; ++a)
    for (std::uint32_t b = 0; b < J; ++b) g.j_below[a][b] = (reach[b][a / 64] >> (a % 64)) & 1;

  g.idempotents = idempotents(s);
  g.j_regular.assign(J, false);
  for (Elem e : g.idempotents) g.j_regular[g.j_class[e]] = true;

  for (std::uint32_t c = 0; c < J; ++c) {
    bool minimal = true;
    for (std::uint32_t d = 0; d < J && minimal; ++d) minimal = g.j_below[c][d];
    if (minimal) g.minimal_j = c;
  }
  g.minimal_ideal = g.members(g.j_class, g.minimal_j);

  if (s.zero()) {
    const std::uint32_t zj = g.j_class[*s.zero()];
    for (std::uint32_t c = 0; c < J; ++c) {
      if (c == zj) continue;
      bool zero_minimal = true;
      for (std::uint32_t d = 0; d < J && zero_minimal; ++d)
        if (d != zj && g.j_less(d, c)) zero_minimal = false;
      if (!zero_minimal) continue;
      auto ideal = g.members(g.j_class, c);
      ideal.push_back(*s.zero());
      std::sort(ideal.begin(), ideal.end());
      g.zero_minimal_ideals.push_back(std::move(ideal));
    }
  }

  std::vector<bool> done(J, false);
  for (Elem e : g.idempotents) {
    const std::uint32_t c = g.j_class[e];
    if (done[c]) continue;
    done[c] = true;
    g.maximal_subgroups.push_back({e, c, restrict_to(s, g.members(g.h_class, g.h_class[e]))});
  }
  return g;
}

ChainLengths chain_lengths(const CayleyTable& s) { return chain_lengths(s, derive_structure(s)); }

ChainLengths chain_lengths(const CayleyTable& s, const GreensData& g) {
  ChainLengths out;
  const auto& E = g.idempotents;
  std::vector<int> height(E.size(), -1);
  std::function<int(std::size_t)> h = [&](std::size_t i) -> int {
    if (height[i] >= 0) return height[i];
    int best = 0;
    for (std::size_t k = 0; k < E.size(); ++k) {
      if (k == i) continue;
      if (s(E[k], E[i]) == E[k] && s(E[i], E[k]) == E[k]) best = std::max(best, h(k) + 1);
    }
    return height[i] = best;
  };
  for (std::size_t i = 0; i < E.size(); ++i) out.idempotent_chain = std::max(out.idempotent_chain, h(i));

  std::vector<int> jh(g.num_j, -1);
  std::function<int(std::uint32_t)> hj = [&](std::uint32_t c) -> int {
    if (jh[c] >= 0) return jh[c];
    int best = 0;
    for (std::uint32_t d = 0; d < g.num_j; ++d)
      if (g.j_regular[d] && g.j_less(d, c)) best = std::max(best, hj(d) + 1);
    return jh[c] = best;
  };
  for (std::uint32_t c = 0; c < g.num_j; ++c)
    if (g.j_regular[c]) out.regular_j_chain = std::max(out.regular_j_chain, hj(c));
  return out;
}

}  // namespace effdim
