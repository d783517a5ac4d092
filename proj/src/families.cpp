#include "effdim/families.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "effdim/bands.hpp"
#include "effdim/field.hpp"
#include "effdim/nilpotent.hpp"

namespace effdim {

namespace {

using Map = std::vector<int>;

std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::uint64_t factorial(std::uint64_t n) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 2; i <= n; ++i) r *= i;
  return r;
}

// Saturating power, enough to compare against the budget.
std::uint64_t ipow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (b != 0 && r > (std::uint64_t{1} << 62) / b) return std::uint64_t{1} << 62;
    r *= b;
  }
  return r;
}

void budget(const std::string& name, std::uint64_t size) {
  if (size > kFamilyBudget)
    throw Error(Errc::TooLarge, name + " would have " + std::to_string(size) + " elements (limit " +
                                    std::to_string(kFamilyBudget) + ")");
}

int param(const nlohmann::json& p, const char* key) {
  if (!p.is_object() || !p.contains(key) || !p.at(key).is_number_integer())
    throw Error(Errc::Malformed, std::string("missing integer parameter '") + key + "'");
  return p.at(key).get<int>();
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(Errc::Malformed, what);
}

std::string map_name(const Map& m) {
  std::string s;
  for (int v : m) s += v < 0 ? "-" : std::to_string(v);
  return s;
}

// All maps {0..n-1} -> {lo..n-1} in lexicographic order.
std::vector<Map> all_maps(int n, int lo) {
  std::vector<Map> out;
  Map m(n, lo);
  while (true) {
    out.push_back(m);
    int i = n - 1;
    while (i >= 0 && m[i] == n - 1) m[i--] = lo;
    if (i < 0) break;
    ++m[i];
  }
  return out;
}

bool injective(const Map& m) {
  std::set<int> seen;
  for (int v : m)
    if (v >= 0 && !seen.insert(v).second) return false;
  return true;
}

bool bijective(const Map& m) {
  for (int v : m)
    if (v < 0) return false;
  return injective(m);
}

CayleyTable boolean_matrices(int n) {
  const int cells = n * n;
  const std::size_t size = std::size_t{1} << cells;
  auto bit = [&](std::size_t code, int r, int c) { return (code >> (cells - 1 - (r * n + c))) & 1u; };
  std::vector<Elem> data(size * size);
  std::vector<std::string> names(size);
  for (std::size_t a = 0; a < size; ++a) {
    std::string nm;
    for (int r = 0; r < n; ++r) {
      if (r) nm += '|';
      for (int c = 0; c < n; ++c) nm += bit(a, r, c) ? '1' : '0';
    }
    names[a] = nm;
    for (std::size_t b = 0; b < size; ++b) {
      std::size_t code = 0;
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
          unsigned v = 0;
          for (int k = 0; k < n && !v; ++k) v = bit(a, r, k) & bit(b, k, c);
          code = (code << 1) | v;
        }
      data[a * size + b] = static_cast<Elem>(code);
    }
  }
  return CayleyTable::trusted(size, std::move(data), std::move(names));
}

CayleyTable matrix_monoid(int n, int q) {
  const auto [p, k] = [q]() -> std::pair<int, int> {
    for (int p : {2, 3, 5})
      for (int k = 1, pk = p; pk <= q; ++k, pk *= p)
        if (pk == q) return {p, k};
    throw Error(Errc::Malformed, "Mat needs q in {2, 3, 4, 5}");
  }();
  const FiniteField f = make_field(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(k));
  const int cells = n * n;
  const std::size_t size = ipow(q, cells);
  // Entry (r, c) is the digit at position r * n + c, most significant first.
  std::vector<std::vector<int>> ent(size, std::vector<int>(cells));
  std::vector<std::string> names(size);
  for (std::size_t a = 0; a < size; ++a) {
    std::size_t code = a;
    for (int i = cells - 1; i >= 0; --i, code /= q) ent[a][i] = static_cast<int>(code % q);
    for (int i = 0; i < cells; ++i) names[a] += (i && i % n == 0 ? "|" : "") + std::to_string(ent[a][i]);
  }
  std::vector<int> add(q * q), mul(q * q);
  for (int x = 0; x < q; ++x)
    for (int y = 0; y < q; ++y) {
      add[x * q + y] = static_cast<int>((f.element(x) + f.element(y)).value());
      mul[x * q + y] = static_cast<int>((f.element(x) * f.element(y)).value());
    }
  std::vector<Elem> data(size * size);
  for (std::size_t a = 0; a < size; ++a)
    for (std::size_t b = 0; b < size; ++b) {
      std::size_t code = 0;
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
          int s = 0;
          for (int j = 0; j < n; ++j) s = add[s * q + mul[ent[a][r * n + j] * q + ent[b][j * n + c]]];
          code = code * q + static_cast<std::size_t>(s);
        }
      data[a * size + b] = static_cast<Elem>(code);
    }
  return CayleyTable::trusted(size, std::move(data), std::move(names));
}

// Z/m wreath IS_n acting on points i * m + h.
TransformationMonoid wreath(int m, int n) {
  std::vector<Map> maps;
  for (const Map& sigma : all_maps(n, -1)) {
    if (!injective(sigma)) continue;
    std::vector<int> dom;
    for (int i = 0; i < n; ++i)
      if (sigma[i] >= 0) dom.push_back(i);
    std::vector<int> label(dom.size(), 0);
    while (true) {
      Map f(static_cast<std::size_t>(n * m), -1);
      for (std::size_t t = 0; t < dom.size(); ++t)
        for (int h = 0; h < m; ++h) f[dom[t] * m + h] = sigma[dom[t]] * m + (h + label[t]) % m;
      maps.push_back(std::move(f));
      std::size_t t = 0;
      while (t < label.size() && ++label[t] == m) label[t++] = 0;
      if (t == label.size()) break;
    }
  }
  return TransformationMonoid::from_maps(n * m, std::move(maps));
}

CayleyTable abelian(const std::vector<int>& factors) {
  std::size_t size = 1;
  for (int f : factors) size *= static_cast<std::size_t>(f);
  auto digits = [&](std::size_t x) {
    std::vector<int> d(factors.size());
    for (std::size_t i = factors.size(); i-- > 0;) {
      d[i] = static_cast<int>(x % factors[i]);
      x /= factors[i];
    }
    return d;
  };
  std::vector<Elem> data(size * size);
  for (std::size_t a = 0; a < size; ++a) {
    const auto da = digits(a);
    for (std::size_t b = 0; b < size; ++b) {
      const auto db = digits(b);
      std::size_t c = 0;
      for (std::size_t i = 0; i < factors.size(); ++i) c = c * factors[i] + (da[i] + db[i]) % factors[i];
      data[a * size + b] = static_cast<Elem>(c);
    }
  }
  return CayleyTable::trusted(size, std::move(data));
}

// Minimal number of generators of a finite abelian group.
int abelian_rank(const std::vector<int>& factors) {
  int best = 0;
  int top = 1;
  for (int f : factors) top = std::max(top, f);
  for (int p = 2; p <= top; ++p) {
    bool prime = true;
    for (int d = 2; d * d <= p; ++d) prime = prime && p % d != 0;
    if (!prime) continue;
    int c = 0;
    for (int f : factors) c += f % p == 0;
    best = std::max(best, c);
  }
  return best;
}

CayleyTable lattice_ln(int n) {
  // Bottom 0, atoms 1..n, top n+1; meet.
  const Elem top = static_cast<Elem>(n + 1);
  const std::size_t size = static_cast<std::size_t>(n + 2);
  std::vector<Elem> data(size * size);
  for (Elem a = 0; a < size; ++a)
    for (Elem b = 0; b < size; ++b) data[a * size + b] = a == b ? a : a == top ? b : b == top ? a : 0;
  std::vector<std::string> names{"0"};
  for (int i = 1; i <= n; ++i) names.push_back("a" + std::to_string(i));
  names.push_back("1");
  return CayleyTable::trusted(size, std::move(data), std::move(names));
}

std::vector<int> int_list(const nlohmann::json& p, const char* key) {
  require(p.is_object() && p.contains(key) && p.at(key).is_array(), std::string("missing list parameter '") + key + "'");
  std::vector<int> out;
  for (const auto& v : p.at(key)) {
    require(v.is_number_integer(), std::string("parameter '") + key + "' must list integers");
    out.push_back(v.get<int>());
  }
  return out;
}

Quiver quiver_param(const nlohmann::json& p) {
  if (p.contains("quiver")) return Quiver::from_json(p.at("quiver"));
  if (p.contains("relation")) return Quiver::from_json(nlohmann::json{{"relation", p.at("relation")}});
  return Quiver::chain(static_cast<std::size_t>(param(p, "n")));
}

FamilyMetadata meta(const std::string& name, const nlohmann::json& params, std::optional<int> value,
                    std::string closed_form, std::string source, std::string note = {}) {
  return FamilyMetadata{name, params, value, std::move(closed_form), std::move(source), std::move(note)};
}

}  // namespace

bool TransformationMonoid::total() const {
  for (const auto& m : maps)
    for (int v : m)
      if (v < 0) return false;
  return true;
}

TransformationMonoid TransformationMonoid::from_maps(int points, std::vector<Map> maps) {
  std::sort(maps.begin(), maps.end());
  maps.erase(std::unique(maps.begin(), maps.end()), maps.end());
  budget("transformation monoid", maps.size());
  std::map<Map, Elem> index;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    require(maps[i].size() == static_cast<std::size_t>(points), "map has the wrong number of points");
    index.emplace(maps[i], static_cast<Elem>(i));
  }
  const std::size_t n = maps.size();
  std::vector<Elem> data(n * n);
  Map c(static_cast<std::size_t>(points));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      for (int x = 0; x < points; ++x) c[x] = maps[b][x] < 0 ? -1 : maps[a][maps[b][x]];
      const auto it = index.find(c);
      if (it == index.end()) throw Error(Errc::NotClosed, "maps are not closed under composition");
      data[a * n + b] = it->second;
    }
  std::vector<std::string> names;
  for (const auto& m : maps) names.push_back(map_name(m));
  TransformationMonoid t;
  t.points = points;
  t.table = CayleyTable::trusted(n, std::move(data), std::move(names));
  for (std::size_t i = 0; i < n; ++i)
    if (bijective(maps[i])) t.units.push_back(static_cast<Elem>(i));
  t.maps = std::move(maps);
  return t;
}

TransformationMonoid TransformationMonoid::generated(int points, const std::vector<Map>& gens) {
  Map id(static_cast<std::size_t>(points));
  std::iota(id.begin(), id.end(), 0);
  std::set<Map> seen{id};
  std::deque<Map> todo{id};
  while (!todo.empty()) {
    const Map a = todo.front();
    todo.pop_front();
    for (const auto& g : gens) {
      Map c(static_cast<std::size_t>(points));
      for (int x = 0; x < points; ++x) c[x] = a[x] < 0 ? -1 : g[a[x]];
      if (seen.insert(c).second) {
        budget("transformation monoid", seen.size());
        todo.push_back(c);
      }
    }
  }
  return from_maps(points, {seen.begin(), seen.end()});
}

nlohmann::json FamilyMetadata::to_json() const {
  nlohmann::json j{{"name", name}, {"params", params}, {"closed_form", closed_form}, {"source", source}};
  j["known_effdim_over_C"] = known_effdim_over_C ? nlohmann::json(*known_effdim_over_C) : nlohmann::json();
  if (!note.empty()) j["note"] = note;
  return j;
}

std::vector<std::string> family_names() {
  return {"S",  "T",  "PT", "IS", "O",  "B",       "Mat",         "wreath", "N",    "CN",        "NC",       "partinj",
          "C",  "F",  "L",  "Z",  "abelian", "rectangular", "sign",   "path", "incidence", "truncated"};
}

FamilyMetadata family_metadata(const std::string& name, const nlohmann::json& p) {
  if (name == "S") {
    const int n = param(p, "n");
    return meta(name, p, n - 1, "n-1", "table");
  }
  if (name == "T") {
    const int n = param(p, "n");
    return meta(name, p, n == 1 ? 0 : n, "n", "table", n == 1 ? "T_1 is trivial" : "");
  }
  if (name == "PT" || name == "IS") return meta(name, p, param(p, "n"), "n", "table");
  if (name == "O") return meta(name, p, std::nullopt, "", "none");
  if (name == "B") {
    const int n = param(p, "n");
    return meta(name, p, (1 << n) - 1, "2^n-1", "table");
  }
  if (name == "Mat" || name == "PAut") {
    const int n = param(p, "n"), q = param(p, "q");
    const int v = static_cast<int>((ipow(q, n) - 1) / (q - 1));
    return meta(name, p, v, "(q^n-1)/(q-1)", name == "Mat" ? "table" : "cited-external");
  }
  if (name == "wreath") return meta(name, p, param(p, "n"), "n*effdim(Z/m)", "proposition");
  if (name == "N" || name == "CN") {
    const int n = param(p, "n");
    return meta(name, p, n, "n", name == "N" ? "table" : "proposition");
  }
  if (name == "NC") return meta(name, p, 1 << param(p, "m"), "2^m", "proposition");
  if (name == "partinj") {
    const auto sizes = int_list(p, "sizes");
    int v = 2 - 2 * static_cast<int>(sizes.size());
    for (int m : sizes) v += 1 << m;
    return meta(name, p, v, "2-2k+sum 2^{m_i}", "proposition");
  }
  if (name == "C") {
    const int m = param(p, "m"), n = param(p, "n");
    if (m == 1)
      return meta(name, p, n == 1 ? 0 : 1, "m+1 (n>m), m (n=m)", "table",
                  "C_{1,n} is the cyclic group Z/n: value 1 (0 when n = 1) instead of the formula");
    return meta(name, p, m == n ? m : m + 1, "m+1 (n>m), m (n=m)", "table");
  }
  if (name == "F") {
    const int n = param(p, "n");
    if (n <= 1)
      return meta(name, p, n, "C(n,2)+n+1", "table",
                  "F_1 = {1, a} is the two-element chain: value 1 (0 for F_0) instead of the formula");
    return meta(name, p, static_cast<int>(binom(n, 2)) + n + 1, "C(n,2)+n+1", "table");
  }
  if (name == "L") return meta(name, p, param(p, "n"), "n", "proposition");
  if (name == "Z") {
    const int n = param(p, "n");
    return meta(name, p, n == 1 ? 0 : 1, "1", "proposition");
  }
  if (name == "abelian") return meta(name, p, abelian_rank(int_list(p, "factors")), "minimal number of generators",
                                     "proposition");
  if (name == "rectangular") {
    const int m = param(p, "m"), n = param(p, "n");
    return meta(name, p, m == 1 && n == 1 ? 0 : (m == 1 || n == 1 ? 2 : 3), "0, 2 or 3", "table");
  }
  if (name == "sign") {
    const int n = param(p, "n");
    return meta(name, p, n + 1, "n+1", "proposition");
  }
  if (name == "path" || name == "incidence") {
    const Quiver q = quiver_param(p);
    return meta(name, p, static_cast<int>(q.num_vertices()), "n", name == "path" ? "table" : "proposition");
  }
  if (name == "truncated") {
    const Quiver q = p.contains("quiver") ? Quiver::from_json(p.at("quiver")) : Quiver::loop();
    const int N = param(p, "N");
    if (!q.every_vertex_on_cycle()) return meta(name, p, std::nullopt, "N*n", "none", "some vertex is on no cycle");
    return meta(name, p, N * static_cast<int>(q.num_vertices()), "N*n", "proposition");
  }
  if (name == "K") return meta(name, p, param(p, "n"), "n", "cited-external");
  throw Error(Errc::UnknownFamily, "unknown family '" + name + "'");
}

Family make_family(const std::string& name, const nlohmann::json& p) {
  if (name == "K" || name == "PAut")
    throw Error(Errc::UnknownFamily, "family '" + name + "' is metadata-only (no constructor)");
  Family fam;
  fam.meta = family_metadata(name, p);
  auto from_tm = [&](TransformationMonoid t) {
    fam.table = t.table;
    fam.transformations = std::move(t);
  };
  if (name == "S" || name == "T" || name == "PT" || name == "IS" || name == "O") {
    const int n = param(p, "n");
    require(n >= 1, "n must be positive");
    const std::uint64_t size = name == "S"    ? factorial(n)
                               : name == "T"  ? ipow(n, n)
                               : name == "PT" ? ipow(n + 1, n)
                               : name == "O"  ? binom(2 * n - 1, n)
                                              : [n] {
                                                  std::uint64_t s = 0;
                                                  for (int k = 0; k <= n; ++k) s += binom(n, k) * binom(n, k) * factorial(k);
                                                  return s;
                                                }();
    budget(name + "_" + std::to_string(n), size);
    std::vector<Map> maps;
    for (Map& m : all_maps(n, name == "PT" || name == "IS" ? -1 : 0)) {
      if (name == "S" && !bijective(m)) continue;
      if (name == "IS" && !injective(m)) continue;
      if (name == "O" && !std::is_sorted(m.begin(), m.end())) continue;
      maps.push_back(std::move(m));
    }
    from_tm(TransformationMonoid::from_maps(n, std::move(maps)));
  } else if (name == "B") {
    const int n = param(p, "n");
    require(n >= 1, "n must be positive");
    budget("B_" + std::to_string(n), ipow(2, n * n));
    fam.table = boolean_matrices(n);
  } else if (name == "Mat") {
    const int n = param(p, "n"), q = param(p, "q");
    require(n >= 1 && n <= 2, "Mat supports n in {1, 2}");
    require(q >= 2 && q <= 5, "Mat supports q in {2, 3, 4, 5}");
    fam.table = matrix_monoid(n, q);
  } else if (name == "wreath") {
    const int m = param(p, "m"), n = param(p, "n");
    require(m >= 2 && n >= 1, "wreath needs m >= 2 and n >= 1");
    std::uint64_t size = 0;
    for (int k = 0; k <= n; ++k) size += binom(n, k) * binom(n, k) * factorial(k) * ipow(m, k);
    budget("wreath", size);
    from_tm(wreath(m, n));
  } else if (name == "N" || name == "CN") {
    const int m = param(p, "m"), n = param(p, "n");
    require(m >= 1 && n >= 2, "needs m >= 1 and n >= 2");
    std::uint64_t size = 1;
    for (int l = 1; l < n; ++l) size += name == "N" ? ipow(m, l) : binom(m + l - 1, l);
    budget(name, size);
    fam.table = name == "N" ? free_nilpotent(m, n) : free_commutative_nilpotent(m, n);
  } else if (name == "NC") {
    const int m = param(p, "m");
    require(m >= 1, "m must be positive");
    budget("NC", ipow(2, m));
    fam.table = nc_semigroup(m);
  } else if (name == "partinj") {
    const auto sizes = int_list(p, "sizes");
    require(!sizes.empty(), "sizes must be non-empty");
    std::uint64_t size = 2;
    for (int m : sizes) {
      require(m >= 1 && m < 20, "sizes must lie in 1..19");
      size += ipow(2, m) - 2;
    }
    budget("partinj", size);
    fam.table = partinj_family(sizes);
  } else if (name == "C") {
    const int m = param(p, "m"), n = param(p, "n");
    require(m >= 1 && n >= m, "C needs 1 <= m <= n");
    budget("C", n);
    fam.table = cyclic_semigroup(m, n);
  } else if (name == "F") {
    const int n = param(p, "n");
    require(n >= 0, "n must be nonnegative");
    std::uint64_t size = 0;
    for (int k = 0; k <= n; ++k) size += binom(n, k) * factorial(k);
    budget("F", size);
    fam.table = free_lrb(n).table;
  } else if (name == "L") {
    const int n = param(p, "n");
    require(n >= 2, "L needs n >= 2");
    budget("L", n + 2);
    fam.table = lattice_ln(n);
  } else if (name == "Z" || name == "abelian") {
    const auto factors = name == "Z" ? std::vector<int>{param(p, "n")} : int_list(p, "factors");
    std::uint64_t size = 1;
    for (int f : factors) {
      require(f >= 1, "factors must be positive");
      size *= static_cast<std::uint64_t>(f);
      budget(name, size);
    }
    fam.table = abelian(factors);
  } else if (name == "rectangular") {
    const int m = param(p, "m"), n = param(p, "n");
    require(m >= 1 && n >= 1, "m and n must be positive");
    budget("rectangular", static_cast<std::uint64_t>(m) * n);
    fam.table = rectangular_band(m, n);
  } else if (name == "sign") {
    const int n = param(p, "n");
    require(n >= 1, "n must be positive");
    budget("sign", ipow(3, n));
    fam.table = sign_monoid(n);
  } else if (name == "path" || name == "incidence" || name == "truncated") {
    const Quiver q = name == "truncated" ? (p.contains("quiver") ? Quiver::from_json(p.at("quiver")) : Quiver::loop())
                                         : quiver_param(p);
    const PathKind kind = name == "path" ? PathKind::Path : name == "incidence" ? PathKind::Incidence : PathKind::Truncated;
    if (kind == PathKind::Path && !q.acyclic()) throw Error(Errc::NotAcyclic, "path family needs an acyclic quiver");
    PathSemigroup ps = build_path_semigroup(kind, q, kind == PathKind::Truncated ? param(p, "N") : 0);
    fam.table = ps.table;
    fam.quiver = q;
    fam.paths = std::move(ps);
  } else {
    throw Error(Errc::UnknownFamily, "unknown family '" + name + "'");
  }
  return fam;
}

template <class Field>
DoublyTransitiveResult<Field> doubly_transitive_effdim(std::shared_ptr<const CayleyTable> table,
                                                       const TransformationMonoid& t, const Field& field) {
  if (!t.total()) throw Error(Errc::RuleInapplicable, "not a monoid of total transformations");
  if (table->size() != t.maps.size()) throw Error(Errc::Malformed, "table does not match the transformations");
  const int n = t.points;
  if (n < 2) throw Error(Errc::RuleInapplicable, "fewer than two points");
  bool singular = false;
  for (const auto& m : t.maps) singular = singular || !bijective(m);
  if (!singular) throw Error(Errc::RuleInapplicable, "no singular transformation");
  const std::uint64_t ch = field.characteristic();
  if (ch != 0 && t.units.size() % ch == 0)
    throw Error(Errc::RuleInapplicable, "characteristic divides the order of the unit group");
  // Orbit of (0, 1) on ordered pairs of distinct points.
  std::vector<char> seen(static_cast<std::size_t>(n * n), 0);
  std::vector<std::pair<int, int>> todo{{0, 1}};
  seen[1] = 1;
  for (std::size_t i = 0; i < todo.size(); ++i)
    for (Elem u : t.units) {
      const auto& g = t.maps[u];
      const int a = g[todo[i].first], b = g[todo[i].second];
      if (!seen[a * n + b]) {
        seen[a * n + b] = 1;
        todo.emplace_back(a, b);
      }
    }
  if (todo.size() != static_cast<std::size_t>(n * (n - 1)))
    throw Error(Errc::RuleInapplicable, "unit group is not doubly transitive");
  auto rep = linearize_partial_action(table, field, static_cast<std::size_t>(n), t.maps, ActionSide::Left);
  const auto& chk = verify_in_place(rep);
  if (!chk.is_homomorphism || !chk.is_effective)
    throw Error(Errc::Inconsistent, "natural module failed verification");
  return {n, std::move(rep)};
}

template DoublyTransitiveResult<RationalField> doubly_transitive_effdim<RationalField>(
    std::shared_ptr<const CayleyTable>, const TransformationMonoid&, const RationalField&);
template DoublyTransitiveResult<FiniteField> doubly_transitive_effdim<FiniteField>(
    std::shared_ptr<const CayleyTable>, const TransformationMonoid&, const FiniteField&);

}  // namespace effdim
