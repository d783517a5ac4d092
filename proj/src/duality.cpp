#include "effdim/duality.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>

#include "effdim/greens.hpp"

namespace effdim {

std::uint32_t CliffordStructure::idempotent_index(Elem e) const {
  auto it = std::lower_bound(idempotents.begin(), idempotents.end(), e);
  if (it == idempotents.end() || *it != e) throw Error(Errc::IndexOutOfRange, "not an idempotent");
  return static_cast<std::uint32_t>(it - idempotents.begin());
}

namespace {

struct GroupCoordinates {
  std::vector<std::uint64_t> factors;
  std::vector<std::vector<std::uint64_t>> coords;  // by position in the sub-table
};

// Invariant-factor coordinates of a finite abelian group given by its table.
GroupCoordinates abelian_coordinates(const CayleyTable& g) {
  const std::size_t n = g.size();
  const auto gens = greedy_generators(g, false);
  const std::size_t r = gens.size();
  const Elem e = *g.identity();

  std::vector<std::optional<std::vector<long>>> x(n);
  x[e] = std::vector<long>(r, 0);
  std::deque<Elem> queue{e};
  while (!queue.empty()) {
    const Elem a = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < r; ++i) {
      const Elem b = g(a, gens[i]);
      if (x[b]) continue;
      x[b] = *x[a];
      (*x[b])[i] += 1;
      queue.push_back(b);
    }
  }
  // Spanning-tree relations x(a) + e_i - x(a g_i) generate the kernel of
  // Z^r -> G.
  Matrix<BigInt> rel(static_cast<Index>(n * r), static_cast<Index>(r));
  for (Elem a = 0; a < n; ++a)
    for (std::size_t i = 0; i < r; ++i) {
      const Elem b = g(a, gens[i]);
      for (std::size_t t = 0; t < r; ++t)
        rel(static_cast<Index>(a * r + i), static_cast<Index>(t)) =
            BigInt((*x[a])[t] + (t == i ? 1 : 0) - (*x[b])[t]);
    }
  const SmithDecomposition snf = smith_decomposition(rel);
  GroupCoordinates out;
  std::vector<std::size_t> kept;
  for (std::size_t t = 0; t < r; ++t) {
    const BigInt& d = snf.D(static_cast<Index>(t), static_cast<Index>(t));
    if (d.is_zero()) throw Error(Errc::Inconsistent, "group relation lattice is not of full rank");
    if (d == BigInt(1)) continue;
    kept.push_back(t);
    out.factors.push_back(static_cast<std::uint64_t>(d.to_long()));
  }
  out.coords.assign(n, std::vector<std::uint64_t>(kept.size()));
  for (Elem a = 0; a < n; ++a)
    for (std::size_t k = 0; k < kept.size(); ++k) {
      BigInt y(0);
      for (std::size_t t = 0; t < r; ++t)
        y += BigInt((*x[a])[t]) * snf.V(static_cast<Index>(t), static_cast<Index>(kept[k]));
      out.coords[a][k] = static_cast<std::uint64_t>(floor_mod(y, BigInt(static_cast<long>(out.factors[k]))).to_long());
    }
  return out;
}

}  // namespace

CliffordStructure clifford_structure(const CayleyTable& m) {
  const auto flags = classify_basic(m);
  if (!flags.is_monoid || !flags.is_commutative || !flags.is_inverse)
    throw Error(Errc::NotCommutativeInverse, "input is not a commutative inverse monoid");
  const std::size_t n = m.size();
  CliffordStructure c;
  c.idempotents = idempotents(m);
  const std::size_t E = c.idempotents.size();
  c.support.assign(n, 0);
  c.groups.assign(E, {});
  for (Elem s = 0; s < n; ++s) {
    Elem p = s;
    while (!m.is_idempotent(p)) p = m(p, s);
    // In a Clifford monoid s lies in the group of its idempotent power.
    c.support[s] = c.idempotent_index(p);
    c.groups[c.support[s]].push_back(s);
  }
  c.factors.assign(E, {});
  c.coords.assign(n, {});
  c.basis.assign(E, {});
  for (std::size_t i = 0; i < E; ++i) {
    const SubSemigroup sub = restrict_to(m, c.groups[i]);
    const GroupCoordinates gc = abelian_coordinates(sub.table);
    c.factors[i] = gc.factors;
    for (std::size_t a = 0; a < sub.elems.size(); ++a) c.coords[sub.elems[a]] = gc.coords[a];
    for (std::size_t t = 0; t < gc.factors.size(); ++t)
      for (std::size_t a = 0; a < sub.elems.size(); ++a) {
        bool unit = true;
        for (std::size_t u = 0; u < gc.factors.size(); ++u) unit = unit && gc.coords[a][u] == (u == t ? 1u : 0u);
        if (unit) {
          c.basis[i].push_back(sub.elems[a]);
          break;
        }
      }
    for (auto d : gc.factors) c.exponent = std::lcm(c.exponent, d);
  }
  c.leq.assign(E, std::vector<bool>(E, false));
  for (std::size_t i = 0; i < E; ++i)
    for (std::size_t j = 0; j < E; ++j) c.leq[i][j] = m(c.idempotents[i], c.idempotents[j]) == c.idempotents[i];
  c.join.assign(E, std::vector<std::uint32_t>(E, 0));
  for (std::size_t i = 0; i < E; ++i)
    for (std::size_t j = 0; j < E; ++j) {
      Elem meet_of_upper = *m.identity();
      for (std::size_t f = 0; f < E; ++f)
        if (c.leq[i][f] && c.leq[j][f]) meet_of_upper = m(meet_of_upper, c.idempotents[f]);
      c.join[i][j] = c.idempotent_index(meet_of_upper);
    }
  return c;
}

namespace {

CharacterValues character_values(const CayleyTable& m, const CliffordStructure& c, std::uint32_t support,
                                 const std::vector<std::uint64_t>& a) {
  const Elem e = c.idempotents[support];
  CharacterValues v(m.size(), -1);
  for (Elem s = 0; s < m.size(); ++s) {
    if (!c.leq[support][c.support[s]]) continue;
    const Elem g = m(s, e);
    const auto& coord = c.coords[g];
    std::uint64_t total = 0;
    for (std::size_t t = 0; t < a.size(); ++t)
      total = (total + a[t] * coord[t] % c.exponent * (c.exponent / c.factors[support][t])) % c.exponent;
    v[s] = static_cast<std::int64_t>(total);
  }
  return v;
}

}  // namespace

DualMonoid dual_monoid(const CayleyTable& m) { return dual_monoid(m, clifford_structure(m)); }

DualMonoid dual_monoid(const CayleyTable& m, const CliffordStructure& c) {
  DualMonoid d;
  d.exponent = c.exponent;
  d.support_elements = c.idempotents;
  std::map<CharacterValues, Elem> index;
  for (std::uint32_t i = 0; i < c.idempotents.size(); ++i) {
    const auto& f = c.factors[i];
    std::vector<std::uint64_t> a(f.size(), 0);
    for (;;) {
      index[character_values(m, c, i, a)] = static_cast<Elem>(d.elements.size());
      d.values.push_back(character_values(m, c, i, a));
      d.elements.push_back({i, a});
      std::size_t t = f.size();
      bool carry = true;
      while (carry && t > 0) {
        --t;
        if (++a[t] < f[t]) carry = false;
        else a[t] = 0;
      }
      if (carry) break;
    }
  }
  const std::size_t n = d.elements.size();
  if (n != m.size()) throw Error(Errc::Inconsistent, "dual monoid has the wrong order");
  std::vector<Elem> data(n * n);
  std::vector<std::string> names;
  for (Elem x = 0; x < n; ++x) {
    std::string name = "chi" + std::to_string(c.idempotents[d.elements[x].support]);
    if (!d.elements[x].character.empty()) {
      name += "(";
      for (std::size_t t = 0; t < d.elements[x].character.size(); ++t)
        name += (t ? "," : "") + std::to_string(d.elements[x].character[t]);
      name += ")";
    }
    names.push_back(name);
    for (Elem y = 0; y < n; ++y) {
      CharacterValues prod(m.size());
      for (Elem s = 0; s < m.size(); ++s) {
        const auto u = d.values[x][s], v = d.values[y][s];
        prod[s] = (u < 0 || v < 0) ? -1 : static_cast<std::int64_t>((u + v) % static_cast<std::int64_t>(c.exponent));
      }
      auto it = index.find(prod);
      if (it == index.end()) throw Error(Errc::Inconsistent, "product of characters is not a character");
      data[x * n + y] = it->second;
    }
  }
  d.table = CayleyTable::trusted(n, std::move(data), std::move(names));
  return d;
}

nlohmann::json DualMonoid::sidecar() const {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& e : elements) out.push_back({{"support", support_elements[e.support]}, {"character", e.character}});
  return {{"exponent", exponent}, {"elements", out}};
}

MinGenerators min_generators(const CayleyTable& m) {
  const std::size_t n = m.size();
  const std::optional<Elem> one = m.identity();
  std::vector<Elem> all;
  for (Elem x = 0; x < n; ++x) all.push_back(x);
  std::vector<Elem> required;
  for (Elem x = 0; x < n; ++x) {
    if (one && x == *one) continue;
    std::vector<Elem> rest;
    for (Elem y = 0; y < n; ++y)
      if (y != x) rest.push_back(y);
    auto c = generated_closure(m, rest, true);
    if (!std::binary_search(c.begin(), c.end(), x)) required.push_back(x);
  }
  auto base = generated_closure(m, required, true);
  std::vector<Elem> candidates;
  for (Elem x = 0; x < n; ++x)
    if (!(one && x == *one) && !std::binary_search(base.begin(), base.end(), x)) candidates.push_back(x);

  if (base.size() == n) return {static_cast<int>(required.size()), required};
  std::vector<Elem> chosen;
  std::function<bool(std::size_t, std::size_t, const std::vector<Elem>&)> dfs =
      [&](std::size_t start, std::size_t remaining, const std::vector<Elem>& closure) -> bool {
    if (remaining == 0) return closure.size() == n;
    for (std::size_t i = start; i < candidates.size(); ++i) {
      const Elem x = candidates[i];
      if (std::binary_search(closure.begin(), closure.end(), x)) continue;
      chosen.push_back(x);
      auto gens = required;
      gens.insert(gens.end(), chosen.begin(), chosen.end());
      if (dfs(i + 1, remaining - 1, generated_closure(m, gens, true))) return true;
      chosen.pop_back();
    }
    return false;
  };
  for (std::size_t k = 1; k <= candidates.size(); ++k) {
    chosen.clear();
    if (dfs(0, k, base)) {
      auto gens = required;
      gens.insert(gens.end(), chosen.begin(), chosen.end());
      std::sort(gens.begin(), gens.end());
      return {static_cast<int>(gens.size()), gens};
    }
  }
  throw Error(Errc::Inconsistent, "no generating set found");
}

std::string rule_name(CommInverseRule r) {
  switch (r) {
    case CommInverseRule::Lattice: return "lattice-join-irreducibles";
    case CommInverseRule::AbelianGroup: return "abelian-invariant-factors";
    case CommInverseRule::DualMonoid: return "dual-monoid-generators";
  }
  return "?";
}

namespace {

std::vector<Elem> join_irreducibles(const CayleyTable& l) {
  // Order e <= f iff ef = e; j is join-irreducible iff it has exactly one
  // lower cover (the bottom has none).
  const std::size_t n = l.size();
  std::vector<Elem> out;
  for (Elem j = 0; j < n; ++j) {
    std::vector<Elem> below;
    for (Elem x = 0; x < n; ++x)
      if (x != j && l(x, j) == x) below.push_back(x);
    std::size_t covers = 0;
    for (Elem x : below) {
      bool cover = true;
      for (Elem y : below)
        if (y != x && l(x, y) == x) cover = false;
      if (cover) ++covers;
    }
    if (covers == 1) out.push_back(j);
  }
  return out;
}

}  // namespace

int count_join_irreducibles(const CayleyTable& lattice) {
  return static_cast<int>(join_irreducibles(lattice).size());
}

CommInverseResult effdim_comm_inverse(const CayleyTable& m) {
  const CliffordStructure c = clifford_structure(m);
  CommInverseResult r;
  r.exponent = c.exponent;
  for (const auto& g : c.groups) r.group_orders.push_back(g.size());
  const auto flags = classify_basic(m);
  if (flags.is_band) {
    r.rule = CommInverseRule::Lattice;
    const auto irr = join_irreducibles(m);
    r.value = static_cast<int>(irr.size());
    for (Elem j : irr) {
      CharacterValues v(m.size(), -1);
      for (Elem s = 0; s < m.size(); ++s)
        if (m(s, j) == j) v[s] = 0;
      r.characters.push_back(std::move(v));
    }
    r.certificate = "lattice with " + std::to_string(r.value) + " join-irreducible elements";
    return r;
  }
  if (flags.is_group) {
    r.rule = CommInverseRule::AbelianGroup;
    const auto& f = c.factors[0];
    r.value = static_cast<int>(f.size());
    for (std::size_t t = 0; t < f.size(); ++t) {
      std::vector<std::uint64_t> a(f.size(), 0);
      a[t] = 1;
      r.characters.push_back(character_values(m, c, 0, a));
    }
    r.certificate = "abelian group with invariant factors (";
    for (std::size_t t = 0; t < f.size(); ++t) r.certificate += (t ? "," : "") + std::to_string(f[t]);
    r.certificate += ")";
    return r;
  }
  r.rule = CommInverseRule::DualMonoid;
  const DualMonoid d = dual_monoid(m, c);
  const MinGenerators g = min_generators(d.table);
  r.value = g.count;
  for (Elem x : g.generators) r.characters.push_back(d.values[x]);
  r.certificate = "dual monoid of order " + std::to_string(d.table.size()) + " needs " + std::to_string(g.count) +
                  " generators";
  return r;
}

std::optional<Gf> element_of_order(const FiniteField& f, std::uint64_t n) {
  const std::uint64_t q = *f.size();
  if (n == 0 || (q - 1) % n != 0) return std::nullopt;
  std::vector<std::uint64_t> primes;
  std::uint64_t t = n;
  for (std::uint64_t d = 2; d * d <= t; ++d)
    if (t % d == 0) {
      primes.push_back(d);
      while (t % d == 0) t /= d;
    }
  if (t > 1) primes.push_back(t);
  const GaloisField& g = f.gf();
  const std::uint64_t one = g.from_int(1);
  for (std::uint64_t x = 1; x < q; ++x) {
    if (g.pow(x, n) != one) continue;
    bool exact = true;
    for (auto r : primes) exact = exact && g.pow(x, n / r) != one;
    if (exact) return f.element(x);
  }
  return std::nullopt;
}

template <class Field>
MatrixRep<Field> character_witness(std::shared_ptr<const CayleyTable> m, const std::vector<CharacterValues>& chars,
                                   const Field& field, const typename Field::scalar_type& xi) {
  using S = typename Field::scalar_type;
  const Index d = static_cast<Index>(chars.size());
  std::int64_t top = 0;
  for (const auto& c : chars)
    for (auto v : c) top = std::max(top, v);
  std::vector<S> powers{field.one()};
  for (std::int64_t k = 1; k <= top; ++k) powers.push_back(powers.back() * xi);
  std::vector<Matrix<S>> imgs;
  for (Elem s = 0; s < m->size(); ++s) {
    auto mat = zeros(field, d, d);
    for (Index i = 0; i < d; ++i) {
      const auto v = chars[static_cast<std::size_t>(i)][s];
      if (v >= 0) mat(i, i) = powers[static_cast<std::size_t>(v)];
    }
    imgs.push_back(std::move(mat));
  }
  MatrixRep<Field> rep(std::move(m), field, d, std::move(imgs));
  verify_in_place(rep);
  return rep;
}

AnyRep comm_inverse_witness(std::shared_ptr<const CayleyTable> m, const CommInverseResult& r) {
  if (r.exponent <= 2) {
    RationalField q;
    return character_witness(std::move(m), r.characters, q, r.exponent == 2 ? Rational(-1) : Rational(1));
  }
  const auto [p, xi] = root_of_unity(r.exponent);
  const FiniteField f = make_field(p);
  return character_witness(std::move(m), r.characters, f, f.element(xi));
}

template MatrixRep<RationalField> character_witness<RationalField>(std::shared_ptr<const CayleyTable>,
                                                                   const std::vector<CharacterValues>&,
                                                                   const RationalField&, const Rational&);
template MatrixRep<FiniteField> character_witness<FiniteField>(std::shared_ptr<const CayleyTable>,
                                                               const std::vector<CharacterValues>&,
                                                               const FiniteField&, const Gf&);

}  // namespace effdim
