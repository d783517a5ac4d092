#include "effdim/nilpotent.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>

namespace effdim {

namespace {

std::vector<Elem> flat(const std::vector<std::vector<Elem>>& t) {
  std::vector<Elem> out;
  for (const auto& row : t) out.insert(out.end(), row.begin(), row.end());
  return out;
}

// Builds a table from keyed elements; `mul` returns the product key or
// nullopt for the zero, which is appended last.
template <class Key>
CayleyTable keyed_table(const std::vector<Key>& keys, const std::function<std::optional<Key>(const Key&, const Key&)>& mul,
                        const std::function<std::string(const Key&)>& name, std::size_t extra_before_zero = 0,
                        const std::vector<std::string>& extra_names = {}) {
  std::map<Key, Elem> index;
  for (Elem i = 0; i < keys.size(); ++i) index[keys[i]] = i;
  const std::size_t n = keys.size() + extra_before_zero + 1;
  const Elem z = static_cast<Elem>(n - 1);
  std::vector<std::vector<Elem>> t(n, std::vector<Elem>(n, z));
  std::vector<std::string> names;
  for (const auto& k : keys) names.push_back(name(k));
  for (const auto& e : extra_names) names.push_back(e);
  names.push_back("z");
  for (Elem a = 0; a < keys.size(); ++a)
    for (Elem b = 0; b < keys.size(); ++b)
      if (auto p = mul(keys[a], keys[b])) t[a][b] = index.at(*p);
  return CayleyTable::trusted(n, flat(t), std::move(names));
}

}  // namespace

CayleyTable free_nilpotent(int m, int n) {
  if (m < 1 || n < 2) throw Error(Errc::IndexOutOfRange, "need m >= 1 and n >= 2");
  std::size_t count = 0, layer = 1;
  for (int l = 1; l < n; ++l) count += (layer *= static_cast<std::size_t>(m));
  if (count > 5000) throw Error(Errc::TooLarge, "free nilpotent semigroup too large");
  using Word = std::vector<int>;
  std::vector<Word> words;
  std::vector<Word> cur = {{}};
  for (int l = 1; l < n; ++l) {
    std::vector<Word> next;
    for (const auto& w : cur)
      for (int a = 0; a < m; ++a) {
        Word v = w;
        v.push_back(a);
        next.push_back(v);
      }
    words.insert(words.end(), next.begin(), next.end());
    cur = std::move(next);
  }
  return keyed_table<Word>(
      words,
      [n](const Word& a, const Word& b) -> std::optional<Word> {
        if (static_cast<int>(a.size() + b.size()) >= n) return std::nullopt;
        Word w = a;
        w.insert(w.end(), b.begin(), b.end());
        return w;
      },
      [](const Word& w) {
        std::string s;
        for (int c : w) s.push_back(static_cast<char>('a' + c));
        return s;
      });
}

CayleyTable free_commutative_nilpotent(int m, int n) {
  if (m < 1 || n < 2) throw Error(Errc::IndexOutOfRange, "need m >= 1 and n >= 2");
  using Mono = std::vector<int>;  // exponents
  std::vector<Mono> monos;
  Mono e(m, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == m) {
      int deg = 0;
      for (int x : e) deg += x;
      if (deg >= 1) monos.push_back(e);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[i] = k;
      rec(i + 1, left - k);
    }
    e[i] = 0;
  };
  rec(0, n - 1);
  if (monos.size() > 5000) throw Error(Errc::TooLarge, "free commutative nilpotent semigroup too large");
  std::stable_sort(monos.begin(), monos.end(), [](const Mono& a, const Mono& b) {
    int da = 0, db = 0;
    for (int x : a) da += x;
    for (int x : b) db += x;
    if (da != db) return da < db;
    return a > b;  // x_0 before x_1 among the variables
  });
  return keyed_table<Mono>(
      monos,
      [n](const Mono& a, const Mono& b) -> std::optional<Mono> {
        Mono c(a.size());
        int deg = 0;
        for (std::size_t i = 0; i < a.size(); ++i) deg += (c[i] = a[i] + b[i]);
        if (deg >= n) return std::nullopt;
        return c;
      },
      [](const Mono& a) {
        std::string s;
        for (std::size_t i = 0; i < a.size(); ++i)
          if (a[i]) s += "x" + std::to_string(i) + (a[i] > 1 ? "^" + std::to_string(a[i]) : "");
        return s;
      });
}

CayleyTable nc_semigroup(int m) {
  if (m < 1 || m > 12) throw Error(Errc::TooLarge, "NC_m limited to m <= 12");
  std::vector<std::uint32_t> sets;
  for (std::uint32_t x = 1; x < (1u << m); ++x) sets.push_back(x);
  return keyed_table<std::uint32_t>(
      sets,
      [](const std::uint32_t& a, const std::uint32_t& b) -> std::optional<std::uint32_t> {
        if (a & b) return std::nullopt;
        return a | b;
      },
      [m](const std::uint32_t& a) {
        std::string s = "{";
        for (int i = 0; i < m; ++i)
          if (a >> i & 1) s += std::to_string(i + 1);
        return s + "}";
      });
}

CayleyTable partinj_family(const std::vector<int>& sizes) {
  if (sizes.empty()) throw Error(Errc::IndexOutOfRange, "need at least one block");
  std::size_t total = 2;
  for (int m : sizes) {
    if (m < 1 || m > 12) throw Error(Errc::TooLarge, "block size out of range");
    total += (std::size_t{1} << m) - 2;
  }
  if (total > 5000) throw Error(Errc::TooLarge, "family member too large");
  using Key = std::pair<int, std::uint32_t>;  // (block, subset); (-1, 0) is w
  std::vector<Key> keys;
  for (int i = 0; i < static_cast<int>(sizes.size()); ++i)
    for (std::uint32_t x = 1; x + 1 < (1u << sizes[i]); ++x) keys.emplace_back(i, x);
  keys.emplace_back(-1, 0);
  return keyed_table<Key>(
      keys,
      [&sizes](const Key& a, const Key& b) -> std::optional<Key> {
        if (a.first < 0 || b.first < 0 || a.first != b.first || (a.second & b.second)) return std::nullopt;
        const std::uint32_t u = a.second | b.second;
        if (u + 1 == (1u << sizes[a.first])) return Key{-1, 0};
        return Key{a.first, u};
      },
      [](const Key& k) {
        if (k.first < 0) return std::string("w");
        return "A" + std::to_string(k.first + 1) + ":" + std::to_string(k.second);
      });
}

CayleyTable cyclic_semigroup(int m, int n) {
  if (m < 1 || m > n) throw Error(Errc::IndexOutOfRange, "need 1 <= m <= n");
  if (n > 100000) throw Error(Errc::TooLarge, "cyclic semigroup too large");
  const int period = n - m + 1;
  // x^k for k > n reduces into [m, n].
  auto reduce = [&](long k) { return k <= n ? k : m + (k - m) % period; };
  std::vector<Elem> t(static_cast<std::size_t>(n) * n);
  std::vector<std::string> names;
  for (int a = 1; a <= n; ++a) {
    names.push_back("x^" + std::to_string(a));
    for (int b = 1; b <= n; ++b) t[(a - 1) * n + (b - 1)] = static_cast<Elem>(reduce(a + b) - 1);
  }
  return CayleyTable::trusted(static_cast<std::size_t>(n), std::move(t), std::move(names));
}

int cornilp_bound(const CayleyTable& s) {
  const auto id = s.identity();
  int best = 0;
  for (Elem a = 0; a < s.size(); ++a) {
    const IndexPeriod ip = index_period(s, a);
    if (ip.period != 1) continue;
    int n = static_cast<int>(ip.index);
    if (n == 1 && id && *id == a) n = 0;
    best = std::max(best, n);
  }
  return best;
}

template <class Field>
nlohmann::json GenericSample<Field>::to_json(const Field& field) const {
  nlohmann::json t = nlohmann::json::array();
  for (const auto& m : tuple) t.push_back(encode_matrix(field, m));
  return {{"field", nlohmann::json(field.spec())}, {"seed", seed},          {"retries_used", retries_used},
          {"below_floor", below_floor},      {"deterministic", deterministic}, {"tuple", t}};
}

namespace {

template <class Field>
Matrix<typename Field::scalar_type> jordan_block(const Field& field, Index n) {
  auto j = zeros(field, n, n);
  for (Index i = 0; i + 1 < n; ++i) j(i, i + 1) = field.one();
  return j;
}

std::uint64_t small_prime(int i) {
  std::uint64_t p = 1;
  for (int found = 0; found <= i;) {
    ++p;
    bool prime = p >= 2;
    for (std::uint64_t d = 2; d * d <= p; ++d)
      if (p % d == 0) prime = false;
    if (prime) ++found;
  }
  return p;
}

}  // namespace

template <class Field>
GenericResult<Field> generic_nilpotent_rep(NilpotentKind kind, int m, int n, const Field& field,
                                           const GenericOptions& opt) {
  using S = typename Field::scalar_type;
  auto s = std::make_shared<const CayleyTable>(kind == NilpotentKind::Free ? free_nilpotent(m, n)
                                                                           : free_commutative_nilpotent(m, n));
  std::vector<Elem> gens;
  for (int i = 0; i < m; ++i) gens.push_back(static_cast<Elem>(i));
  GenericSample<Field> sample;
  sample.seed = opt.seed;
  const auto size = field.size();
  sample.below_floor = size && *size < opt.field_floor;
  const Matrix<S> j = jordan_block(field, n);

  if (kind == NilpotentKind::FreeCommutative && !size) {
    sample.deterministic = true;
    for (int i = 0; i < m; ++i) sample.tuple.push_back(j * field.from_int(static_cast<std::int64_t>(small_prime(i))));
    auto rep = extend_from_generators(s, field, gens, sample.tuple);
    const auto& chk = verify_in_place(rep);
    if (!chk.is_homomorphism || !chk.is_effective) throw Error(Errc::Inconsistent, "prime construction not effective");
    return {std::move(rep), std::move(sample)};
  }

  for (int attempt = 0; attempt < opt.retry_cap; ++attempt) {
    std::mt19937_64 rng(opt.seed + static_cast<std::uint64_t>(attempt) * 0x9E3779B97F4A7C15ull);
    sample.tuple.clear();
    for (int i = 0; i < m; ++i) {
      if (kind == NilpotentKind::Free) {
        Matrix<S> a = zeros(field, n, n);
        for (Index r = 0; r < n; ++r)
          for (Index c = r + 1; c < n; ++c) a(r, c) = field.random_nonzero(rng);
        sample.tuple.push_back(std::move(a));
      } else {
        sample.tuple.push_back(j * field.random_nonzero(rng));
      }
    }
    auto rep = extend_from_generators(s, field, gens, sample.tuple);
    const auto& chk = verify_in_place(rep);
    if (chk.is_homomorphism && chk.is_effective) {
      sample.retries_used = attempt;
      return {std::move(rep), std::move(sample)};
    }
  }
  throw Error(Errc::RetriesExhausted, "no effective sample in " + std::to_string(opt.retry_cap) +
                                          " attempts over a field of size " +
                                          (size ? std::to_string(*size) : std::string("infinite")) +
                                          "; enlarge the field");
}

template <class Field>
NilResult<Field> partinj_effdim(std::shared_ptr<const CayleyTable> sp, const Field& field) {
  const CayleyTable& s = *sp;
  const auto flags = classify_basic(s);
  const auto z = s.zero();
  if (!flags.is_nilpotent || !z) throw Error(Errc::HypothesesFail, "not a nilpotent semigroup with zero");
  const std::size_t n = s.size();
  for (Elem a = 0; a < n; ++a) {
    std::vector<std::int64_t> pre(n, -1);
    for (Elem t = 0; t < n; ++t) {
      if (t == *z) continue;
      const Elem p = s(a, t);
      if (p == *z) continue;
      if (pre[p] >= 0)
        throw Error(Errc::HypothesesFail, "left action is not by partial injections",
                    std::array<std::uint32_t, 3>{a, static_cast<std::uint32_t>(pre[p]), t});
      pre[p] = t;
    }
  }
  std::vector<Elem> killed;
  for (Elem w = 0; w < n; ++w) {
    if (w == *z) continue;
    bool all = true;
    for (Elem a = 0; a < n && all; ++a) all = s(a, w) == *z;
    if (all) killed.push_back(w);
  }
  if (killed.size() != 1)
    throw Error(Errc::HypothesesFail,
                std::to_string(killed.size()) + " nonzero elements w satisfy Sw = {z}; exactly one is required");

  // Points: the nonzero elements in order, then the adjoined identity.
  std::vector<std::int64_t> point(n, -1);
  std::size_t k = 0;
  for (Elem t = 0; t < n; ++t)
    if (t != *z) point[t] = static_cast<std::int64_t>(k++);
  const std::size_t one = k++;
  std::vector<std::vector<int>> maps(n, std::vector<int>(k, -1));
  for (Elem a = 0; a < n; ++a) {
    for (Elem t = 0; t < n; ++t)
      if (t != *z) maps[a][point[t]] = static_cast<int>(point[s(a, t)]);
    maps[a][one] = static_cast<int>(point[a]);
  }
  auto rep = linearize_partial_action(sp, field, k, maps, ActionSide::Left);
  const auto& chk = verify_in_place(rep);
  if (!chk.is_homomorphism || !chk.is_effective) throw Error(Errc::Inconsistent, "partial-injective witness not effective");
  NilResult<Field> r{static_cast<int>(n), std::move(rep), ""};
  r.certificate = "left action by partial injections with unique annihilated element " + s.name(killed.front()) +
                  ": k S^1 (1 - z) has simple socle, so every effective module contains it; dimension |S| = " +
                  std::to_string(n);
  return r;
}

CyclicResult cyclic_effdim(int m, int n) {
  auto s = std::make_shared<const CayleyTable>(cyclic_semigroup(m, n));
  const int period = n - m + 1;
  const auto [p, xi_int] = root_of_unity(static_cast<std::uint64_t>(period));
  const FiniteField field = make_field(p);
  const Gf xi = field.from_int(static_cast<std::int64_t>(xi_int));
  CyclicResult r{0, MatrixRep<FiniteField>(s, field, 0, std::vector<Matrix<Gf>>(s->size(), zeros(field, 0, 0))), ""};
  Matrix<Gf> x;
  if (m == 1 && n == 1) {
    x = zeros(field, 0, 0);
    r.certificate = "trivial semigroup";
  } else if (m == 1) {
    // A cyclic group: (xi) alone is effective.
    x = Matrix<Gf>::Constant(1, 1, xi);
    r.certificate = "cyclic group of order " + std::to_string(n) + ": a primitive root of unity of that order over F_" +
                    std::to_string(p);
  } else if (m == n) {
    x = jordan_block(field, m);
    r.certificate = "nilpotent Jordan block of size " + std::to_string(m) + "; x^" + std::to_string(m) +
                    " = x^" + std::to_string(m + 1) + " != x^" + std::to_string(m - 1) + " forces dimension m";
  } else {
    x = zeros(field, m + 1, m + 1);
    x.topLeftCorner(m, m) = jordan_block(field, m);
    x(m, m) = xi;
    r.certificate = "Jordan block of size " + std::to_string(m) + " plus a root of unity of order " + std::to_string(period) +
                    " over F_" + std::to_string(p) +
                    "; the idempotent splits any effective module into parts of dimension >= m and >= 1";
  }
  auto rep = extend_from_generators(s, field, {0}, {x});
  const auto& chk = verify_in_place(rep);
  if (!chk.is_homomorphism || !chk.is_effective) throw Error(Errc::Inconsistent, "cyclic witness not effective");
  r.value = static_cast<int>(rep.dim());
  r.witness = std::move(rep);
  return r;
}

#define EFFDIM_NIL_INSTANTIATE(F)                                                                                 \
  template GenericResult<F> generic_nilpotent_rep<F>(NilpotentKind, int, int, const F&, const GenericOptions&);  \
  template NilResult<F> partinj_effdim<F>(std::shared_ptr<const CayleyTable>, const F&);                         \
  template struct GenericSample<F>;
EFFDIM_NIL_INSTANTIATE(RationalField)
EFFDIM_NIL_INSTANTIATE(FiniteField)

}  // namespace effdim
