#include "effdim/semigroup.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <deque>
#include <functional>

namespace effdim {

CayleyTable CayleyTable::validate(const std::vector<std::vector<std::int64_t>>& rows,
                                  std::vector<std::string> names) {
  const std::size_t n = rows.size();
  if (n == 0) throw Error(Errc::IndexOutOfRange, "empty table");
  if (!names.empty() && names.size() != n) throw Error(Errc::IndexOutOfRange, "names count differs from n");
  std::vector<Elem> data(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    if (rows[a].size() != n)
      throw Error(Errc::IndexOutOfRange, "row " + std::to_string(a) + " has " + std::to_string(rows[a].size()) +
                                             " entries, expected " + std::to_string(n));
    for (std::size_t b = 0; b < n; ++b) {
      const std::int64_t v = rows[a][b];
      if (v < 0 || static_cast<std::size_t>(v) >= n)
        throw Error(Errc::IndexOutOfRange,
                    "entry (" + std::to_string(a) + "," + std::to_string(b) + ") = " + std::to_string(v));
      data[a * n + b] = static_cast<Elem>(v);
    }
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const Elem ab = data[a * n + b];
      for (std::size_t c = 0; c < n; ++c)
        if (data[ab * n + c] != data[a * n + data[b * n + c]])
          throw Error(Errc::NotAssociative,
                      "(" + std::to_string(a) + "*" + std::to_string(b) + ")*" + std::to_string(c) +
                          " != " + std::to_string(a) + "*(" + std::to_string(b) + "*" + std::to_string(c) + ")",
                      std::array<Elem, 3>{static_cast<Elem>(a), static_cast<Elem>(b), static_cast<Elem>(c)});
    }
  return trusted(n, std::move(data), std::move(names));
}

CayleyTable CayleyTable::trusted(std::size_t n, std::vector<Elem> data, std::vector<std::string> names) {
  CayleyTable t;
  t.n_ = n;
  t.data_ = std::move(data);
  t.names_ = std::move(names);
  t.detect_units();
  return t;
}

void CayleyTable::detect_units() {
  identity_.reset();
  zero_.reset();
  for (Elem e = 0; e < n_ && !identity_; ++e) {
    bool ok = true;
    for (Elem s = 0; s < n_ && ok; ++s) ok = mul(e, s) == s && mul(s, e) == s;
    if (ok) identity_ = e;
  }
  for (Elem z = 0; z < n_ && !zero_; ++z) {
    bool ok = true;
    for (Elem s = 0; s < n_ && ok; ++s) ok = mul(z, s) == z && mul(s, z) == z;
    if (ok) zero_ = z;
  }
}

namespace {

Adjoined adjoin(const CayleyTable& s, bool identity) {
  const std::size_t n = s.size();
  std::vector<Elem> data((n + 1) * (n + 1));
  const Elem e = static_cast<Elem>(n);
  for (Elem a = 0; a <= n; ++a)
    for (Elem b = 0; b <= n; ++b) {
      Elem v;
      if (a < n && b < n) v = s(a, b);
      else if (identity) v = a == e ? b : a;
      else v = e;
      data[a * (n + 1) + b] = v;
    }
  std::vector<std::string> names;
  if (!s.names().empty()) {
    names = s.names();
    names.push_back(identity ? "1" : "z");
  }
  return {CayleyTable::trusted(n + 1, std::move(data), std::move(names)), e, true};
}

}  // namespace

Adjoined adjoin_identity(const CayleyTable& s) { return adjoin(s, true); }
Adjoined adjoin_zero(const CayleyTable& s) { return adjoin(s, false); }

Adjoined monoidal(const CayleyTable& s) {
  if (s.identity()) return {s, *s.identity(), false};
  return adjoin_identity(s);
}

CayleyTable opposite(const CayleyTable& s) {
  const std::size_t n = s.size();
  std::vector<Elem> data(n * n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) data[a * n + b] = s(b, a);
  return CayleyTable::trusted(n, std::move(data), s.names());
}

Variants adjoin_variants(const CayleyTable& s) { return {adjoin_identity(s), monoidal(s), opposite(s)}; }

SubSemigroup restrict_to(const CayleyTable& s, const std::vector<Elem>& subset) {
  std::vector<Elem> elems = subset;
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  std::vector<std::int64_t> pos(s.size(), -1);
  for (std::size_t i = 0; i < elems.size(); ++i) pos[elems[i]] = static_cast<std::int64_t>(i);
  const std::size_t m = elems.size();
  std::vector<Elem> data(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const std::int64_t p = pos[s(elems[i], elems[j])];
      if (p < 0) throw Error(Errc::NotClosed, "subset is not closed under multiplication");
      data[i * m + j] = static_cast<Elem>(p);
    }
  std::vector<std::string> names;
  if (!s.names().empty())
    for (Elem e : elems) names.push_back(s.names()[e]);
  return {CayleyTable::trusted(m, std::move(data), std::move(names)), std::move(elems)};
}

IndexPeriod index_period(const CayleyTable& s, Elem a) {
  std::vector<std::int64_t> seen(s.size(), -1);
  Elem x = a;
  for (std::uint32_t k = 1;; ++k) {
    if (seen[x] >= 0) return {static_cast<std::uint32_t>(seen[x]), k - static_cast<std::uint32_t>(seen[x])};
    seen[x] = k;
    x = s(x, a);
  }
}

std::vector<Elem> idempotents(const CayleyTable& s) {
  std::vector<Elem> out;
  for (Elem e = 0; e < s.size(); ++e)
    if (s.is_idempotent(e)) out.push_back(e);
  return out;
}

BasicFlags classify_basic(const CayleyTable& s) {
  const std::size_t n = s.size();
  BasicFlags f;
  f.is_monoid = s.is_monoid();
  f.has_zero = s.zero().has_value();
  f.is_commutative = true;
  f.is_band = true;
  for (Elem a = 0; a < n; ++a) {
    f.is_band = f.is_band && s.is_idempotent(a);
    for (Elem b = a + 1; b < n && f.is_commutative; ++b) f.is_commutative = s(a, b) == s(b, a);
  }
  if (f.is_monoid) {
    const Elem e = *s.identity();
    f.is_group = true;
    for (Elem a = 0; a < n && f.is_group; ++a) {
      bool unit = false;
      for (Elem b = 0; b < n && !unit; ++b) unit = s(a, b) == e;
      f.is_group = unit;
    }
  }
  f.is_left_regular_band = f.is_band;
  for (Elem a = 0; a < n && f.is_left_regular_band; ++a)
    for (Elem b = 0; b < n && f.is_left_regular_band; ++b) f.is_left_regular_band = s(s(a, b), a) == s(a, b);

  // Inverse semigroup = regular with commuting idempotents.
  bool regular = true;
  for (Elem a = 0; a < n && regular; ++a) {
    bool has = false;
    for (Elem x = 0; x < n && !has; ++x) has = s(s(a, x), a) == a;
    regular = has;
  }
  bool commuting = true;
  const auto E = idempotents(s);
  for (std::size_t i = 0; i < E.size() && commuting; ++i)
    for (std::size_t j = i + 1; j < E.size() && commuting; ++j) commuting = s(E[i], E[j]) == s(E[j], E[i]);
  f.is_inverse = regular && commuting;

  if (f.has_zero) {
    std::vector<bool> cur(n, true);
    std::size_t count = n;
    for (std::uint32_t k = 1;; ++k) {
      if (count == 1) {
        f.is_nilpotent = true;
        f.nilpotency_index = k;
        break;
      }
      std::vector<bool> next(n, false);
      std::size_t next_count = 0;
      for (Elem a = 0; a < n; ++a) {
        if (!cur[a]) continue;
        for (Elem b = 0; b < n; ++b) {
          const Elem c = s(a, b);
          if (!next[c]) {
            next[c] = true;
            ++next_count;
          }
        }
      }
      if (next_count == count) break;  // S^{k+1} = S^k with more than one element
      cur = std::move(next);
      count = next_count;
    }
  }
  return f;
}

std::vector<Elem> generated_closure(const CayleyTable& s, const std::vector<Elem>& X, bool monoid) {
  std::vector<bool> in(s.size(), false);
  std::deque<Elem> queue;
  auto push = [&](Elem x) {
    if (!in[x]) {
      in[x] = true;
      queue.push_back(x);
    }
  };
  for (Elem x : X) push(x);
  if (monoid && s.identity()) push(*s.identity());
  while (!queue.empty()) {
    const Elem y = queue.front();
    queue.pop_front();
    for (Elem x : X) push(s(y, x));
  }
  std::vector<Elem> out;
  for (Elem x = 0; x < s.size(); ++x)
    if (in[x]) out.push_back(x);
  return out;
}

std::vector<Elem> greedy_generators(const CayleyTable& s, bool monoid) {
  std::vector<Elem> gens;
  std::vector<Elem> closure = monoid && s.identity() ? std::vector<Elem>{*s.identity()} : std::vector<Elem>{};
  while (closure.size() < s.size()) {
    std::vector<bool> in(s.size(), false);
    for (Elem x : closure) in[x] = true;
    Elem best = 0;
    std::size_t best_size = 0;
    std::vector<Elem> best_closure;
    for (Elem x = 0; x < s.size(); ++x) {
      if (in[x]) continue;
      auto trial = gens;
      trial.push_back(x);
      auto c = generated_closure(s, trial, monoid);
      if (c.size() > best_size) {
        best = x;
        best_size = c.size();
        best_closure = std::move(c);
      }
    }
    gens.push_back(best);
    closure = std::move(best_closure);
  }
  return gens;
}

namespace {

// Extends `phi` (partial map a -> b) along right multiplication by the
// assigned generators; false on an inconsistency or a collision.
bool propagate(const CayleyTable& a, const CayleyTable& b, const std::vector<Elem>& gens, std::size_t assigned,
               std::vector<std::int64_t>& phi, std::vector<std::int64_t>& inv) {
  std::deque<Elem> queue;
  for (Elem x = 0; x < a.size(); ++x)
    if (phi[x] >= 0) queue.push_back(x);
  while (!queue.empty()) {
    const Elem x = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < assigned; ++i) {
      const Elem g = gens[i];
      const Elem y = a(x, g);
      const Elem img = b(static_cast<Elem>(phi[x]), static_cast<Elem>(phi[g]));
      if (phi[y] < 0) {
        if (inv[img] >= 0) return false;
        phi[y] = img;
        inv[img] = y;
        queue.push_back(y);
      } else if (phi[y] != img) {
        return false;
      }
    }
  }
  return true;
}

bool iso_search(const CayleyTable& a, const CayleyTable& b, const std::vector<Elem>& gens, std::size_t next,
                const std::vector<std::int64_t>& phi, const std::vector<std::int64_t>& inv,
                const std::vector<IndexPeriod>& ipa, const std::vector<IndexPeriod>& ipb,
                std::vector<Elem>& out) {
  if (next == gens.size()) {
    for (Elem x = 0; x < a.size(); ++x)
      if (phi[x] < 0) return false;
    out.assign(a.size(), 0);
    for (Elem x = 0; x < a.size(); ++x) out[x] = static_cast<Elem>(phi[x]);
    return true;
  }
  const Elem g = gens[next];
  std::vector<Elem> candidates;
  if (phi[g] >= 0) candidates.push_back(static_cast<Elem>(phi[g]));
  else
    for (Elem h = 0; h < b.size(); ++h)
      if (inv[h] < 0 && ipa[g] == ipb[h]) candidates.push_back(h);
  for (Elem h : candidates) {
    auto phi2 = phi;
    auto inv2 = inv;
    if (phi2[g] < 0) {
      phi2[g] = h;
      inv2[h] = g;
    }
    if (!propagate(a, b, gens, next + 1, phi2, inv2)) continue;
    if (iso_search(a, b, gens, next + 1, phi2, inv2, ipa, ipb, out)) return true;
  }
  return false;
}

}  // namespace

std::optional<std::vector<Elem>> find_isomorphism(const CayleyTable& a, const CayleyTable& b) {
  if (a.size() != b.size()) return std::nullopt;
  const std::size_t n = a.size();
  std::vector<IndexPeriod> ipa(n), ipb(n);
  for (Elem x = 0; x < n; ++x) {
    ipa[x] = index_period(a, x);
    ipb[x] = index_period(b, x);
  }
  {
    auto key = [](const IndexPeriod& p) { return std::make_pair(p.index, p.period); };
    std::vector<std::pair<std::uint32_t, std::uint32_t>> ka, kb;
    for (Elem x = 0; x < n; ++x) {
      ka.push_back(key(ipa[x]));
      kb.push_back(key(ipb[x]));
    }
    std::sort(ka.begin(), ka.end());
    std::sort(kb.begin(), kb.end());
    if (ka != kb) return std::nullopt;
  }
  const auto gens = greedy_generators(a, false);
  std::vector<std::int64_t> phi(n, -1), inv(n, -1);
  std::vector<Elem> out;
  if (iso_search(a, b, gens, 0, phi, inv, ipa, ipb, out)) return out;
  return std::nullopt;
}

std::string table_bytes(const CayleyTable& s) {
  std::string bytes;
  auto put = [&](std::uint32_t v) {
    for (int i = 0; i < 4; ++i) bytes.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  };
  put(static_cast<std::uint32_t>(s.size()));
  for (Elem v : s.data()) put(v);
  return bytes;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 15]);
  }
  return out;
}

std::string table_hash(const CayleyTable& s) { return sha256_hex(table_bytes(s)); }

}  // namespace effdim
