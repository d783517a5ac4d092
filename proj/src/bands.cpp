#include "effdim/bands.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "effdim/duality.hpp"

namespace effdim {

bool is_left_regular_band(const CayleyTable& m) {
  for (Elem x = 0; x < m.size(); ++x) {
    if (m(x, x) != x) return false;
    for (Elem y = 0; y < m.size(); ++y)
      if (m(m(x, y), x) != m(x, y)) return false;
  }
  return true;
}

namespace {

std::vector<Elem> flat(const std::vector<std::vector<Elem>>& t) {
  std::vector<Elem> out;
  out.reserve(t.size() * t.size());
  for (const auto& row : t) out.insert(out.end(), row.begin(), row.end());
  return out;
}

void require_lrb_monoid(const CayleyTable& m) {
  if (!m.identity()) throw Error(Errc::NotLRB, "not a monoid");
  for (Elem x = 0; x < m.size(); ++x) {
    if (m(x, x) != x) throw Error(Errc::NotLRB, "element is not idempotent", std::array<std::uint32_t, 3>{x, x, x});
    for (Elem y = 0; y < m.size(); ++y)
      if (m(m(x, y), x) != m(x, y)) throw Error(Errc::NotLRB, "xyx != xy", std::array<std::uint32_t, 3>{x, y, x});
  }
}

}  // namespace

SupportLattice support_lattice(const CayleyTable& m) {
  require_lrb_monoid(m);
  const std::size_t n = m.size();
  std::map<std::vector<bool>, Elem> ideals;
  SupportLattice out;
  out.sigma.resize(n);
  for (Elem a = 0; a < n; ++a) {
    std::vector<bool> ideal(n, false);
    for (Elem x = 0; x < n; ++x) ideal[m(x, a)] = true;
    auto [it, fresh] = ideals.emplace(std::move(ideal), static_cast<Elem>(out.representative.size()));
    if (fresh) out.representative.push_back(a);
    out.sigma[a] = it->second;
  }
  const std::size_t k = out.representative.size();
  std::vector<std::vector<Elem>> t(k, std::vector<Elem>(k));
  for (Elem u = 0; u < k; ++u)
    for (Elem v = 0; v < k; ++v) t[u][v] = out.sigma[m(out.representative[u], out.representative[v])];
  out.lattice = CayleyTable::trusted(k, flat(t));
  return out;
}

BoundResult lrb_lower_bound(const CayleyTable& m) {
  const SupportLattice sl = support_lattice(m);
  const int lattice_value = effdim_comm_inverse(sl.lattice).value;
  const bool has_zero = m.zero().has_value();
  BoundResult r{lattice_value + (has_zero ? 0 : 1), ""};
  r.certificate = "support lattice of size " + std::to_string(sl.lattice.size()) + " has effective dimension " +
                  std::to_string(lattice_value) +
                  (has_zero ? "; the monoid has a zero"
                            : "; no zero, so the trivial module is also a composition factor (+1)");
  return r;
}

SignVector SignVector::parse(const std::string& text) {
  SignVector v;
  for (char c : text) {
    if (c == '0') v.coords.push_back(0);
    else if (c == '+') v.coords.push_back(1);
    else if (c == '-') v.coords.push_back(-1);
    else throw Error(Errc::Malformed, std::string("bad sign character '") + c + "'");
  }
  return v;
}

std::string SignVector::str() const {
  std::string s;
  for (auto c : coords) s.push_back(c == 0 ? '0' : (c > 0 ? '+' : '-'));
  return s;
}

SignVector SignVector::operator*(const SignVector& o) const {
  if (coords.size() != o.coords.size()) throw Error(Errc::Malformed, "sign vectors of different lengths");
  SignVector r = *this;
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (r.coords[i] == 0) r.coords[i] = o.coords[i];
  return r;
}

SignVector sign_of_index(int n, Elem a) {
  SignVector v;
  for (int i = 0; i < n; ++i, a /= 3) v.coords.push_back(a % 3 == 0 ? 0 : (a % 3 == 1 ? 1 : -1));
  return v;
}

namespace {

Elem index_of_sign(const SignVector& v) {
  Elem a = 0;
  for (auto it = v.coords.rbegin(); it != v.coords.rend(); ++it) a = a * 3 + (*it == 0 ? 0 : (*it > 0 ? 1 : 2));
  return a;
}

// Right partial action of a face on points 0..n.
std::vector<int> sign_action(const SignVector& v) {
  std::vector<int> img(v.coords.size() + 1);
  img[0] = 0;
  for (std::size_t i = 0; i < v.coords.size(); ++i)
    img[i + 1] = v.coords[i] == 0 ? static_cast<int>(i + 1) : (v.coords[i] > 0 ? 0 : -1);
  return img;
}

}  // namespace

CayleyTable sign_monoid(int n) {
  if (n < 0 || n > 8) throw Error(Errc::TooLarge, "sign monoid exponent out of range");
  std::size_t size = 1;
  for (int i = 0; i < n; ++i) size *= 3;
  std::vector<SignVector> elems;
  for (Elem a = 0; a < size; ++a) elems.push_back(sign_of_index(n, a));
  std::vector<std::vector<Elem>> t(size, std::vector<Elem>(size));
  std::vector<std::string> names;
  for (Elem a = 0; a < size; ++a) {
    names.push_back(elems[a].str());
    for (Elem b = 0; b < size; ++b) t[a][b] = index_of_sign(elems[a] * elems[b]);
  }
  return CayleyTable::trusted(size, flat(t), std::move(names));
}

template <class Field>
MatrixRep<Field> sign_power_rep(int n, const Field& field) {
  if (n < 1) throw Error(Errc::IndexOutOfRange, "n must be positive");
  auto s = std::make_shared<const CayleyTable>(sign_monoid(n));
  std::vector<std::vector<int>> maps;
  for (Elem a = 0; a < s->size(); ++a) maps.push_back(sign_action(sign_of_index(n, a)));
  auto rep = linearize_partial_action(s, field, static_cast<std::size_t>(n) + 1, maps, ActionSide::Right);
  verify_in_place(rep);
  return rep;
}

std::vector<SignVector> parse_faces(const std::string& text) {
  std::vector<SignVector> faces;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line.erase(std::remove_if(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); }), line.end());
    if (line.empty()) continue;
    faces.push_back(SignVector::parse(line));
    if (faces.back().coords.size() != faces.front().coords.size())
      throw Error(Errc::Malformed, "faces have different lengths");
  }
  if (faces.empty()) throw Error(Errc::Malformed, "no faces");
  return faces;
}

CayleyTable face_semigroup(const std::vector<SignVector>& faces) {
  if (faces.empty()) throw Error(Errc::Malformed, "no faces");
  std::vector<SignVector> sorted = faces;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  const std::size_t len = sorted.front().coords.size();
  std::map<SignVector, Elem> index;
  for (Elem a = 0; a < sorted.size(); ++a) {
    if (sorted[a].coords.size() != len) throw Error(Errc::Malformed, "faces have different lengths");
    index[sorted[a]] = a;
  }
  if (!index.count(SignVector{std::vector<std::int8_t>(len, 0)}))
    throw Error(Errc::NotClosed, "the all-zero face is missing");
  std::vector<std::vector<Elem>> t(sorted.size(), std::vector<Elem>(sorted.size()));
  std::vector<std::string> names;
  for (Elem a = 0; a < sorted.size(); ++a) {
    names.push_back(sorted[a].str());
    for (Elem b = 0; b < sorted.size(); ++b) {
      auto it = index.find(sorted[a] * sorted[b]);
      if (it == index.end())
        throw Error(Errc::NotClosed, "product " + sorted[a].str() + " * " + sorted[b].str() + " is not a face");
      t[a][b] = it->second;
    }
  }
  return CayleyTable::trusted(sorted.size(), flat(t), std::move(names));
}

template <class Field>
BandResult<Field> hyperplane_effdim(const std::vector<SignVector>& faces, const Field& field) {
  auto s = std::make_shared<const CayleyTable>(face_semigroup(faces));
  const int h = static_cast<int>(faces.front().coords.size());
  std::vector<std::vector<int>> maps;
  for (Elem a = 0; a < s->size(); ++a) maps.push_back(sign_action(SignVector::parse(s->name(a))));
  auto rep = linearize_partial_action(s, field, static_cast<std::size_t>(h) + 1, maps, ActionSide::Right);
  const auto& chk = verify_in_place(rep);
  if (!chk.is_homomorphism || !chk.is_effective) throw Error(Errc::Inconsistent, "sign representation not effective");
  BandResult<Field> r{h + 1, std::move(rep), ""};
  r.certificate = "face semigroup of " + std::to_string(h) +
                  " hyperplanes: sign-sequence module of dimension |H|+1 is effective; the support-lattice bound "
                  "gives |H| join-irreducibles plus the trivial factor";
  return r;
}

FreeLRB free_lrb(int n) {
  if (n < 0 || n > 5) throw Error(Errc::TooLarge, "free left regular band limited to at most 5 generators");
  FreeLRB f;
  std::vector<int> cur;
  std::vector<bool> used(n, false);
  std::function<void()> rec = [&] {
    f.words.push_back(cur);
    for (int a = 0; a < n; ++a)
      if (!used[a]) {
        used[a] = true;
        cur.push_back(a);
        rec();
        cur.pop_back();
        used[a] = false;
      }
  };
  rec();
  std::sort(f.words.begin(), f.words.end(), [](const auto& x, const auto& y) {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  });
  std::map<std::vector<int>, Elem> index;
  for (Elem i = 0; i < f.words.size(); ++i) index[f.words[i]] = i;
  const std::size_t size = f.words.size();
  std::vector<std::vector<Elem>> t(size, std::vector<Elem>(size));
  std::vector<std::string> names;
  for (Elem a = 0; a < size; ++a) {
    std::string nm;
    for (int c : f.words[a]) nm.push_back(static_cast<char>('a' + c));
    names.push_back(nm.empty() ? "1" : nm);
    for (Elem b = 0; b < size; ++b) {
      std::vector<int> w = f.words[a];
      for (int c : f.words[b])
        if (std::find(w.begin(), w.end(), c) == w.end()) w.push_back(c);
      t[a][b] = index.at(w);
    }
  }
  f.table = CayleyTable::trusted(size, flat(t), std::move(names));
  return f;
}

SignVector free_lrb_embedding(int n, const std::vector<int>& word) {
  // Coordinates: letters 0..n-1, then pairs {j<k} in lexicographic order.
  const std::size_t len = static_cast<std::size_t>(n + n * (n - 1) / 2);
  SignVector v{std::vector<std::int8_t>(len, 0)};
  for (int a : word) {
    SignVector f{std::vector<std::int8_t>(len, 0)};
    f.coords[a] = 1;
    std::size_t pos = static_cast<std::size_t>(n);
    for (int j = 0; j < n; ++j)
      for (int k = j + 1; k < n; ++k, ++pos) {
        if (a == j) f.coords[pos] = 1;
        else if (a == k) f.coords[pos] = -1;
      }
    v = v * f;
  }
  return v;
}

template <class Field>
BandResult<Field> free_lrb_effdim(int n, const Field& field) {
  if (n < 1) throw Error(Errc::IndexOutOfRange, "n must be positive");
  FreeLRB f = free_lrb(n);
  auto s = std::make_shared<const CayleyTable>(f.table);
  const int h = n + n * (n - 1) / 2;
  std::vector<SignVector> img;
  std::map<SignVector, Elem> seen;
  for (Elem a = 0; a < s->size(); ++a) {
    img.push_back(free_lrb_embedding(n, f.words[a]));
    if (!seen.emplace(img.back(), a).second)
      throw Error(Errc::Inconsistent, "sign embedding is not injective",
                  std::array<std::uint32_t, 3>{seen[img.back()], a, a});
  }
  for (Elem a = 0; a < s->size(); ++a)
    for (Elem b = 0; b < s->size(); ++b)
      if (!(img[(*s)(a, b)] == img[a] * img[b]))
        throw Error(Errc::Inconsistent, "sign embedding is not multiplicative", std::array<std::uint32_t, 3>{a, b, 0});
  std::vector<std::vector<int>> maps;
  for (const auto& v : img) maps.push_back(sign_action(v));
  auto rep = linearize_partial_action(s, field, static_cast<std::size_t>(h) + 1, maps, ActionSide::Right);
  const auto& chk = verify_in_place(rep);
  if (!chk.is_homomorphism || !chk.is_effective) throw Error(Errc::Inconsistent, "free LRB witness not effective");
  BandResult<Field> r{h + 1, std::move(rep), ""};
  r.certificate = "free left regular band on " + std::to_string(n) + " letters embeds in {+,-,0}^" +
                  std::to_string(h) + "; upper bound by the verified sign-sequence module, lower bound C(n,2)+n+1 "
                  "from projective covers of the (n-2)-support classes, the (n-1)-support classes and the trivial module";
  return r;
}

CayleyTable rectangular_band(std::size_t m, std::size_t n) {
  if (m == 0 || n == 0) throw Error(Errc::IndexOutOfRange, "empty rectangular band");
  std::vector<std::vector<Elem>> t(m * n, std::vector<Elem>(m * n));
  for (Elem a = 0; a < m * n; ++a)
    for (Elem b = 0; b < m * n; ++b) t[a][b] = static_cast<Elem>((a / n) * n + b % n);
  return CayleyTable::trusted(m * n, flat(t));
}

template <class Field>
BandResult<Field> rectangular_band_effdim(std::size_t m, std::size_t n, const Field& field) {
  using S = typename Field::scalar_type;
  auto s = std::make_shared<const CayleyTable>(rectangular_band(m, n));
  const auto size = field.size();
  if (size && *size < std::max(m, n))
    throw Error(Errc::FieldTooSmall, "need at least " + std::to_string(std::max(m, n)) + " field elements");
  // Distinct scalars: 1, 2, ... over Q; an enumeration of the field otherwise.
  auto scalar = [&](std::size_t i) -> S {
    if (!size) return field.from_int(static_cast<std::int64_t>(i) + 1);
    return field.element(i);
  };
  const bool rows = m > 1, cols = n > 1;
  const Index d = rows && cols ? 3 : (rows || cols ? 2 : 0);
  std::vector<Matrix<S>> imgs;
  for (Elem x = 0; x < s->size(); ++x) {
    const S a = scalar(x / n), b = scalar(x % n);
    Matrix<S> mat = zeros(field, d, d);
    if (d == 3) {
      mat(0, 0) = field.one();
      mat(0, 1) = b;
      mat(2, 0) = a;
      mat(2, 1) = a * b;
    } else if (d == 2 && rows) {
      mat(0, 0) = field.one();
      mat(1, 0) = a;
    } else if (d == 2) {
      mat(0, 0) = field.one();
      mat(0, 1) = b;
    }
    imgs.push_back(std::move(mat));
  }
  MatrixRep<Field> rep(s, field, d, std::move(imgs));
  const auto& chk = verify_in_place(rep);
  if (!chk.is_homomorphism || !chk.is_effective)
    throw Error(Errc::Inconsistent, "rectangular band witness not effective");
  BandResult<Field> r{static_cast<int>(d), std::move(rep), ""};
  if (d == 0) r.certificate = "trivial semigroup";
  else if (d == 2) r.certificate = "one side of size 1: rank-one 2x2 idempotents; 1x1 cannot separate two idempotents";
  else r.certificate = "rank-one 3x3 witness; no effective 2x2 representation exists when both sides exceed 1";
  return r;
}

#define EFFDIM_BANDS_INSTANTIATE(F)                                                         \
  template MatrixRep<F> sign_power_rep<F>(int, const F&);                                   \
  template BandResult<F> hyperplane_effdim<F>(const std::vector<SignVector>&, const F&);    \
  template BandResult<F> free_lrb_effdim<F>(int, const F&);                                 \
  template BandResult<F> rectangular_band_effdim<F>(std::size_t, std::size_t, const F&);
EFFDIM_BANDS_INSTANTIATE(RationalField)
EFFDIM_BANDS_INSTANTIATE(FiniteField)

}  // namespace effdim
