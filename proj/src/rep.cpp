#include "effdim/rep.hpp"

#include <deque>
#include <optional>
#include <unordered_map>

#include "effdim/greens.hpp"

namespace effdim {

template <class Field>
MatrixRep<Field> extend_from_generators(std::shared_ptr<const CayleyTable> s, const Field& field,
                                        const std::vector<Elem>& gens,
                                        const std::vector<Matrix<typename Field::scalar_type>>& images) {
  using M = Matrix<typename Field::scalar_type>;
  if (gens.size() != images.size()) throw Error(Errc::IndexOutOfRange, "one image per generator is required");
  const std::size_t n = s->size();
  const Index dim = images.empty() ? 0 : images.front().rows();
  for (const auto& m : images)
    if (m.rows() != dim || m.cols() != dim) throw Error(Errc::IndexOutOfRange, "generator images differ in shape");
  std::vector<std::optional<M>> img(n);
  std::deque<Elem> queue;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i] >= n) throw Error(Errc::IndexOutOfRange, "generator index out of range");
    if (!img[gens[i]]) {
      img[gens[i]] = images[i];
      queue.push_back(gens[i]);
    }
  }
  while (!queue.empty()) {
    const Elem x = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const Elem y = s->mul(x, gens[i]);
      if (img[y]) continue;
      img[y] = M(*img[x] * images[i]);
      queue.push_back(y);
    }
  }
  if (s->identity() && !img[*s->identity()]) img[*s->identity()] = identity(field, dim);
  std::vector<M> out;
  out.reserve(n);
  for (Elem x = 0; x < n; ++x) {
    if (!img[x]) throw Error(Errc::NotGenerating, "element " + std::to_string(x) + " is not generated");
    out.push_back(std::move(*img[x]));
  }
  return MatrixRep<Field>(std::move(s), field, dim, std::move(out));
}

namespace {

// Integer images of a representation, either exact (modulus 0, entries small
// enough that every d-term dot product fits in int64) or residues mod a prime.
struct IntImages {
  std::int64_t modulus = 0;
  Index d = 0;
  std::vector<std::vector<std::int64_t>> m;
};

constexpr std::int64_t kSmallEntry = std::int64_t{1} << 20;

std::optional<IntImages> int_images(const MatrixRep<RationalField>& rep) {
  const Index d = rep.dim();
  if (d >= (Index{1} << 21)) return std::nullopt;
  IntImages out{0, d, {}};
  out.m.reserve(rep.semigroup().size());
  for (Elem a = 0; a < rep.semigroup().size(); ++a) {
    const auto& img = rep.image(a);
    std::vector<std::int64_t> v(static_cast<std::size_t>(d * d));
    for (Index i = 0; i < d; ++i)
      for (Index j = 0; j < d; ++j) {
        const mpq_class& q = img(i, j).raw();
        if (q.get_den() != 1 || !q.get_num().fits_slong_p()) return std::nullopt;
        const long x = q.get_num().get_si();
        if (x > kSmallEntry || x < -kSmallEntry) return std::nullopt;
        v[static_cast<std::size_t>(i * d + j)] = x;
      }
    out.m.push_back(std::move(v));
  }
  return out;
}

std::optional<IntImages> int_images(const MatrixRep<FiniteField>& rep) {
  const GaloisField& f = rep.field().gf();
  if (!f.is_prime()) return std::nullopt;
  const Index d = rep.dim();
  IntImages out{static_cast<std::int64_t>(f.p()), d, {}};
  for (Elem a = 0; a < rep.semigroup().size(); ++a) {
    const auto& img = rep.image(a);
    std::vector<std::int64_t> v(static_cast<std::size_t>(d * d));
    for (Index i = 0; i < d; ++i)
      for (Index j = 0; j < d; ++j) v[static_cast<std::size_t>(i * d + j)] = static_cast<std::int64_t>(img(i, j).value_in(f));
    out.m.push_back(std::move(v));
  }
  return out;
}

bool int_product_matches(const IntImages& im, Elem a, Elem b, Elem c) {
  const Index d = im.d;
  const auto& x = im.m[a];
  const auto& y = im.m[b];
  const auto& z = im.m[c];
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) {
      std::int64_t acc = 0;
      for (Index k = 0; k < d; ++k) {
        const std::int64_t u = x[static_cast<std::size_t>(i * d + k)];
        if (u == 0) continue;
        acc += u * y[static_cast<std::size_t>(k * d + j)];
        if (im.modulus != 0) acc %= im.modulus;
      }
      if (im.modulus != 0 && acc < 0) acc += im.modulus;
      if (acc != z[static_cast<std::size_t>(i * d + j)]) return false;
    }
  }
  return true;
}

// Row rank of integer rows modulo a prime. Over Q this is a lower bound for
// the rational rank, exact whenever it is full.
Index rank_mod(std::vector<std::vector<std::int64_t>> rows, std::int64_t p) {
  const auto mulmod = [p](std::int64_t a, std::int64_t b) {
    return static_cast<std::int64_t>(static_cast<__int128>(a) * b % p);
  };
  const auto inv = [&](std::int64_t a) {
    std::int64_t r = 1, e = p - 2;
    while (e > 0) {
      if (e & 1) r = mulmod(r, a);
      a = mulmod(a, a);
      e >>= 1;
    }
    return r;
  };
  for (auto& r : rows)
    for (auto& x : r) x = ((x % p) + p) % p;
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Index rank = 0;
  std::size_t top = 0;
  for (std::size_t c = 0; c < cols && top < rows.size(); ++c) {
    std::size_t piv = top;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[top]);
    const std::int64_t iv = inv(rows[top][c]);
    for (std::size_t r = top + 1; r < rows.size(); ++r) {
      if (rows[r][c] == 0) continue;
      const std::int64_t f = mulmod(rows[r][c], iv);
      for (std::size_t k = c; k < cols; ++k)
        if (rows[top][k] != 0) rows[r][k] = (rows[r][k] - mulmod(f, rows[top][k]) + p) % p;
    }
    ++top;
    ++rank;
  }
  return rank;
}

}  // namespace

template <class Field>
RepCheckResult verify(const MatrixRep<Field>& rep) {
  using S = typename Field::scalar_type;
  const CayleyTable& s = rep.semigroup();
  const std::size_t n = s.size();
  const Index d = rep.dim();
  RepCheckResult r;
  const std::optional<IntImages> ints = int_images(rep);

  r.is_homomorphism = true;
  std::vector<Elem> left;
  if (n <= kFullPairCheckLimit) {
    for (Elem a = 0; a < n; ++a) left.push_back(a);
  } else {
    left = greedy_generators(s, false);
  }
  for (Elem a : left) {
    for (Elem b = 0; b < n && r.is_homomorphism; ++b) {
      const bool ok = ints ? int_product_matches(*ints, a, b, s(a, b))
                           : Matrix<S>(rep.image(a) * rep.image(b)) == rep.image(s(a, b));
      if (!ok) {
        r.is_homomorphism = false;
        r.hom_failure = std::make_pair(a, b);
      }
    }
    if (!r.is_homomorphism) break;
  }

  r.is_effective = true;
  std::unordered_map<std::string, Elem> seen;
  for (Elem a = 0; a < n; ++a) {
    auto [it, fresh] = seen.emplace(matrix_key(rep.image(a)), a);
    if (!fresh) {
      r.is_effective = false;
      r.collapsed = std::make_pair(it->second, a);
      break;
    }
  }

  if (s.identity()) r.is_unital = rep.image(*s.identity()) == identity(rep.field(), d);

  const bool add_identity = !s.identity().has_value();
  const Index rows = static_cast<Index>(n) + (add_identity ? 1 : 0);
  std::optional<Index> rk;
  if (ints && d > 0) {
    std::vector<std::vector<std::int64_t>> flat_int = ints->m;
    if (add_identity) {
      std::vector<std::int64_t> id(static_cast<std::size_t>(d * d), 0);
      for (Index i = 0; i < d; ++i) id[static_cast<std::size_t>(i * d + i)] = 1;
      flat_int.push_back(std::move(id));
    }
    const std::int64_t p = ints->modulus != 0 ? ints->modulus : std::int64_t{2305843009213693951};  // 2^61 - 1
    const Index rp = rank_mod(std::move(flat_int), p);
    if (ints->modulus != 0 || rp == rows) rk = rp;
  }
  if (!rk) {
    Matrix<S> flat(rows, d * d);
    for (Elem a = 0; a < n; ++a)
      for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j) flat(a, i * d + j) = rep.image(a)(i, j);
    if (add_identity) flat.row(rows - 1) = identity(rep.field(), d).reshaped(1, d * d).eval();
    if (d == 0) flat = zeros(rep.field(), rows, 0);
    rk = rank<S>(flat);
  }
  r.annihilator_dim = rows - *rk;
  r.is_faithful = r.is_homomorphism && r.annihilator_dim == 0;
  if (r.is_faithful) r.is_effective = true;
  return r;
}

template <class Field>
MatrixRep<Field> combine(CombineOp op, const MatrixRep<Field>& a, const MatrixRep<Field>& b) {
  using M = Matrix<typename Field::scalar_type>;
  if (!(a.field() == b.field())) throw Error(Errc::FieldMismatch, "representations over different fields");
  if (!(a.semigroup() == b.semigroup())) throw Error(Errc::Inconsistent, "representations of different semigroups");
  std::vector<M> out;
  for (Elem x = 0; x < a.semigroup().size(); ++x)
    out.push_back(op == CombineOp::DirectSum ? block_diag<typename Field::scalar_type>(a.image(x), b.image(x))
                                             : kron<typename Field::scalar_type>(a.image(x), b.image(x)));
  const Index dim = op == CombineOp::DirectSum ? a.dim() + b.dim() : a.dim() * b.dim();
  return MatrixRep<Field>(a.semigroup_ptr(), a.field(), dim, std::move(out));
}

template <class Field>
SteinbergResult steinberg_bound(const MatrixRep<Field>& rep, int k_max) {
  using S = typename Field::scalar_type;
  using M = Matrix<S>;
  const RepCheckResult chk = rep.check() ? *rep.check() : verify(rep);
  if (!chk.is_homomorphism || !chk.is_effective) throw Error(Errc::NotEffective, "representation is not effective");
  const CayleyTable& s = rep.semigroup();
  const std::size_t n = s.size();
  const bool add_identity = !s.identity().has_value();
  const Index N = static_cast<Index>(n) + (add_identity ? 1 : 0);
  if (k_max < 0) k_max = static_cast<int>(N);

  std::vector<M> base;  // images on S^•
  for (Elem a = 0; a < n; ++a) base.push_back(rep.image(a));
  if (add_identity) base.push_back(identity(rep.field(), rep.dim()));

  SteinbergResult res;
  M kernel = identity(rep.field(), N);  // basis (columns) of the current annihilator
  std::vector<M> power(static_cast<std::size_t>(N), identity(rep.field(), 1));
  for (int k = 0; k <= k_max; ++k) {
    if (k > 0) {
      const double entries = static_cast<double>(power[0].size()) * static_cast<double>(rep.dim() * rep.dim()) *
                             static_cast<double>(N);
      if (entries > 2e7) throw Error(Errc::TooLarge, "tensor power too large to materialise");
      for (Index a = 0; a < N; ++a) power[a] = kron<S>(power[a], base[a]);
    }
    const Index dd = power[0].size();
    // Constraint: for c = kernel * y, sum_a c_a power[a] = 0.
    M flatT(dd, N);
    for (Index a = 0; a < N; ++a) flatT.col(a) = power[a].reshaped(dd, 1);
    M restricted = flatT * kernel;
    auto rs = rank_solve<S>(restricted);
    kernel = kernel * rs.kernel;
    res.annihilator_dims.push_back(kernel.cols());
    if (kernel.cols() == 0) {
      res.reached = true;
      res.k = k;
      return res;
    }
  }
  return res;
}

namespace {

template <class Field>
Matrix<typename Field::scalar_type> unit_column_matrix(const Field& field, Index dim,
                                                       const std::vector<std::int64_t>& target) {
  // Column t has a single one in row target[t] (or is zero when target[t] < 0).
  auto m = zeros(field, dim, dim);
  for (Index t = 0; t < dim; ++t)
    if (target[t] >= 0) m(target[t], t) = field.one();
  return m;
}

}  // namespace

RegularDims regular_dims(const CayleyTable& s, std::uint64_t characteristic) {
  RegularDims r;
  const Adjoined sb = monoidal(s);
  r.full = static_cast<Index>(sb.table.size());
  const GreensData g = derive_structure(s);
  const auto& I = g.minimal_ideal;
  const std::uint32_t ri = g.r_class[I.front()], li = g.l_class[I.front()];
  bool group = true;
  for (Elem x : I) group = group && g.r_class[x] == ri && g.l_class[x] == li;
  if (group) {
    r.construction = "group-quotient";
    if (characteristic != 0 && I.size() % characteristic == 0) return r;
    r.reduced = r.full - 1;
    return r;
  }
  std::vector<bool> lseen(g.num_l, false), rseen(g.num_r, false);
  std::size_t lcount = 0;
  for (Elem x : I)
    if (!lseen[g.l_class[x]]) {
      lseen[g.l_class[x]] = true;
      ++lcount;
    }
  Elem e = I.front();
  for (Elem x : I)
    if (s.is_idempotent(x)) {
      e = x;
      break;
    }
  if (lcount >= 2) {
    r.construction = "left-ideal-quotient";
    r.reduced = r.full - static_cast<Index>(g.members(g.l_class, g.l_class[e]).size());
  } else {
    r.construction = "left-ideal-quotient(op)";
    r.reduced = r.full - static_cast<Index>(g.members(g.r_class, g.r_class[e]).size());
  }
  return r;
}

template <class Field>
RegularReps<Field> regular_reps(std::shared_ptr<const CayleyTable> sp, const Field& field) {
  const CayleyTable& s = *sp;
  const std::size_t n = s.size();
  const Adjoined sb = monoidal(s);
  const Index N = static_cast<Index>(sb.table.size());

  std::vector<Matrix<typename Field::scalar_type>> full;
  for (Elem a = 0; a < n; ++a) {
    std::vector<std::int64_t> target(N);
    for (Index t = 0; t < N; ++t) target[t] = sb.table(a, static_cast<Elem>(t));
    full.push_back(unit_column_matrix(field, N, target));
  }
  MatrixRep<Field> full_rep(sp, field, N, std::move(full));
  verify_in_place(full_rep);
  RegularReps<Field> out{std::move(full_rep), std::nullopt, ""};

  const GreensData g = derive_structure(s);
  const auto& I = g.minimal_ideal;
  const std::uint32_t ri = g.r_class[I.front()], li = g.l_class[I.front()];
  bool group = true;
  for (Elem x : I) group = group && g.r_class[x] == ri && g.l_class[x] == li;

  if (group) {
    out.reduced_construction = "group-quotient";
    const std::uint64_t ch = field.characteristic();
    if (ch != 0 && I.size() % ch == 0)
      throw Error(Errc::HypothesisFailed, "characteristic divides the order of the minimal ideal group");
    const Elem h0 = I.front();
    std::vector<std::int64_t> pos(N, -1);
    Index next = 0;
    for (Index t = 0; t < N; ++t)
      if (static_cast<Elem>(t) != h0) pos[t] = next++;
    std::vector<Matrix<typename Field::scalar_type>> imgs;
    for (Elem a = 0; a < n; ++a) {
      auto m = zeros(field, N - 1, N - 1);
      for (Index t = 0; t < N; ++t) {
        if (pos[t] < 0) continue;
        const Elem u = sb.table(a, static_cast<Elem>(t));
        if (u != h0) {
          m(pos[u], pos[t]) = field.one();
        } else {
          for (Elem h : I)
            if (h != h0) m(pos[h], pos[t]) = -field.one();
        }
      }
      imgs.push_back(std::move(m));
    }
    out.reduced.emplace(sp, field, N - 1, std::move(imgs));
  } else {
    std::size_t lcount = 0;
    {
      std::vector<bool> lseen(g.num_l, false);
      for (Elem x : I)
        if (!lseen[g.l_class[x]]) {
          lseen[g.l_class[x]] = true;
          ++lcount;
        }
    }
    const bool use_op = lcount < 2;
    out.reduced_construction = use_op ? "left-ideal-quotient(op)" : "left-ideal-quotient";
    const CayleyTable t_table = use_op ? opposite(sb.table) : sb.table;
    const GreensData gt = use_op ? derive_structure(opposite(s)) : g;
    Elem e = gt.minimal_ideal.front();
    for (Elem x : gt.minimal_ideal)
      if (t_table.is_idempotent(x)) {
        e = x;
        break;
      }
    std::vector<bool> in_le(N, false);
    for (Elem x : gt.members(gt.l_class, gt.l_class[e])) in_le[x] = true;
    std::vector<std::int64_t> pos(N, -1);
    Index dim = 0;
    for (Index t = 0; t < N; ++t)
      if (!in_le[t]) pos[t] = dim++;
    std::vector<Matrix<typename Field::scalar_type>> imgs;
    for (Elem a = 0; a < n; ++a) {
      std::vector<std::int64_t> target(dim, -1);
      for (Index t = 0; t < N; ++t) {
        if (pos[t] < 0) continue;
        const Elem u = t_table(a, static_cast<Elem>(t));
        target[pos[t]] = in_le[u] ? -1 : pos[u];
      }
      auto m = unit_column_matrix(field, dim, target);
      if (use_op) m.transposeInPlace();
      imgs.push_back(std::move(m));
    }
    out.reduced.emplace(sp, field, dim, std::move(imgs));
  }
  const auto& chk = verify_in_place(*out.reduced);
  if (!chk.is_homomorphism || !chk.is_effective)
    throw Error(Errc::NotEffective, "reduced regular representation failed verification");
  return out;
}

template <class Field>
MatrixRep<Field> linearize_partial_action(std::shared_ptr<const CayleyTable> s, const Field& field,
                                          std::size_t points, const std::vector<std::vector<int>>& maps,
                                          ActionSide side) {
  const std::size_t n = s->size();
  if (maps.size() != n) throw Error(Errc::IndexOutOfRange, "one partial map per element is required");
  for (const auto& m : maps) {
    if (m.size() != points) throw Error(Errc::IndexOutOfRange, "partial map has the wrong length");
    for (int v : m)
      if (v < -1 || v >= static_cast<int>(points)) throw Error(Errc::IndexOutOfRange, "point out of range");
  }
  auto apply = [&](Elem a, int j) { return j < 0 ? -1 : maps[a][static_cast<std::size_t>(j)]; };
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      for (std::size_t j = 0; j < points; ++j) {
        const int lhs = apply((*s)(a, b), static_cast<int>(j));
        const int rhs = side == ActionSide::Left ? apply(a, apply(b, static_cast<int>(j)))
                                                 : apply(b, apply(a, static_cast<int>(j)));
        if (lhs != rhs)
          throw Error(Errc::ActionInconsistent,
                      "action disagrees with the table at (" + std::to_string(a) + "," + std::to_string(b) + ")",
                      std::array<Elem, 3>{a, b, static_cast<Elem>(j)});
      }
  std::vector<Matrix<typename Field::scalar_type>> imgs;
  const Index d = static_cast<Index>(points);
  for (Elem a = 0; a < n; ++a) {
    std::vector<std::int64_t> target(points);
    for (std::size_t j = 0; j < points; ++j) target[j] = maps[a][j];
    auto m = unit_column_matrix(field, d, target);
    if (side == ActionSide::Right) m.transposeInPlace();
    imgs.push_back(std::move(m));
  }
  MatrixRep<Field> rep(std::move(s), field, d, std::move(imgs));
  verify_in_place(rep);
  return rep;
}

template <class Field>
MatrixRep<Field> transpose_rep(const MatrixRep<Field>& rep, std::shared_ptr<const CayleyTable> op) {
  std::vector<Matrix<typename Field::scalar_type>> imgs;
  for (const auto& m : rep.images()) imgs.push_back(m.transpose());
  return MatrixRep<Field>(std::move(op), rep.field(), rep.dim(), std::move(imgs));
}

template <class Field>
nlohmann::json encode_rep(const MatrixRep<Field>& rep) {
  nlohmann::json images = nlohmann::json::object();
  for (Elem a = 0; a < rep.semigroup().size(); ++a)
    images[std::to_string(a)] = encode_matrix(rep.field(), rep.image(a));
  return {{"semigroup_hash", table_hash(rep.semigroup())},
          {"field", rep.field().spec()},
          {"dim", rep.dim()},
          {"images", std::move(images)}};
}

template <class Field>
MatrixRep<Field> decode_rep(std::shared_ptr<const CayleyTable> s, const Field& field, const nlohmann::json& j) {
  if (j.at("field").get<FieldSpec>() != field.spec()) throw Error(Errc::FieldMismatch, "representation field differs");
  if (j.contains("semigroup_hash") && j.at("semigroup_hash").get<std::string>() != table_hash(*s))
    throw Error(Errc::Inconsistent, "representation belongs to a different table");
  const Index dim = j.at("dim").get<Index>();
  const auto& images = j.at("images");
  std::vector<Matrix<typename Field::scalar_type>> imgs;
  for (Elem a = 0; a < s->size(); ++a) {
    const std::string key = std::to_string(a);
    if (!images.contains(key)) throw Error(Errc::Malformed, "missing image for element " + key);
    imgs.push_back(decode_matrix(field, images.at(key)));
  }
  return MatrixRep<Field>(std::move(s), field, dim, std::move(imgs));
}

nlohmann::json encode_any_rep(const AnyRep& rep) {
  return std::visit([](const auto& r) { return encode_rep(r); }, rep);
}

AnyRep decode_any_rep(std::shared_ptr<const CayleyTable> s, const nlohmann::json& j) {
  const AnyField f = to_field(j.at("field").get<FieldSpec>());
  return std::visit([&](const auto& field) -> AnyRep { return decode_rep(s, field, j); }, f);
}

Index rep_dim(const AnyRep& rep) {
  return std::visit([](const auto& r) { return r.dim(); }, rep);
}

RepCheckResult verify_any(const AnyRep& rep) {
  return std::visit([](const auto& r) { return verify(r); }, rep);
}

#define EFFDIM_REP_INSTANTIATE(F)                                                                       \
  template MatrixRep<F> extend_from_generators<F>(std::shared_ptr<const CayleyTable>, const F&,        \
                                                  const std::vector<Elem>&,                            \
                                                  const std::vector<Matrix<F::scalar_type>>&);         \
  template RepCheckResult verify<F>(const MatrixRep<F>&);                                              \
  template MatrixRep<F> combine<F>(CombineOp, const MatrixRep<F>&, const MatrixRep<F>&);               \
  template SteinbergResult steinberg_bound<F>(const MatrixRep<F>&, int);                               \
  template RegularReps<F> regular_reps<F>(std::shared_ptr<const CayleyTable>, const F&);               \
  template MatrixRep<F> linearize_partial_action<F>(std::shared_ptr<const CayleyTable>, const F&,      \
                                                    std::size_t, const std::vector<std::vector<int>>&, \
                                                    ActionSide);                                       \
  template MatrixRep<F> transpose_rep<F>(const MatrixRep<F>&, std::shared_ptr<const CayleyTable>);     \
  template nlohmann::json encode_rep<F>(const MatrixRep<F>&);                                          \
  template MatrixRep<F> decode_rep<F>(std::shared_ptr<const CayleyTable>, const F&, const nlohmann::json&);

EFFDIM_REP_INSTANTIATE(RationalField)
EFFDIM_REP_INSTANTIATE(FiniteField)

}  // namespace effdim
