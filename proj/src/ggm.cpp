#include "effdim/ggm.hpp"

#include <algorithm>
#include <map>

#include "effdim/greens.hpp"

namespace effdim {

std::string ggm_kind_name(GGMKind k) {
  switch (k) {
    case GGMKind::NotGGM: return "NotGGM";
    case GGMKind::AGGM: return "AGGM";
    case GGMKind::GroupMapping: return "GroupMapping";
  }
  return "?";
}

nlohmann::json ReesStructure::to_json() const {
  nlohmann::json table = nlohmann::json::array();
  for (Elem a = 0; a < group.table.size(); ++a) {
    nlohmann::json row = nlohmann::json::array();
    for (Elem b = 0; b < group.table.size(); ++b) row.push_back(group.table(a, b));
    table.push_back(row);
  }
  nlohmann::json p = nlohmann::json::array();
  for (const auto& row : structure_matrix) {
    nlohmann::json r = nlohmann::json::array();
    for (auto v : row) r.push_back(v < 0 ? nlohmann::json(nullptr) : nlohmann::json(v));
    p.push_back(r);
  }
  return {{"group", {{"n", group.table.size()}, {"table", table}, {"elements", group.elems}}},
          {"structure_matrix", p},
          {"r_reps", r_reps},
          {"l_reps", l_reps},
          {"idempotent", idempotent}};
}

namespace {

// First pair of elements whose action (left or right) on `ideal` agrees.
std::optional<std::pair<Elem, Elem>> action_collision(const CayleyTable& s, const std::vector<Elem>& ideal, bool left) {
  std::map<std::vector<Elem>, Elem> seen;
  for (Elem a = 0; a < s.size(); ++a) {
    std::vector<Elem> act;
    act.reserve(ideal.size());
    for (Elem x : ideal) act.push_back(left ? s(a, x) : s(x, a));
    auto [it, fresh] = seen.emplace(std::move(act), a);
    if (!fresh) return std::make_pair(it->second, a);
  }
  return std::nullopt;
}

std::optional<ReesStructure> build_rees(const CayleyTable& s, const GreensData& g, const std::vector<Elem>& ideal) {
  ReesStructure r;
  r.ideal = ideal;
  r.zero = s.zero();
  std::vector<Elem> nonzero;
  for (Elem x : ideal)
    if (!(r.zero && x == *r.zero && ideal.size() > 1)) nonzero.push_back(x);
  std::optional<Elem> e;
  for (Elem x : nonzero)
    if (s.is_idempotent(x)) {
      e = x;
      break;
    }
  if (!e) return std::nullopt;
  r.idempotent = *e;
  r.group = restrict_to(s, g.members(g.h_class, g.h_class[*e]));

  const std::size_t n = s.size();
  r.r_index.assign(n, kNoIndex);
  r.l_index.assign(n, kNoIndex);
  std::map<std::uint32_t, std::uint32_t> rmap, lmap;
  for (Elem x : nonzero) {
    if (!rmap.count(g.r_class[x])) rmap.emplace(g.r_class[x], static_cast<std::uint32_t>(rmap.size()));
    if (!lmap.count(g.l_class[x])) lmap.emplace(g.l_class[x], static_cast<std::uint32_t>(lmap.size()));
    r.r_index[x] = rmap[g.r_class[x]];
    r.l_index[x] = lmap[g.l_class[x]];
  }
  const std::uint32_t ie = r.r_index[*e], le = r.l_index[*e];
  r.r_reps.assign(rmap.size(), *e);
  r.l_reps.assign(lmap.size(), *e);
  std::vector<bool> rset(rmap.size(), false), lset(lmap.size(), false);
  rset[ie] = lset[le] = true;
  for (Elem x : nonzero) {
    if (r.l_index[x] == le && !rset[r.r_index[x]]) {
      r.r_reps[r.r_index[x]] = x;
      rset[r.r_index[x]] = true;
    }
    if (r.r_index[x] == ie && !lset[r.l_index[x]]) {
      r.l_reps[r.l_index[x]] = x;
      lset[r.l_index[x]] = true;
    }
  }

  r.coords.assign(n, {kNoIndex, kNoIndex, kNoIndex});
  for (Elem x : nonzero) {
    const std::uint32_t i = r.r_index[x], lam = r.l_index[x];
    for (std::uint32_t gp = 0; gp < r.group.elems.size(); ++gp)
      if (s(s(r.r_reps[i], r.group.elems[gp]), r.l_reps[lam]) == x) {
        r.coords[x] = {i, gp, lam};
        break;
      }
    if (r.coords[x][1] == kNoIndex) throw Error(Errc::Inconsistent, "no Rees coordinates for an ideal element");
  }

  std::vector<std::int64_t> gpos(n, -1);
  for (std::size_t k = 0; k < r.group.elems.size(); ++k) gpos[r.group.elems[k]] = static_cast<std::int64_t>(k);
  r.structure_matrix.assign(r.m(), std::vector<std::int64_t>(r.n(), -1));
  for (std::size_t lam = 0; lam < r.m(); ++lam)
    for (std::size_t i = 0; i < r.n(); ++i) r.structure_matrix[lam][i] = gpos[s(r.l_reps[lam], r.r_reps[i])];
  return r;
}

}  // namespace

GGMClass classify_ggm(const CayleyTable& s) {
  GGMClass out;
  if (s.size() <= 1) {
    out.reason = "trivial semigroup";
    return out;
  }
  const GreensData g = derive_structure(s);
  std::vector<std::vector<Elem>> candidates;
  if (s.zero()) candidates = g.zero_minimal_ideals;
  else candidates.push_back(g.minimal_ideal);

  for (const auto& ideal : candidates) {
    if (auto c = action_collision(s, ideal, true)) {
      out.witness = c;
      out.reason = "elements " + std::to_string(c->first) + " and " + std::to_string(c->second) +
                   " act identically on the left of the ideal";
      continue;
    }
    if (auto c = action_collision(s, ideal, false)) {
      out.witness = c;
      out.reason = "elements " + std::to_string(c->first) + " and " + std::to_string(c->second) +
                   " act identically on the right of the ideal";
      continue;
    }
    auto rees = build_rees(s, g, ideal);
    if (!rees) {
      out.reason = "distinguished ideal is not regular";
      continue;
    }
    out.witness.reset();
    const bool trivial_group = rees->group.table.size() == 1;
    if (trivial_group && !s.zero()) {
      out.reason = "trivial maximal subgroup without a zero";
      continue;
    }
    out.kind = trivial_group ? GGMKind::AGGM : GGMKind::GroupMapping;
    out.reason = trivial_group ? "aperiodic distinguished ideal" : "non-trivial maximal subgroup";
    out.rees = std::move(rees);
    return out;
  }
  return out;
}

template <class Field>
Index structure_rank(const ReesStructure& rees, const Field& field) {
  auto p = zeros(field, static_cast<Index>(rees.m()), static_cast<Index>(rees.n()));
  for (std::size_t lam = 0; lam < rees.m(); ++lam)
    for (std::size_t i = 0; i < rees.n(); ++i)
      if (rees.structure_matrix[lam][i] >= 0) p(static_cast<Index>(lam), static_cast<Index>(i)) = field.one();
  return rank<typename Field::scalar_type>(p);
}

template <class Field>
GGMResult<Field> aggm_effdim(std::shared_ptr<const CayleyTable> sp, const Field& field) {
  using S = typename Field::scalar_type;
  const CayleyTable& s = *sp;
  const GGMClass cls = classify_ggm(s);
  if (cls.kind != GGMKind::AGGM) throw Error(Errc::NotAGGM, cls.reason.empty() ? "not AGGM" : cls.reason);
  const ReesStructure& rees = *cls.rees;
  const Index n = static_cast<Index>(rees.n()), m = static_cast<Index>(rees.m());

  Matrix<S> p = zeros(field, m, n);
  for (Index lam = 0; lam < m; ++lam)
    for (Index i = 0; i < n; ++i)
      if (rees.structure_matrix[lam][i] >= 0) p(lam, i) = field.one();
  // C: the nonzero rows of rref(P), so ker C = ker P; E picks pivot columns.
  Matrix<S> c = p;
  const auto pivots = rref_inplace(c);
  const Index r = static_cast<Index>(pivots.size());
  Matrix<S> cr = c.topRows(r);
  Matrix<S> e = zeros(field, n, r);
  for (Index k = 0; k < r; ++k) e(pivots[k], k) = field.one();

  std::vector<Matrix<S>> imgs;
  for (Elem a = 0; a < s.size(); ++a) {
    Matrix<S> act = zeros(field, n, n);
    for (Index i = 0; i < n; ++i) {
      const Elem y = s(a, rees.r_reps[i]);
      if (rees.r_index[y] != kNoIndex) act(rees.r_index[y], i) = field.one();
    }
    imgs.push_back(cr * act * e);
  }
  MatrixRep<Field> w(sp, field, r, std::move(imgs));
  const auto& chk = verify_in_place(w);
  if (!chk.is_homomorphism || !chk.is_effective)
    throw Error(Errc::Inconsistent, "AGGM witness failed verification");
  GGMResult<Field> res{static_cast<int>(r), std::move(w), ""};
  res.certificate = "AGGM: rank of the " + std::to_string(m) + "x" + std::to_string(n) +
                    " structure matrix is " + std::to_string(r) +
                    "; the witness is the unique simple module not killed by the ideal, a composition factor of "
                    "every effective module";
  return res;
}

namespace {

bool left_invertible(const ReesStructure& rees) {
  const CayleyTable& gt = rees.group.table;
  const Index G = static_cast<Index>(gt.size());
  const Index n = static_cast<Index>(rees.n()), m = static_cast<Index>(rees.m());
  if (m < n) return false;
  Matrix<Rational> b = Matrix<Rational>::Zero(m * G, n * G);
  for (Index lam = 0; lam < m; ++lam)
    for (Index i = 0; i < n; ++i) {
      const auto p = rees.structure_matrix[lam][i];
      if (p < 0) continue;
      // Left multiplication by p on the basis G of QG.
      for (Elem x = 0; x < gt.size(); ++x) b(lam * G + gt(static_cast<Elem>(p), x), i * G + x) = Rational(1);
    }
  return rank<Rational>(b) == n * G;
}

}  // namespace

std::optional<InvertibleSide> structure_matrix_invertibility(const CayleyTable& s, const GGMClass& cls) {
  if (!cls.rees) return std::nullopt;
  if (left_invertible(*cls.rees)) return InvertibleSide::Left;
  const GGMClass op = classify_ggm(opposite(s));
  if (op.rees && left_invertible(*op.rees)) return InvertibleSide::Right;
  return std::nullopt;
}

template <class Field>
MatrixRep<Field> group_mapping_module(std::shared_ptr<const CayleyTable> sp, const ReesStructure& rees,
                                      const MatrixRep<Field>& g_module) {
  using S = typename Field::scalar_type;
  const CayleyTable& s = *sp;
  const Field& field = g_module.field();
  const Index n = static_cast<Index>(rees.n()), d = g_module.dim();
  std::vector<std::int64_t> gpos(s.size(), -1);
  for (std::size_t k = 0; k < rees.group.elems.size(); ++k) gpos[rees.group.elems[k]] = static_cast<std::int64_t>(k);
  std::vector<Matrix<S>> imgs;
  for (Elem a = 0; a < s.size(); ++a) {
    Matrix<S> m = zeros(field, n * d, n * d);
    for (Index i = 0; i < n; ++i) {
      const Elem y = s(a, rees.r_reps[i]);
      if (rees.r_index[y] == kNoIndex) continue;  // the zero
      const auto& c = rees.coords[y];
      // y = r_{i'} g (its L-class is that of e, so q = e).
      m.block(c[0] * d, i * d, d, d) = g_module.image(c[1]);
    }
    imgs.push_back(std::move(m));
  }
  MatrixRep<Field> w(sp, field, n * d, std::move(imgs));
  verify_in_place(w);
  return w;
}

template <class Field>
GGMResult<Field> group_mapping_effdim(std::shared_ptr<const CayleyTable> sp, int g_effdim,
                                      const MatrixRep<Field>& g_module) {
  const CayleyTable& s = *sp;
  const GGMClass cls = classify_ggm(s);
  if (cls.kind != GGMKind::GroupMapping)
    throw Error(Errc::NotGroupMapping, cls.reason.empty() ? "not group mapping" : cls.reason);
  if (g_module.dim() != g_effdim) throw Error(Errc::Inconsistent, "group module dimension differs from g_effdim");
  const auto gchk = g_module.check() ? *g_module.check() : verify(g_module);
  if (!gchk.is_homomorphism || !gchk.is_effective)
    throw Error(Errc::NotEffective, "group module is not effective");
  const auto side = structure_matrix_invertibility(s, cls);
  if (!side)
    throw Error(Errc::StructureMatrixNotOneSidedInvertible,
                "structure matrix has no one-sided inverse over the rational group algebra");

  GGMResult<Field> res{0, g_module, ""};
  if (*side == InvertibleSide::Left) {
    res.witness = group_mapping_module(sp, *cls.rees, g_module);
    res.value = static_cast<int>(cls.rees->n()) * g_effdim;
    res.certificate = "group mapping, structure matrix left invertible over QG: " + std::to_string(cls.rees->n()) +
                      " R-classes x effdim(G) = " + std::to_string(g_effdim);
  } else {
    auto op = std::make_shared<const CayleyTable>(opposite(s));
    const GGMClass ocls = classify_ggm(*op);
    auto gop = std::make_shared<const CayleyTable>(ocls.rees->group.table);
    // G^op acts through transposes of the given module.
    auto mod_op = transpose_rep(MatrixRep<Field>(g_module.semigroup_ptr(), g_module.field(), g_module.dim(),
                                                 g_module.images()),
                                gop);
    auto wop = group_mapping_module(op, *ocls.rees, mod_op);
    res.witness = transpose_rep(wop, sp);
    verify_in_place(res.witness);
    res.value = static_cast<int>(ocls.rees->n()) * g_effdim;
    res.certificate = "group mapping, structure matrix right invertible over QG: " +
                      std::to_string(ocls.rees->n()) + " L-classes x effdim(G) = " + std::to_string(g_effdim);
  }
  const auto& chk = *res.witness.check();
  if (!chk.is_homomorphism || !chk.is_effective)
    throw Error(Errc::Inconsistent, "group-mapping witness failed verification");
  return res;
}

#define EFFDIM_GGM_INSTANTIATE(F)                                                                                 \
  template Index structure_rank<F>(const ReesStructure&, const F&);                                              \
  template GGMResult<F> aggm_effdim<F>(std::shared_ptr<const CayleyTable>, const F&);                            \
  template GGMResult<F> group_mapping_effdim<F>(std::shared_ptr<const CayleyTable>, int, const MatrixRep<F>&);   \
  template MatrixRep<F> group_mapping_module<F>(std::shared_ptr<const CayleyTable>, const ReesStructure&,        \
                                                const MatrixRep<F>&);
EFFDIM_GGM_INSTANTIATE(RationalField)
EFFDIM_GGM_INSTANTIATE(FiniteField)

}  // namespace effdim
