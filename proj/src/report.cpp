#include "effdim/report.hpp"

#include <algorithm>

#include "effdim/bands.hpp"
#include "effdim/duality.hpp"
#include "effdim/ggm.hpp"
#include "effdim/greens.hpp"
#include "effdim/nilpotent.hpp"
#include "effdim/quiver.hpp"
#include "effdim/search.hpp"

namespace effdim {

namespace {

using Ptr = std::shared_ptr<const CayleyTable>;

Ptr share(CayleyTable t) { return std::make_shared<const CayleyTable>(std::move(t)); }

// Images of a representation of `from` carried to `to` along an injective
// map of elements (an isomorphism, or the inclusion S -> S•).
template <class Field>
MatrixRep<Field> carry(const MatrixRep<Field>& rep, Ptr to, const std::vector<Elem>& to_from) {
  std::vector<Matrix<typename Field::scalar_type>> images;
  for (Elem a = 0; a < to->size(); ++a) images.push_back(rep.image(to_from[a]));
  return MatrixRep<Field>(to, rep.field(), rep.dim(), std::move(images));
}

AnyRep carry_any(const AnyRep& rep, Ptr to, const std::vector<Elem>& to_from) {
  return std::visit([&](const auto& r) -> AnyRep { return carry(r, to, to_from); }, rep);
}

std::vector<Elem> identity_map(std::size_t n) {
  std::vector<Elem> v(n);
  for (Elem a = 0; a < n; ++a) v[a] = a;
  return v;
}

// Inverse of an isomorphism a -> b given as b-index per a-index.
std::vector<Elem> invert(const std::vector<Elem>& iso) {
  std::vector<Elem> inv(iso.size());
  for (Elem a = 0; a < iso.size(); ++a) inv[iso[a]] = a;
  return inv;
}

std::optional<std::pair<Index, Index>> rectangular_shape(const CayleyTable& s) {
  const std::size_t n = s.size();
  if (n > 200) return std::nullopt;
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      if (s(s(x, y), x) != x) return std::nullopt;
  // Rows of a rectangular band R_{m,n}: x S is the row of x.
  std::vector<std::vector<Elem>> rows;
  for (Elem x = 0; x < n; ++x) {
    std::vector<Elem> r;
    for (Elem y = 0; y < n; ++y) r.push_back(s(x, y));
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    if (std::find(rows.begin(), rows.end(), r) == rows.end()) rows.push_back(std::move(r));
  }
  const Index m = static_cast<Index>(rows.size());
  return std::make_pair(m, static_cast<Index>(n) / m);
}

std::optional<Elem> monogenic_generator(const CayleyTable& s) {
  if (s.size() > 4096) return std::nullopt;
  for (Elem a = 0; a < s.size(); ++a)
    if (generated_closure(s, {a}).size() == s.size()) return a;
  return std::nullopt;
}

// S with its identity removed, when that identity is external: S \ {1} is
// closed and has no identity of its own, so S is its S•.
struct Core {
  Ptr table;
  std::vector<Elem> to_s;  // core index -> S index
};

std::optional<Core> external_identity_core(const CayleyTable& s) {
  const auto e = s.identity();
  if (!e || s.size() < 2) return std::nullopt;
  std::vector<Elem> keep, pos(s.size(), 0);
  for (Elem a = 0; a < s.size(); ++a)
    if (a != *e) {
      pos[a] = static_cast<Elem>(keep.size());
      keep.push_back(a);
    }
  const std::size_t n = keep.size();
  std::vector<Elem> data(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Elem ab = s(keep[i], keep[j]);
      if (ab == *e) return std::nullopt;
      data[i * n + j] = pos[ab];
    }
  std::vector<std::string> names;
  for (Elem a : keep) names.push_back(s.name(a));
  CayleyTable core = CayleyTable::trusted(n, std::move(data), std::move(names));
  if (core.identity()) return std::nullopt;
  return Core{share(std::move(core)), std::move(keep)};
}

// A representation of the core extended to S by sending the identity to I.
template <class Field>
MatrixRep<Field> extend_by_identity(const MatrixRep<Field>& rep, Ptr s, const std::vector<Elem>& core_to_s) {
  std::vector<std::optional<Matrix<typename Field::scalar_type>>> img(s->size());
  for (Elem i = 0; i < core_to_s.size(); ++i) img[core_to_s[i]] = rep.image(i);
  std::vector<Matrix<typename Field::scalar_type>> images;
  for (Elem a = 0; a < s->size(); ++a) images.push_back(img[a] ? *img[a] : identity(rep.field(), rep.dim()));
  return MatrixRep<Field>(s, rep.field(), rep.dim(), std::move(images));
}

// Permutation module on the sum-zero vectors, basis e_i - e_{n-1}.
template <class Field>
MatrixRep<Field> standard_rep(Ptr s, const TransformationMonoid& t, const Field& field) {
  const int n = t.points;
  std::vector<Matrix<typename Field::scalar_type>> images;
  for (const auto& sigma : t.maps) {
    auto m = zeros(field, n - 1, n - 1);
    for (int i = 0; i < n - 1; ++i) {
      if (sigma[i] < n - 1) m(sigma[i], i) += field.one();
      if (sigma[n - 1] < n - 1) m(sigma[n - 1], i) -= field.one();
    }
    images.push_back(std::move(m));
  }
  return MatrixRep<Field>(s, field, n - 1, std::move(images));
}

class Pipeline {
 public:
  Pipeline(Ptr s, const AnyField& field, const ReportOptions& opt, bool related = false)
      : s_(std::move(s)), field_(field), opt_(opt), related_(related) {
    auto b = monoidal(*s_);
    t_ = b.added ? share(std::move(b.table)) : s_;
    r_.hash = table_hash(*s_);
    r_.field = std::visit([](const auto& f) { return f.name(); }, field_);
    if (!related_ && opt_.family && opt_.family->table == *s_) {
      family_ = opt_.family;
      r_.family = family_->meta.to_json();
    }
  }

  EffDimReport run() {
    if (t_ != s_) r_.rules_fired.push_back("reduce:adjoin-identity");
    if (s_->zero()) r_.rules_fired.push_back("zero:" + s_->name(*s_->zero()));
    exact_rules();
    lower_bounds();
    related_tables();
    upper_bounds();
    if (opt_.search) search();
    seal();
    return std::move(r_);
  }

 private:
  bool finite() const { return std::holds_alternative<FiniteField>(field_); }
  const FiniteField& ff() const { return std::get<FiniteField>(field_); }

  template <class F>
  decltype(auto) visit_field(F&& f) {
    return std::visit(std::forward<F>(f), field_);
  }

  // Witness given on `on` (S or S•), restricted to S.
  AnyRep to_s(const AnyRep& rep, const Ptr& on) {
    return on == s_ ? rep : carry_any(rep, s_, identity_map(s_->size()));
  }

  void lower(int value, std::string name, nlohmann::json payload = nullptr) {
    r_.lower.push_back({value, std::move(name), std::move(payload)});
  }

  // Verifies and records; a failed witness is a conflict, not an entry.
  bool upper(std::string name, AnyRep rep, nlohmann::json payload = nullptr) {
    const auto chk = verify_any(rep);
    if (!chk.is_homomorphism || !chk.is_effective) {
      r_.conflicts.push_back(name + ": witness failed verification");
      return false;
    }
    const int dim = static_cast<int>(rep_dim(rep));
    r_.upper.push_back({dim, std::move(name), std::move(rep), "", std::move(payload)});
    return true;
  }

  void exact(const std::string& name, int value, AnyRep rep, const std::string& certificate) {
    r_.rules_fired.push_back(name);
    if (rep_dim(rep) != value) r_.conflicts.push_back(name + ": witness dimension differs from the rule value");
    lower(value, name, certificate.empty() ? nlohmann::json(nullptr) : nlohmann::json(certificate));
    upper(name, std::move(rep));
    if (!exact_value_) {
      exact_value_ = value;
    } else if (*exact_value_ != value) {
      r_.conflicts.push_back(name + " gives " + std::to_string(value) + " but an earlier rule gave " +
                             std::to_string(*exact_value_));
    }
  }

  void skipped(const std::string& name, const std::string& why) { r_.rules_fired.push_back(name + ":skipped(" + why + ")"); }

  void exact_rules() {
    if (s_->size() == 1) {
      visit_field([&](const auto& f) {
        exact("trivial", 0, MatrixRep(s_, f, 0, {zeros(f, 0, 0)}), "one element");
      });
    }
    comm_inverse();
    ggm();
    doubly_transitive();
    partinj();
    cyclic();
    rectangular();
    if (family_) r_.rules_fired.push_back("family:" + family_->meta.name);
  }

  void comm_inverse() {
    const auto cb = classify_basic(*t_);
    if (!cb.is_commutative || !cb.is_inverse) return;
    const auto res = effdim_comm_inverse(*t_);
    const std::string name = rule_name(res.rule);
    if (!finite()) {
      exact(name, res.value, to_s(comm_inverse_witness(t_, res), t_), res.certificate);
      return;
    }
    const FiniteField& f = ff();
    for (auto order : res.group_orders)
      if (order % f.characteristic() == 0) return skipped(name, "characteristic divides a group order");
    const auto xi = element_of_order(f, res.exponent);
    if (!xi) return skipped(name, "field lacks the needed roots of unity");
    exact(name, res.value, to_s(character_witness(t_, res.characters, f, *xi), t_), res.certificate);
  }

  void ggm() {
    std::vector<Ptr> tables{s_};
    if (t_ != s_) tables.push_back(t_);
    for (const Ptr& x : tables) {
      const auto cls = classify_ggm(*x);
      if (cls.kind == GGMKind::AGGM) {
        visit_field([&](const auto& f) {
          auto res = aggm_effdim(x, f);
          exact("aggm", res.value, to_s(AnyRep(std::move(res.witness)), x), res.certificate);
        });
        return;
      }
      if (cls.kind != GGMKind::GroupMapping) continue;
      if (finite()) return skipped("group-mapping", "invertibility is decided over Q only");
      const auto& group = cls.rees->group.table;
      if (!classify_basic(group).is_commutative) return skipped("group-mapping", "non-abelian maximal subgroup");
      const Ptr g = share(group);
      const auto gres = effdim_comm_inverse(*g);
      const AnyRep module = comm_inverse_witness(g, gres);
      try {
        std::visit(
            [&](const auto& mod) {
              auto res = group_mapping_effdim(x, gres.value, mod);
              exact("group-mapping", res.value, to_s(AnyRep(std::move(res.witness)), x), res.certificate);
            },
            module);
      } catch (const Error& e) {
        skipped("group-mapping", errc_name(e.code()).data());
      }
      return;
    }
  }

  void doubly_transitive() {
    if (!family_ || !family_->transformations || !family_->transformations->total()) return;
    try {
      visit_field([&](const auto& f) {
        auto res = doubly_transitive_effdim(s_, *family_->transformations, f);
        exact("doubly-transitive", res.value, AnyRep(std::move(res.witness)), "units 2-transitive, singular map present");
      });
    } catch (const Error& e) {
      if (e.code() != Errc::RuleInapplicable) throw;
      skipped("doubly-transitive", e.what());
    }
  }

  void partinj() {
    if (s_->is_monoid() || !classify_basic(*s_).is_nilpotent) return;
    try {
      visit_field([&](const auto& f) {
        auto res = partinj_effdim(s_, f);
        exact("partial-injective", res.value, AnyRep(std::move(res.witness)), res.certificate);
      });
    } catch (const Error& e) {
      if (e.code() != Errc::HypothesesFail) throw;
    }
  }

  void cyclic() {
    if (s_->size() == 1) return;
    const auto gen = monogenic_generator(*s_);
    if (!gen) return;
    if (finite()) return skipped("cyclic", "roots of unity are chosen over Q's surrogate field");
    const auto ip = index_period(*s_, *gen);
    const int m = static_cast<int>(ip.index), n = static_cast<int>(ip.index + ip.period - 1);
    auto res = cyclic_effdim(m, n);
    const CayleyTable c = cyclic_semigroup(m, n);
    const auto iso = find_isomorphism(c, *s_);
    if (!iso) {
      r_.conflicts.push_back("cyclic: table is not isomorphic to C_{m,n}");
      return;
    }
    exact("cyclic", res.value, carry_any(res.witness, s_, invert(*iso)), res.certificate);
  }

  void rectangular() {
    const auto shape = rectangular_shape(*s_);
    if (!shape || s_->size() == 1) return;
    const auto [m, n] = *shape;
    const CayleyTable rb = rectangular_band(static_cast<std::size_t>(m), static_cast<std::size_t>(n));
    const auto iso = find_isomorphism(rb, *s_);
    if (!iso) return;
    try {
      visit_field([&](const auto& f) {
        auto res = rectangular_band_effdim(static_cast<std::size_t>(m), static_cast<std::size_t>(n), f);
        exact("rectangular-band", res.value, carry_any(AnyRep(std::move(res.witness)), s_, invert(*iso)),
              res.certificate);
      });
    } catch (const Error& e) {
      if (e.code() != Errc::FieldTooSmall) throw;
      skipped("rectangular-band", "field too small");
    }
  }

  void lower_bounds() {
    if (s_->size() > 1) lower(1, "nontrivial");
    if (!classify_basic(*s_).is_commutative) lower(2, "noncommutative");
    const auto ch = chain_lengths(*t_);
    lower(ch.idempotent_chain, "idempotent-chain", {{"regular_j_chain", ch.regular_j_chain}});
    lower(cornilp_bound(*s_), "cornilp");
    if (is_left_regular_band(*t_)) {
      const auto b = lrb_lower_bound(*t_);
      lower(b.value, "lrb-support-lattice", b.certificate);
    }
  }

  void upper_bounds() {
    const std::uint64_t ch = std::visit([](const auto& f) { return f.characteristic(); }, field_);
    if (t_->size() <= opt_.materialize_limit) {
      visit_field([&](const auto& f) {
        try {
          auto reg = regular_reps(t_, f);
          upper("regular", to_s(AnyRep(std::move(reg.full)), t_));
          if (reg.reduced)
            upper("reduced-regular:" + reg.reduced_construction, to_s(AnyRep(std::move(*reg.reduced)), t_));
        } catch (const Error& e) {
          if (e.code() != Errc::HypothesisFailed) throw;
          // group minimal ideal of bad characteristic: only the full module
          const std::size_t n = t_->size();
          std::vector<std::vector<int>> maps(n, std::vector<int>(n));
          for (Elem a = 0; a < n; ++a)
            for (Elem b = 0; b < n; ++b) maps[a][b] = static_cast<int>((*t_)(a, b));
          upper("regular", to_s(AnyRep(linearize_partial_action(t_, f, n, maps)), t_));
          skipped("reduced-regular", "characteristic divides the minimal ideal group");
        }
      });
    } else {
      const auto dims = regular_dims(*t_, ch);
      r_.upper.push_back({static_cast<int>(dims.full), "regular", std::nullopt, "left regular module of S•", nullptr});
      if (dims.reduced)
        r_.upper.push_back({static_cast<int>(*dims.reduced), "reduced-regular:" + dims.construction, std::nullopt,
                            "reduced regular module of S•", nullptr});
    }
    if (family_) family_witness();
  }

  void family_witness() {
    const auto& name = family_->meta.name;
    const auto& p = family_->meta.params;
    visit_field([&](const auto& f) {
      try {
        if (name == "N" || name == "CN") {
          GenericOptions g;
          g.seed = opt_.seed;
          auto res = generic_nilpotent_rep(name == "N" ? NilpotentKind::Free : NilpotentKind::FreeCommutative,
                                           p.at("m").get<int>(), p.at("n").get<int>(), f, g);
          upper("generic-nilpotent", AnyRep(std::move(res.rep)), res.sample.to_json(f));
        } else if (name == "S" && family_->transformations && family_->transformations->points >= 2) {
          upper("standard-permutation", AnyRep(standard_rep(s_, *family_->transformations, f)));
        } else if (name == "F") {
          auto res = free_lrb_effdim(p.at("n").get<int>(), f);
          upper("free-lrb-embedding", AnyRep(std::move(res.witness)), res.certificate);
        } else if (name == "sign") {
          upper("sign-power", AnyRep(sign_power_rep(p.at("n").get<int>(), f)));
        } else if (family_->paths && family_->quiver) {
          QuiverOptions q;
          q.seed = opt_.seed;
          auto res = generic_quiver_rep(*family_->paths, *family_->quiver, f, q);
          upper("quiver-generic", AnyRep(std::move(res.rep)),
                {{"dimension_vector", res.dimension_vector}, {"retries_used", res.retries_used}, {"seed", res.seed}});
        }
      } catch (const Error& e) {
        skipped("family-witness", e.what());
      }
    });
  }

  // Exact rules and lower bounds of S^op, of the core B (when S = B•) and
  // of B^op hold for S as well; their witnesses are transposed and/or
  // extended by the identity.
  void related_tables() {
    const auto core = external_identity_core(*s_);
    const Ptr op = share(opposite(*s_));
    struct Rel {
      Ptr table;
      std::string tag;
      bool transpose;
      bool extend;
    };
    std::vector<Rel> rels;
    if (!(*op == *s_)) rels.push_back({op, "op", true, false});
    if (core) {
      rels.push_back({core->table, "core", false, true});
      const Ptr core_op = share(opposite(*core->table));
      if (!(*core_op == *core->table)) rels.push_back({core_op, "core-op", true, true});
    }
    for (const Rel& rel : rels) {
      Pipeline aux(rel.table, field_, opt_, true);
      aux.exact_rules();
      aux.lower_bounds();
      const Ptr base = rel.extend ? core->table : s_;
      auto carry_back = [&](const AnyRep& rep) {
        return std::visit(
            [&](const auto& r) -> AnyRep {
              auto on_base = rel.transpose ? transpose_rep(r, base) : r;
              if (!rel.extend) return on_base;
              return extend_by_identity(on_base, s_, core->to_s);
            },
            rep);
      };
      for (auto& l : aux.r_.lower) {
        if (l.name == "nontrivial" || l.name == "noncommutative") continue;
        lower(l.value, l.name + "@" + rel.tag, std::move(l.payload));
      }
      for (auto& u : aux.r_.upper)
        if (u.witness) upper(u.name + "@" + rel.tag, carry_back(*u.witness), std::move(u.payload));
      for (const auto& f : aux.r_.rules_fired) r_.rules_fired.push_back(f + "@" + rel.tag);
      for (const auto& c : aux.r_.conflicts) r_.conflicts.push_back(c + "@" + rel.tag);
      if (aux.exact_value_) {
        if (!exact_value_) {
          exact_value_ = aux.exact_value_;
        } else if (*exact_value_ != *aux.exact_value_) {
          r_.conflicts.push_back("rules on the " + rel.tag + " table give " + std::to_string(*aux.exact_value_) +
                                 " but S gives " + std::to_string(*exact_value_));
        }
      }
    }
  }

  void search() {
    if (!finite()) return skipped("search", "search runs over finite fields");
    const FiniteField& f = ff();
    if (*f.size() > kSearchMaxField) return skipped("search", "field larger than 16");
    SearchOptions so;
    so.budget = opt_.budget;
    so.jobs = opt_.jobs;
    const int lo = lower_value();
    const auto up = upper_value();
    for (int d = lo; d <= opt_.search_dmax && (!up || d < *up); ++d) {
      try {
        auto res = decide_dim(make_search_task(s_, d, f), so);
        if (res.rep) {
          r_.rules_fired.push_back("search:exists(d=" + std::to_string(d) + ")");
          upper("search", AnyRep(std::move(*res.rep)), {{"nodes", res.nodes}});
          return;
        }
        r_.rules_fired.push_back("search:none(d=" + std::to_string(d) + ")");
        lower(d + 1, "search-exhausted", {{"d", d}, {"nodes", res.nodes}});
      } catch (const Error& e) {
        if (e.code() != Errc::BudgetExceeded && e.code() != Errc::TooLarge) throw;
        r_.rules_fired.push_back("search:" + std::string(errc_name(e.code())) + "(d=" + std::to_string(d) + ")");
        return;
      }
    }
  }

  int lower_value() const {
    int v = 0;
    for (const auto& l : r_.lower) v = std::max(v, l.value);
    return v;
  }
  std::optional<int> upper_value() const {
    std::optional<int> v;
    for (const auto& u : r_.upper) v = v ? std::min(*v, u.value) : u.value;
    return v;
  }

  void seal() {
    const int lo = r_.lower_value();
    const auto up = r_.upper_value();
    if (up && lo > *up) r_.conflicts.push_back("lower bound exceeds upper bound");
    r_.exact = (up && lo == *up) || exact_value_.has_value();
    if (r_.exact) r_.value = exact_value_ ? *exact_value_ : *up;
    if (r_.exact && family_ && !finite() && family_->meta.known_effdim_over_C &&
        *family_->meta.known_effdim_over_C != *r_.value)
      r_.conflicts.push_back("family metadata gives " + std::to_string(*family_->meta.known_effdim_over_C));
  }

  Ptr s_, t_;
  AnyField field_;
  const ReportOptions& opt_;
  bool related_ = false;
  const Family* family_ = nullptr;
  EffDimReport r_;
  std::optional<int> exact_value_;
};

}  // namespace

int EffDimReport::lower_value() const {
  int v = 0;
  for (const auto& l : lower) v = std::max(v, l.value);
  return v;
}

std::optional<int> EffDimReport::upper_value() const {
  std::optional<int> v;
  for (const auto& u : upper) v = v ? std::min(*v, u.value) : u.value;
  return v;
}

nlohmann::json EffDimReport::to_json(bool with_witnesses) const {
  nlohmann::json lo = nlohmann::json::array(), up = nlohmann::json::array();
  for (const auto& l : lower) lo.push_back({{"value", l.value}, {"certificate", l.name}, {"payload", l.payload}});
  for (const auto& u : upper) {
    nlohmann::json e{{"value", u.value}, {"certificate", u.name}, {"payload", u.payload}};
    if (u.witness) {
      e["witness_field"] = std::visit([](const auto& r) { return r.field().name(); }, *u.witness);
      e["witness"] = with_witnesses ? encode_any_rep(*u.witness) : nlohmann::json("omitted");
    } else {
      e["witness"] = nullptr;
      e["construction"] = u.construction;
    }
    up.push_back(std::move(e));
  }
  nlohmann::json j{{"hash", hash},   {"field", field}, {"lower", lo}, {"upper", up}, {"exact", exact},
                   {"rules_fired", rules_fired}, {"conflicts", conflicts}};
  j["value"] = value ? nlohmann::json(*value) : nlohmann::json(nullptr);
  if (!family.is_null()) j["family"] = family;
  return j;
}

EffDimReport effdim_interval(std::shared_ptr<const CayleyTable> s, const AnyField& field, const ReportOptions& opt) {
  return Pipeline(std::move(s), field, opt).run();
}

bool reverify_report(std::shared_ptr<const CayleyTable> s, const nlohmann::json& report) {
  if (report.at("hash").get<std::string>() != table_hash(*s)) return false;
  try {
    for (const auto& u : report.at("upper")) {
      if (!u.at("witness").is_object()) continue;
      const AnyRep rep = decode_any_rep(s, u.at("witness"));
      const auto chk = verify_any(rep);
      if (!chk.is_homomorphism || !chk.is_effective || rep_dim(rep) != u.at("value").get<int>()) return false;
    }
  } catch (const Error&) {
    return false;
  } catch (const nlohmann::json::exception&) {
    return false;
  }
  return true;
}

}  // namespace effdim
