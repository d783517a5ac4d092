#include "effdim/search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <map>
#include <tuple>
#include <mutex>
#include <thread>
#include <unordered_map>

namespace effdim {

namespace {

struct Tables {
  int q = 2;
  bool prime = false;
  std::vector<std::uint8_t> add, mul, neg;

  explicit Tables(const FiniteField& f) {
    q = static_cast<int>(*f.size());
    prime = f.characteristic() == static_cast<std::uint64_t>(q);
    add.resize(q * q);
    mul.resize(q * q);
    neg.resize(q);
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b) {
        add[a * q + b] = static_cast<std::uint8_t>((f.element(a) + f.element(b)).value());
        mul[a * q + b] = static_cast<std::uint8_t>((f.element(a) * f.element(b)).value());
      }
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b)
        if (add[a * q + b] == 0) neg[a] = static_cast<std::uint8_t>(b);
  }
};

struct Small {
  std::uint8_t e[16] = {};
};

std::uint64_t key_of(const Small& m, int d) {
  std::uint64_t k = 0;
  for (int i = 0; i < d * d; ++i) k |= static_cast<std::uint64_t>(m.e[i]) << (4 * i);
  return k;
}

Small product(const Tables& t, const Small& a, const Small& b, int d) {
  Small c;
  if (t.prime) {
    for (int r = 0; r < d; ++r)
      for (int col = 0; col < d; ++col) {
        unsigned s = 0;
        for (int k = 0; k < d; ++k) s += static_cast<unsigned>(a.e[r * d + k]) * b.e[k * d + col];
        c.e[r * d + col] = static_cast<std::uint8_t>(s % static_cast<unsigned>(t.q));
      }
    return c;
  }
  for (int r = 0; r < d; ++r)
    for (int col = 0; col < d; ++col) {
      std::uint8_t s = 0;
      for (int k = 0; k < d; ++k) s = t.add[s * t.q + t.mul[a.e[r * d + k] * t.q + b.e[k * d + col]]];
      c.e[r * d + col] = s;
    }
  return c;
}

Small decode(std::uint64_t code, int q, int d) {
  Small m;
  for (int i = 0; i < d * d; ++i, code /= static_cast<std::uint64_t>(q)) m.e[i] = static_cast<std::uint8_t>(code % q);
  return m;
}

Matrix<Gf> to_matrix(const FiniteField& f, const Small& m, int d) {
  Matrix<Gf> out = zeros(f, d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) out(r, c) = f.element(m.e[r * d + c]);
  return out;
}

Small from_matrix(const Matrix<Gf>& m) {
  Small s;
  const int d = static_cast<int>(m.rows());
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) s.e[r * d + c] = static_cast<std::uint8_t>(m(r, c).value());
  return s;
}

using Poly = std::vector<std::uint8_t>;  // low to high, monic

// Does monic f divide g?
bool divides(const Tables& t, const Poly& f, Poly g) {
  const std::size_t df = f.size() - 1;
  while (g.size() - 1 >= df && g.size() > 0) {
    const std::uint8_t lead = g.back();
    const std::size_t shift = g.size() - 1 - df;
    for (std::size_t i = 0; i <= df; ++i)
      g[shift + i] = t.add[g[shift + i] * t.q + t.neg[t.mul[lead * t.q + f[i]]]];
    g.pop_back();
    if (g.size() - 1 < df) break;
  }
  for (auto c : g)
    if (c) return false;
  return true;
}

std::vector<Poly> monic_of_degree(int q, int k) {
  std::vector<Poly> out;
  std::uint64_t count = 1;
  for (int i = 0; i < k; ++i) count *= static_cast<std::uint64_t>(q);
  for (std::uint64_t code = 0; code < count; ++code) {
    Poly p(k + 1, 0);
    std::uint64_t c = code;
    for (int i = 0; i < k; ++i, c /= q) p[i] = static_cast<std::uint8_t>(c % q);
    p[k] = 1;
    out.push_back(std::move(p));
  }
  return out;
}

class Searcher {
 public:
  Searcher(const SearchTask& task, const Tables& tables, const std::vector<const std::vector<Small>*>& candidates,
           std::atomic<std::uint64_t>& shared_nodes, std::uint64_t budget, const std::atomic<bool>& stop)
      : t_(task), tb_(tables), s_(*task.semigroup), d_(task.d), n_(s_.size()), cand_(candidates),
        shared_(shared_nodes), budget_(budget), flush_every_(std::clamp<std::uint64_t>(budget / 64, 1, 4096)), stop_(stop) {
    mat_.assign(n_, Small{});
    det_.assign(n_, 0);
    if (t_.unital) {
      const Elem e = *s_.identity();
      Small id;
      for (int i = 0; i < d_; ++i) id.e[i * d_ + i] = 1;
      set(e, id);
    }
  }

  // Explores the branch with the first generator fixed to `root`.
  bool run_root(const Small& root) {
    const std::size_t mark = det_list_.size();
    if (extend(0, root) && dfs(1)) return true;
    undo(mark);
    return false;
  }

  bool exceeded() const { return exceeded_; }
  std::uint64_t local_nodes() const { return local_; }
  const std::vector<Small>& images() const { return mat_; }

  void flush() {
    shared_ += pending_;
    pending_ = 0;
  }

 private:
  void set(Elem x, const Small& m) {
    mat_[x] = m;
    det_[x] = 1;
    seen_[key_of(m, d_)] = x;
    det_list_.push_back(x);
  }

  void undo(std::size_t mark) {
    while (det_list_.size() > mark) {
      const Elem x = det_list_.back();
      det_list_.pop_back();
      det_[x] = 0;
      seen_.erase(key_of(mat_[x], d_));
    }
  }

  bool extend(std::size_t i, const Small& m) {
    const Elem g = t_.gens[i];
    if (det_[g]) return key_of(mat_[g], d_) == key_of(m, d_);
    if (seen_.count(key_of(m, d_))) return false;
    const std::size_t before = det_list_.size();
    set(g, m);
    work_.clear();
    for (std::size_t k = 0; k < before; ++k) work_.emplace_back(det_list_[k], g);
    for (std::size_t h = 0; h <= i; ++h) work_.emplace_back(g, t_.gens[h]);
    for (std::size_t w = 0; w < work_.size(); ++w) {
      const auto [x, h] = work_[w];
      const Elem y = s_(x, h);
      const Small p = product(tb_, mat_[x], mat_[h], d_);
      if (det_[y]) {
        if (key_of(mat_[y], d_) != key_of(p, d_)) return false;
        continue;
      }
      if (seen_.count(key_of(p, d_))) return false;
      set(y, p);
      for (std::size_t hh = 0; hh <= i; ++hh) work_.emplace_back(y, t_.gens[hh]);
    }
    return true;
  }

  bool dfs(std::size_t i) {
    if (i == t_.gens.size()) return true;
    for (const Small& m : *cand_[i]) {
      if (++pending_ >= flush_every_) {
        flush();
        if (shared_.load() > budget_ || stop_.load()) {
          exceeded_ = shared_.load() > budget_;
          return false;
        }
      }
      ++local_;
      const std::size_t mark = det_list_.size();
      if (extend(i, m) && dfs(i + 1)) return true;
      undo(mark);
      if (exceeded_ || stop_.load()) return false;
    }
    return false;
  }

  const SearchTask& t_;
  const Tables& tb_;
  const CayleyTable& s_;
  int d_;
  std::size_t n_;
  const std::vector<const std::vector<Small>*>& cand_;
  std::atomic<std::uint64_t>& shared_;
  std::uint64_t budget_;
  std::uint64_t flush_every_;
  const std::atomic<bool>& stop_;
  std::uint64_t local_ = 0, pending_ = 0;
  bool exceeded_ = false;
  std::vector<Small> mat_;
  std::vector<char> det_;
  std::vector<Elem> det_list_;
  std::unordered_map<std::uint64_t, Elem> seen_;
  std::vector<std::pair<Elem, Elem>> work_;
};

// M generates a copy of the monogenic semigroup with this index and period:
// M^{m+r} = M^m with M, ..., M^{m+r-1} pairwise distinct.
bool matches_type(const Tables& t, const Small& m, int d, const IndexPeriod& ip) {
  const std::size_t len = ip.index + ip.period - 1;
  // A d x d matrix over F_q has at most q^{d^2} distinct powers, but the
  // pattern must fit the semigroup; longer chains use the heap.
  std::uint64_t small_keys[32];
  std::vector<std::uint64_t> big;
  std::uint64_t* keys = small_keys;
  if (len > 32) {
    big.resize(len);
    keys = big.data();
  }
  Small p = m;
  for (std::size_t k = 0; k < len; ++k) {
    const std::uint64_t key = key_of(p, d);
    for (std::size_t j = 0; j < k; ++j)
      if (keys[j] == key) return false;
    keys[k] = key;
    p = product(t, p, m, d);
  }
  return key_of(p, d) == keys[ip.index - 1];
}

// Every matrix with a given power pattern, in code order. Pools are shared
// across calls since sweeps over many small semigroups reuse a few patterns.
std::shared_ptr<const std::vector<Small>> type_pool(const FiniteField& f, const Tables& tb, int d, std::uint64_t total,
                                                    const IndexPeriod& ip) {
  static std::mutex mu;
  static std::map<std::tuple<std::string, int, std::uint32_t, std::uint32_t>, std::shared_ptr<const std::vector<Small>>>
      cache;
  const auto key = std::make_tuple(nlohmann::json(f.spec()).dump(), d, ip.index, ip.period);
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  auto list = std::make_shared<std::vector<Small>>();
  Small m;
  const int cells = d * d;
  for (std::uint64_t c = 0; c < total; ++c) {
    if (matches_type(tb, m, d, ip)) list->push_back(m);
    for (int i = 0; i < cells; ++i) {
      if (++m.e[i] < tb.q) break;
      m.e[i] = 0;
    }
  }
  cache.emplace(key, list);
  return list;
}

constexpr std::uint64_t kMaxCandidates = 1'000'000'000;

void check_limits(const FiniteField& f, int d) {
  if (d > kSearchMaxDim) throw Error(Errc::TooLarge, "search dimension limited to " + std::to_string(kSearchMaxDim));
  if (*f.size() > kSearchMaxField) throw Error(Errc::TooLarge, "search field limited to 16 elements");
}

}  // namespace

std::vector<Matrix<Gf>> conjugacy_representatives(const FiniteField& field, int d) {
  check_limits(field, d);
  const Tables tb(field);
  std::vector<Matrix<Gf>> out;
  if (d == 0) return out;
  // Chains f_1 | f_2 | ... | f_r of monic polynomials of positive degree with
  // total degree d; each gives the block sum of companion matrices.
  std::vector<Poly> chain;
  std::function<void(int)> rec = [&](int left) {
    if (left == 0) {
      Matrix<Gf> m = zeros(field, d, d);
      Index off = 0;
      for (const auto& f : chain) {
        const Index k = static_cast<Index>(f.size()) - 1;
        for (Index i = 1; i < k; ++i) m(off + i, off + i - 1) = field.one();
        for (Index i = 0; i < k; ++i) m(off + i, off + k - 1) = field.element(tb.neg[f[i]]);
        off += k;
      }
      out.push_back(std::move(m));
      return;
    }
    const int min_deg = chain.empty() ? 1 : static_cast<int>(chain.back().size()) - 1;
    for (int k = min_deg; k <= left; ++k)
      for (auto& f : monic_of_degree(tb.q, k)) {
        if (!chain.empty() && !divides(tb, chain.back(), f)) continue;
        chain.push_back(f);
        rec(left - k);
        chain.pop_back();
      }
  };
  rec(d);
  return out;
}

SearchTask make_search_task(std::shared_ptr<const CayleyTable> s, int d, const FiniteField& field) {
  const bool unital = s->identity().has_value();
  std::vector<Elem> gens = greedy_generators(*s, unital);
  if (unital) {
    const Elem e = *s->identity();
    gens.erase(std::remove(gens.begin(), gens.end(), e), gens.end());
  }
  return SearchTask{std::move(s), d, field, std::move(gens), unital};
}

double search_space_log10(const SearchTask& task) {
  return static_cast<double>(task.d) * task.d * static_cast<double>(task.gens.size()) *
         std::log10(static_cast<double>(*task.field.size()));
}

SearchResult decide_dim(const SearchTask& task, const SearchOptions& opt) {
  check_limits(task.field, task.d);
  const CayleyTable& s = *task.semigroup;
  const FiniteField& f = task.field;
  const int d = task.d;
  SearchResult res;
  auto finish = [&](const std::vector<Small>& imgs) {
    std::vector<Matrix<Gf>> m;
    for (Elem a = 0; a < s.size(); ++a) m.push_back(to_matrix(f, imgs[a], d));
    MatrixRep<FiniteField> rep(task.semigroup, f, d, std::move(m));
    const auto& chk = verify_in_place(rep);
    if (!chk.is_homomorphism || !chk.is_effective) throw Error(Errc::Inconsistent, "search produced an invalid witness");
    res.rep = std::move(rep);
  };
  if (d == 0) {
    if (s.size() == 1) finish(std::vector<Small>(1));
    return res;
  }
  if (generated_closure(s, task.gens, task.unital).size() != s.size())
    throw Error(Errc::NotGenerating, "search generators do not generate the semigroup");

  const Tables tb(f);
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> stop{false};
  if (task.gens.empty()) {
    const std::vector<const std::vector<Small>*> none;
    Searcher one(task, tb, none, nodes, opt.budget, stop);
    finish(one.images());
    return res;
  }

  std::uint64_t total = 1;
  for (int i = 0; i < d * d; ++i) {
    total *= static_cast<std::uint64_t>(tb.q);
    if (total > kMaxCandidates) throw Error(Errc::TooLarge, "more than 10^9 candidate matrices per generator");
  }
  // Each generator only ranges over matrices with its own power pattern.
  std::vector<IndexPeriod> types;
  for (Elem g : task.gens) types.push_back(index_period(s, g));
  std::vector<Small> roots;
  if (opt.conjugacy_reduction) {
    for (const auto& m : conjugacy_representatives(f, d)) roots.push_back(from_matrix(m));
  } else {
    for (std::uint64_t c = 0; c < total; ++c) roots.push_back(decode(c, tb.q, d));
  }
  roots.erase(std::remove_if(roots.begin(), roots.end(),
                             [&](const Small& m) { return !matches_type(tb, m, d, types[0]); }),
              roots.end());
  std::vector<std::shared_ptr<const std::vector<Small>>> held;
  std::vector<const std::vector<Small>*> cand(task.gens.size(), &roots);
  for (std::size_t i = 1; i < task.gens.size(); ++i) {
    held.push_back(type_pool(f, tb, d, total, types[i]));
    cand[i] = held.back().get();
  }

  const unsigned jobs = std::max(1u, std::min<unsigned>(opt.jobs, static_cast<unsigned>(roots.size())));
  // Least successful root index wins; roots above it are skipped.
  std::atomic<std::size_t> best{roots.size()};
  std::vector<char> done(roots.size(), 0);
  std::vector<Small> best_images;
  std::mutex mu;
  bool any_exceeded = false;
  auto worker = [&](unsigned w) {
    Searcher sr(task, tb, cand, nodes, opt.budget, stop);
    for (std::size_t r = w; r < roots.size(); r += jobs) {
      if (r > best.load()) break;
      ++nodes;
      const bool ok = sr.run_root(roots[r]);
      sr.flush();
      std::lock_guard<std::mutex> lock(mu);
      if (sr.exceeded()) {
        any_exceeded = true;
        return;
      }
      done[r] = 1;
      if (ok) {
        if (r < best.load()) {
          best = r;
          best_images = sr.images();
        }
        return;
      }
    }
  };
  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(worker, w);
    for (auto& th : pool) th.join();
  }
  res.nodes = nodes.load();
  const std::size_t b = best.load();
  bool prefix_done = true;
  for (std::size_t r = 0; r < std::min(b, roots.size()); ++r) prefix_done = prefix_done && done[r];
  if (prefix_done && b < roots.size()) {
    finish(best_images);
    return res;
  }
  if (prefix_done && b == roots.size() && !any_exceeded) return res;
  throw Error(Errc::BudgetExceeded, "search budget of " + std::to_string(opt.budget) + " assignments exhausted at d = " +
                                        std::to_string(d) + " after " + std::to_string(res.nodes) + " nodes");
}

FqResult effdim_over_Fq(std::shared_ptr<const CayleyTable> s, const FiniteField& field, int d_max,
                        const SearchOptions& opt) {
  FqResult out;
  for (int d = 0; d <= d_max; ++d) {
    if (d == 0 && s->size() > 1) {
      out.nodes_per_dim.push_back(0);
      continue;
    }
    const auto task = make_search_task(s, d, field);
    SearchResult r;
    try {
      r = decide_dim(task, opt);
    } catch (const Error& e) {
      if (e.code() == Errc::BudgetExceeded)
        throw Error(Errc::BudgetExceeded, std::string(e.what()) + "; effdim over F_" + std::to_string(*field.size()) +
                                              " is at least " + std::to_string(d));
      throw;
    }
    out.nodes_per_dim.push_back(r.nodes);
    if (r.rep) {
      out.kind = FqKind::Exact;
      out.value = d;
      out.witness = std::move(r.rep);
      return out;
    }
  }
  out.kind = FqKind::LowerBoundOnly;
  out.value = d_max;
  return out;
}

}  // namespace effdim
