// Command-line front end: analyze tables, print certified bounds, run the
// exhaustive search, emit family tables and regenerate the table of known
// values.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "effdim/bands.hpp"
#include "effdim/duality.hpp"
#include "effdim/families.hpp"
#include "effdim/greens.hpp"
#include "effdim/io.hpp"
#include "effdim/nilpotent.hpp"
#include "effdim/quiver.hpp"
#include "effdim/report.hpp"
#include "effdim/search.hpp"

using namespace effdim;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitMalformed = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Input {
  std::shared_ptr<const CayleyTable> table;
  std::optional<Family> family;
};

fs::path sidecar_path(const fs::path& table_path) {
  fs::path p = table_path;
  p.replace_extension(".meta.json");
  return p;
}

// A family sidecar written by `family --emit` restores the construction
// data (transformations, quiver) the rules can use.
std::optional<Family> family_from_sidecar(const fs::path& table_path, const CayleyTable& t) {
  const fs::path side = sidecar_path(table_path);
  if (!fs::exists(side)) return std::nullopt;
  const json j = read_json_file(side);
  if (!j.contains("family") || !j.contains("params")) return std::nullopt;
  try {
    Family f = make_family(j.at("family").get<std::string>(), j.at("params"));
    if (f.table == t) return f;
  } catch (const Error&) {
  }
  return std::nullopt;
}

PathKind path_kind(const std::string& k) {
  if (k == "path") return PathKind::Path;
  if (k == "truncated") return PathKind::Truncated;
  if (k == "incidence") return PathKind::Incidence;
  throw Error(Errc::Malformed, "quiver kind must be path, truncated or incidence");
}

// JSON files with a "quiver" key describe a quiver semigroup:
// {"quiver": {...}, "kind": "path" | "truncated" | "incidence", "N": int}.
Input load_input(const std::string& path) {
  Input in;
  if (fs::path(path).extension() == ".json") {
    const json j = read_json_file(path);
    if (j.is_object() && j.contains("quiver")) {
      try {
        const Quiver q = Quiver::from_json(j.at("quiver"));
        const PathKind kind = path_kind(j.value("kind", std::string("path")));
        PathSemigroup ps = build_path_semigroup(kind, q, j.value("N", 0));
        Family f;
        f.table = ps.table;
        f.meta.name = "quiver";
        f.meta.params = j;
        f.meta.source = "none";
        f.quiver = q;
        f.paths = std::move(ps);
        in.table = std::make_shared<const CayleyTable>(f.table);
        in.family = std::move(f);
        return in;
      } catch (const json::exception& e) {
        throw Error(Errc::Malformed, path + ": " + e.what());
      }
    }
    in.table = std::make_shared<const CayleyTable>(table_from_json(j));
  } else {
    in.table = std::make_shared<const CayleyTable>(load_table(path));
  }
  in.family = family_from_sidecar(path, *in.table);
  return in;
}

AnyField parse_field(const std::string& text) {
  try {
    return to_field(FieldSpec::parse(text));
  } catch (const Error& e) {
    throw UsageError(std::string("--field: ") + e.what());
  }
}

FiniteField parse_finite_field(const std::string& text) {
  const AnyField f = parse_field(text);
  if (!std::holds_alternative<FiniteField>(f)) throw UsageError("--field must be a finite field for this command");
  return std::get<FiniteField>(f);
}

json parse_value(const std::string& v) {
  try {
    return json::parse(v);
  } catch (const json::parse_error&) {
    return v;
  }
}

json parse_params(const std::vector<std::string>& kv) {
  json p = json::object();
  for (const auto& item : kv) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("parameter '" + item + "' is not of the form k=v");
    p[item.substr(0, eq)] = parse_value(item.substr(eq + 1));
  }
  return p;
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    if (!content.empty() && content.back() != '\n') std::cout << "\n";
  } else {
    write_file_atomic(path, content.back() == '\n' ? content : content + "\n");
  }
}

struct ReportArgs {
  std::string file;
  std::string field = "Q";
  std::uint64_t seed = 1;
  std::uint64_t budget = 100'000'000;
  unsigned jobs = 1;
  bool search = false;
  int dmax = ReportOptions::kSearchDefaultDmax;
  bool json_out = false;
  bool no_cache = false;
  std::string emit_path;
};

void add_report_options(CLI::App* c, ReportArgs& a) {
  c->add_option("file", a.file, "table (.cay, .json, or a quiver .json)")->required();
  c->add_option("--field", a.field, "Q, Fp:p or Fq:p,k")->capture_default_str();
  c->add_option("--seed", a.seed, "seed for generic witnesses")->capture_default_str();
  c->add_option("--budget", a.budget, "search node budget")->capture_default_str();
  c->add_option("--jobs", a.jobs, "search threads")->capture_default_str();
  c->add_flag("--search", a.search, "refine by exhaustive search (finite fields)");
  c->add_option("--dmax", a.dmax, "largest dimension searched")->capture_default_str();
  c->add_flag("--json", a.json_out, "print JSON");
  c->add_flag("--no-cache", a.no_cache, "ignore EFFDIM_CACHE_DIR");
  c->add_option("--emit", a.emit_path, "write the output to this file");
}

// Report JSON with witnesses, through the cache when one is configured.
json compute_report(const ReportArgs& a, const Input& in) {
  const AnyField field = parse_field(a.field);
  ReportOptions opt;
  opt.seed = a.seed;
  opt.budget = a.budget;
  opt.jobs = a.jobs;
  opt.search = a.search;
  opt.search_dmax = a.dmax;
  opt.family = in.family ? &*in.family : nullptr;
  const std::string field_name = std::visit([](const auto& f) { return f.name(); }, field);
  const json key_opts{{"seed", a.seed},
                      {"budget", a.budget},
                      {"search", a.search},
                      {"dmax", a.dmax},
                      {"family", in.family ? in.family->meta.to_json() : json(nullptr)}};
  std::optional<ResultCache> cache = a.no_cache ? std::nullopt : ResultCache::from_env();
  const std::string key = ResultCache::key(*in.table, field_name, key_opts);
  if (cache)
    if (auto hit = cache->get(key); hit && reverify_report(in.table, *hit)) return *hit;
  json r = effdim_interval(in.table, field, opt).to_json(true);
  if (cache) cache->put(key, r);
  return r;
}

std::string interval_text(const json& r) {
  if (r.at("exact").get<bool>()) return std::to_string(r.at("value").get<int>());
  int lo = 0;
  for (const auto& l : r.at("lower")) lo = std::max(lo, l.at("value").get<int>());
  std::optional<int> up;
  for (const auto& u : r.at("upper")) up = up ? std::min(*up, u.at("value").get<int>()) : u.at("value").get<int>();
  return "[" + std::to_string(lo) + ", " + (up ? std::to_string(*up) : std::string("?")) + "]";
}

std::string payload_text(const json& p) {
  if (p.is_null()) return "";
  if (p.is_string()) return p.get<std::string>();
  return p.dump();
}

std::string bounds_text(const json& r) {
  std::ostringstream out;
  out << "field " << r.at("field").get<std::string>() << "\n";
  out << "effective dimension " << interval_text(r) << (r.at("exact").get<bool>() ? " (exact)" : "") << "\n";
  out << "lower bounds:\n";
  for (const auto& l : r.at("lower")) {
    out << "  " << l.at("value") << "  " << l.at("certificate").get<std::string>();
    const auto p = payload_text(l.at("payload"));
    if (!p.empty()) out << ": " << p;
    out << "\n";
  }
  out << "upper bounds:\n";
  for (const auto& u : r.at("upper")) {
    out << "  " << u.at("value") << "  " << u.at("certificate").get<std::string>();
    out << (u.at("witness").is_object() ? " (verified witness)" : " (construction only)") << "\n";
  }
  out << "rules fired:";
  for (const auto& f : r.at("rules_fired")) out << " " << f.get<std::string>();
  out << "\n";
  for (const auto& c : r.at("conflicts")) out << "conflict: " << c.get<std::string>() << "\n";
  return out.str();
}

// The first certificate naming an exact rule, i.e. one appearing both as a
// lower and an upper entry with the report's value.
std::string exact_certificate(const json& r) {
  if (!r.at("exact").get<bool>()) return "";
  const int v = r.at("value").get<int>();
  for (const auto& l : r.at("lower")) {
    if (l.at("value").get<int>() != v) continue;
    for (const auto& u : r.at("upper"))
      if (u.at("certificate") == l.at("certificate")) {
        const auto p = payload_text(l.at("payload"));
        return l.at("certificate").get<std::string>() + (p.empty() ? "" : ": " + p);
      }
  }
  std::string lo, up;
  for (const auto& l : r.at("lower"))
    if (l.at("value").get<int>() == v && lo.empty()) lo = l.at("certificate").get<std::string>();
  for (const auto& u : r.at("upper"))
    if (u.at("value").get<int>() == v && up.empty()) up = u.at("certificate").get<std::string>();
  return "lower " + lo + ", upper " + up;
}

json structure_json(const CayleyTable& s) {
  const auto f = classify_basic(s);
  const auto g = derive_structure(s);
  const auto ch = chain_lengths(s, g);
  json j{{"size", s.size()},
         {"hash", table_hash(s)},
         {"identity", s.identity() ? json(s.name(*s.identity())) : json(nullptr)},
         {"zero", s.zero() ? json(s.name(*s.zero())) : json(nullptr)},
         {"monoid", f.is_monoid},
         {"group", f.is_group},
         {"commutative", f.is_commutative},
         {"band", f.is_band},
         {"inverse", f.is_inverse},
         {"left_regular_band", f.is_left_regular_band},
         {"nilpotent", f.is_nilpotent},
         {"nilpotency_index", f.nilpotency_index},
         {"idempotents", g.idempotents.size()},
         {"green", {{"R", g.num_r}, {"L", g.num_l}, {"J", g.num_j}, {"H", g.num_h}}},
         {"minimal_ideal_size", g.minimal_ideal.size()},
         {"idempotent_chain", ch.idempotent_chain},
         {"regular_j_chain", ch.regular_j_chain},
         {"cornilp", cornilp_bound(s)}};
  return j;
}

int cmd_analyze(const ReportArgs& a) {
  const Input in = load_input(a.file);
  json out{{"structure", structure_json(*in.table)}, {"report", compute_report(a, in)}};
  if (in.family) out["family"] = in.family->meta.to_json();
  if (a.json_out) {
    emit(a.emit_path, out.dump(2));
    return kExitOk;
  }
  std::ostringstream txt;
  const auto& st = out["structure"];
  txt << "elements " << st["size"] << ", hash " << st["hash"].get<std::string>() << "\n";
  txt << "identity " << st["identity"].dump() << ", zero " << st["zero"].dump() << "\n";
  txt << "flags:";
  for (const char* k : {"monoid", "group", "commutative", "band", "inverse", "left_regular_band", "nilpotent"})
    if (st[k].get<bool>()) txt << " " << k;
  txt << "\n";
  txt << "Green's classes R " << st["green"]["R"] << ", L " << st["green"]["L"] << ", J " << st["green"]["J"] << ", H "
      << st["green"]["H"] << "; idempotents " << st["idempotents"] << "\n";
  txt << "idempotent chain " << st["idempotent_chain"] << ", regular J chain " << st["regular_j_chain"]
      << ", power bound " << st["cornilp"] << "\n";
  if (in.family) txt << "family " << in.family->meta.name << " " << in.family->meta.params.dump() << "\n";
  txt << bounds_text(out["report"]);
  emit(a.emit_path, txt.str());
  return kExitOk;
}

int cmd_bounds(const ReportArgs& a) {
  const Input in = load_input(a.file);
  json r = compute_report(a, in);
  if (a.json_out) {
    emit(a.emit_path, r.dump(2));
  } else {
    emit(a.emit_path, bounds_text(r));
  }
  return kExitOk;
}

int cmd_exact(const ReportArgs& a) {
  const Input in = load_input(a.file);
  json r = compute_report(a, in);
  if (a.json_out) {
    json brief{{"value", r["value"]}, {"exact", r["exact"]}, {"interval", interval_text(r)},
               {"certificate", exact_certificate(r)}, {"hash", r["hash"]}, {"field", r["field"]}};
    emit(a.emit_path, brief.dump(2));
  } else if (r.at("exact").get<bool>()) {
    emit(a.emit_path, interval_text(r) + "\ncertificate " + exact_certificate(r) + "\n");
  } else {
    emit(a.emit_path, interval_text(r) + "\nnot exact; run `bounds` for the certificates\n");
  }
  return kExitOk;
}

int cmd_witness(const ReportArgs& a) {
  const Input in = load_input(a.file);
  json r = compute_report(a, in);
  const json* best = nullptr;
  for (const auto& u : r.at("upper"))
    if (u.at("witness").is_object() && (!best || u.at("value").get<int>() < best->at("value").get<int>())) best = &u;
  if (!best) {
    std::cerr << "no materialized witness\n";
    return kExitFailure;
  }
  json out = best->at("witness");
  if (!a.json_out) out["certificate"] = best->at("certificate");
  emit(a.emit_path, out.dump(2));
  return kExitOk;
}

struct SearchArgs {
  std::string file;
  std::string field = "Fp:2";
  std::uint64_t budget = 100'000'000;
  unsigned jobs = 1;
  int dmax = kSearchMaxDim;
  bool json_out = false;
  std::string emit_path;
};

int cmd_search(const SearchArgs& a) {
  const Input in = load_input(a.file);
  const FiniteField f = parse_finite_field(a.field);
  SearchOptions so;
  so.budget = a.budget;
  so.jobs = a.jobs;
  try {
    const FqResult res = effdim_over_Fq(in.table, f, a.dmax, so);
    json out{{"field", f.name()},
             {"kind", res.kind == FqKind::Exact ? "exact" : "lower-bound-only"},
             {"value", res.value},
             {"nodes_per_dim", res.nodes_per_dim}};
    if (res.witness) out["witness"] = encode_rep(*res.witness);
    if (a.json_out) {
      emit(a.emit_path, out.dump(2));
    } else if (res.kind == FqKind::Exact) {
      emit(a.emit_path, std::to_string(res.value) + "\n");
    } else {
      emit(a.emit_path, "greater than " + std::to_string(res.value) + " (every d <= " + std::to_string(res.value) +
                            " refuted)\n");
    }
    return kExitOk;
  } catch (const Error& e) {
    if (e.code() != Errc::BudgetExceeded && e.code() != Errc::TooLarge) throw;
    std::cout << e.what() << "\n";
    return kExitFailure;
  }
}

int cmd_family(const std::string& name, const std::vector<std::string>& kv, const std::string& emit_path,
               bool json_out) {
  const json params = parse_params(kv);
  Family f;
  try {
    f = make_family(name, params);
  } catch (const Error& e) {
    if (e.code() == Errc::UnknownFamily) {
      // cited-only entries still have metadata
      try {
        const FamilyMetadata meta = family_metadata(name, params);
        std::cout << meta.to_json().dump(2) << "\n";
        std::cerr << "no constructor for " << name << "; metadata only\n";
        return kExitFailure;
      } catch (const Error&) {
      }
    }
    throw;
  }
  const json side{{"family", name}, {"params", params}, {"metadata", f.meta.to_json()}, {"size", f.table.size()},
                  {"hash", table_hash(f.table)}};
  if (!emit_path.empty()) {
    save_table(emit_path, f.table);
    write_file_atomic(sidecar_path(emit_path), side.dump(2) + "\n");
  }
  if (json_out) {
    std::cout << side.dump(2) << "\n";
  } else {
    std::cout << name << " " << params.dump() << ": " << f.table.size() << " elements";
    if (f.meta.known_effdim_over_C) std::cout << ", effective dimension over C " << *f.meta.known_effdim_over_C;
    std::cout << "\n";
    if (!emit_path.empty()) std::cout << "wrote " << emit_path << " and " << sidecar_path(emit_path).string() << "\n";
  }
  return kExitOk;
}

int cmd_table(int max_n, const std::string& field, bool json_out, const std::string& emit_path) {
  const TableDocument doc = report_table(max_n, parse_field(field));
  emit(emit_path, json_out ? doc.to_json().dump(2) : doc.to_text());
  return kExitOk;
}

int cmd_steinberg(const std::string& file, const std::string& rep_file, int k_max, bool json_out) {
  const Input in = load_input(file);
  AnyRep rep = [&]() {
    try {
      return decode_any_rep(in.table, read_json_file(rep_file));
    } catch (const json::exception& e) {
      throw Error(Errc::Malformed, rep_file + ": " + e.what());
    }
  }();
  const SteinbergResult res = std::visit([&](const auto& r) { return steinberg_bound(r, k_max); }, rep);
  if (json_out) {
    std::cout << json{{"reached", res.reached}, {"k", res.k}, {"annihilator_dims", res.annihilator_dims}}.dump(2)
              << "\n";
  } else if (res.reached) {
    std::cout << res.k << "\n";
  } else {
    std::cout << "no faithful tensor sum up to the requested power\n";
  }
  return res.reached ? kExitOk : kExitFailure;
}

int cmd_dual(const std::string& file, const std::string& emit_path, bool json_out) {
  const Input in = load_input(file);
  const DualMonoid d = dual_monoid(*in.table);
  if (!emit_path.empty()) {
    save_table(emit_path, d.table);
    write_file_atomic(sidecar_path(emit_path), d.sidecar().dump(2) + "\n");
  }
  if (json_out) {
    std::cout << json{{"table", table_to_json(d.table)}, {"sidecar", d.sidecar()}}.dump(2) << "\n";
  } else {
    std::cout << "dual monoid: " << d.table.size() << " elements, exponent " << d.exponent << "\n";
    if (emit_path.empty()) std::cout << write_cay(d.table);
  }
  return kExitOk;
}

bool is_input_error(Errc c) {
  return c == Errc::Malformed || c == Errc::NotAssociative || c == Errc::IndexOutOfRange;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Effective dimension of finite semigroups"};
  app.require_subcommand(1);

  ReportArgs analyze_a, bounds_a, exact_a, witness_a;
  auto* analyze = app.add_subcommand("analyze", "structure summary and certified bounds");
  add_report_options(analyze, analyze_a);
  auto* bounds = app.add_subcommand("bounds", "every lower and upper certificate");
  add_report_options(bounds, bounds_a);
  auto* exact = app.add_subcommand("exact", "the effective dimension, or the certified interval");
  add_report_options(exact, exact_a);
  auto* witness = app.add_subcommand("witness", "the smallest verified effective representation as JSON");
  add_report_options(witness, witness_a);

  SearchArgs search_a;
  auto* search = app.add_subcommand("search", "exhaustive search over a finite field");
  search->add_option("file", search_a.file, "table")->required();
  search->add_option("--field", search_a.field, "Fp:p or Fq:p,k")->capture_default_str();
  search->add_option("--budget", search_a.budget, "node budget")->capture_default_str();
  search->add_option("--jobs", search_a.jobs, "threads")->capture_default_str();
  search->add_option("--dmax", search_a.dmax, "largest dimension")->capture_default_str()->check(
      CLI::Range(0, kSearchMaxDim));
  search->add_flag("--json", search_a.json_out, "print JSON");
  search->add_option("--emit", search_a.emit_path, "write the output to this file");

  std::string fam_name, fam_emit;
  std::vector<std::string> fam_kv;
  bool fam_json = false;
  auto* family = app.add_subcommand("family", "build a family member: NAME k=v ...");
  family->add_option("name", fam_name, "family name")->required();
  family->add_option("params", fam_kv, "parameters k=v (values are JSON, e.g. sizes=[2,2])");
  family->add_option("--emit", fam_emit, "write the table (.cay or .json) and a .meta.json sidecar");
  family->add_flag("--json", fam_json, "print JSON");

  int max_n = 3;
  std::string table_field = "Q", table_emit;
  bool table_json = false;
  auto* table = app.add_subcommand("table", "regenerate the table of known values and diff it");
  table->add_option("--max-n", max_n, "parameter cap")->capture_default_str()->check(CLI::Range(1, 4));
  table->add_option("--field", table_field, "field")->capture_default_str();
  table->add_flag("--json", table_json, "print JSON");
  table->add_option("--emit", table_emit, "write the output to this file");

  std::string st_file, st_rep;
  int st_kmax = -1;
  bool st_json = false;
  auto* steinberg = app.add_subcommand("steinberg", "least k with V^(x)0 + ... + V^(x)k faithful");
  steinberg->add_option("file", st_file, "table")->required();
  steinberg->add_option("rep", st_rep, "representation JSON")->required();
  steinberg->add_option("--k-max", st_kmax, "largest tensor power (default |S•|)");
  steinberg->add_flag("--json", st_json, "print JSON");

  std::string dual_file, dual_emit;
  bool dual_json = false;
  auto* dual = app.add_subcommand("dual", "dual monoid of a commutative inverse monoid");
  dual->add_option("file", dual_file, "table")->required();
  dual->add_option("--emit", dual_emit, "write the dual table and its sidecar");
  dual->add_flag("--json", dual_json, "print JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*analyze) return cmd_analyze(analyze_a);
    if (*bounds) return cmd_bounds(bounds_a);
    if (*exact) return cmd_exact(exact_a);
    if (*witness) return cmd_witness(witness_a);
    if (*search) return cmd_search(search_a);
    if (*family) return cmd_family(fam_name, fam_kv, fam_emit, fam_json);
    if (*table) return cmd_table(max_n, table_field, table_json, table_emit);
    if (*steinberg) return cmd_steinberg(st_file, st_rep, st_kmax, st_json);
    if (*dual) return cmd_dual(dual_file, dual_emit, dual_json);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return is_input_error(e.code()) ? kExitMalformed : kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
