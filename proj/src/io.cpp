#include "effdim/io.hpp"

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <unistd.h>

#include "effdim/error.hpp"

namespace effdim {

namespace {

[[noreturn]] void malformed(const std::string& source, std::size_t line, const std::string& what) {
  throw Error(Errc::Malformed, source + ":" + std::to_string(line) + ": " + what);
}

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::int64_t parse_index(const std::string& tok, const std::string& source, std::size_t line) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(tok, &used);
  } catch (const std::exception&) {
    malformed(source, line, "'" + tok + "' is not an integer");
  }
  if (used != tok.size()) malformed(source, line, "'" + tok + "' is not an integer");
  return v;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

}  // namespace

CayleyTable parse_cay(std::istream& in, const std::string& source) {
  std::optional<std::size_t> n;
  std::vector<std::vector<std::int64_t>> rows;
  std::vector<std::string> names;
  bool names_seen = false;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (names_seen) malformed(source, lineno, "content after the names line");
    if (!n) {
      const auto toks = split_ws(line);
      if (toks.size() != 1) malformed(source, lineno, "expected the element count on its own line");
      const std::int64_t v = parse_index(toks[0], source, lineno);
      if (v < 1) malformed(source, lineno, "element count must be positive");
      n = static_cast<std::size_t>(v);
      continue;
    }
    if (line.rfind("names:", 0) == 0) {
      if (rows.size() != *n) malformed(source, lineno, "names line before all " + std::to_string(*n) + " rows");
      names = split_ws(line.substr(6));
      if (names.size() != *n)
        malformed(source, lineno, "expected " + std::to_string(*n) + " names, got " + std::to_string(names.size()));
      names_seen = true;
      continue;
    }
    if (rows.size() == *n) malformed(source, lineno, "more than " + std::to_string(*n) + " rows");
    const auto toks = split_ws(line);
    if (toks.size() != *n)
      malformed(source, lineno, "expected " + std::to_string(*n) + " entries, got " + std::to_string(toks.size()));
    std::vector<std::int64_t> row;
    for (const auto& t : toks) {
      const std::int64_t v = parse_index(t, source, lineno);
      if (v < 0 || v >= static_cast<std::int64_t>(*n))
        malformed(source, lineno, "entry " + t + " outside 0.." + std::to_string(*n - 1));
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  if (!n) malformed(source, lineno, "missing element count");
  if (rows.size() != *n)
    malformed(source, lineno, "expected " + std::to_string(*n) + " rows, got " + std::to_string(rows.size()));
  return CayleyTable::validate(rows, std::move(names));
}

CayleyTable parse_cay_string(const std::string& text, const std::string& source) {
  std::istringstream in(text);
  return parse_cay(in, source);
}

std::string write_cay(const CayleyTable& s) {
  std::ostringstream out;
  out << s.size() << "\n";
  for (Elem a = 0; a < s.size(); ++a) {
    for (Elem b = 0; b < s.size(); ++b) out << (b ? " " : "") << s(a, b);
    out << "\n";
  }
  if (!s.names().empty()) {
    out << "names:";
    for (const auto& nm : s.names()) out << " " << nm;
    out << "\n";
  }
  return out.str();
}

CayleyTable table_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object() || !j.contains("table")) throw Error(Errc::Malformed, "expected an object with a \"table\" key");
    const auto rows = j.at("table").get<std::vector<std::vector<std::int64_t>>>();
    if (j.contains("n") && j.at("n").get<std::size_t>() != rows.size())
      throw Error(Errc::Malformed, "\"n\" disagrees with the number of rows");
    std::vector<std::string> names;
    if (j.contains("names")) names = j.at("names").get<std::vector<std::string>>();
    if (!names.empty() && names.size() != rows.size()) throw Error(Errc::Malformed, "one name per element is required");
    return CayleyTable::validate(rows, std::move(names));
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::Malformed, std::string("table JSON: ") + e.what());
  }
}

nlohmann::json table_to_json(const CayleyTable& s) {
  std::vector<std::vector<Elem>> rows(s.size());
  for (Elem a = 0; a < s.size(); ++a)
    for (Elem b = 0; b < s.size(); ++b) rows[a].push_back(s(a, b));
  nlohmann::json j{{"n", s.size()}, {"table", rows}};
  if (!s.names().empty()) j["names"] = s.names();
  return j;
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Malformed, path.string() + ": cannot open");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::Malformed, path.string() + ": " + e.what());
  }
}

CayleyTable load_table(const std::filesystem::path& path) {
  if (path.extension() == ".json") return table_from_json(read_json_file(path));
  std::ifstream in(path);
  if (!in) throw Error(Errc::Malformed, path.string() + ": cannot open");
  return parse_cay(in, path.string());
}

void save_table(const std::filesystem::path& path, const CayleyTable& s) {
  write_file_atomic(path, path.extension() == ".json" ? table_to_json(s).dump(2) + "\n" : write_cay(s));
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  static std::atomic<unsigned> counter{0};
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid()) + "." +
         std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id())) + "." + std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::Malformed, tmp.string() + ": cannot write");
    out << content;
    if (!out.flush()) throw Error(Errc::Malformed, tmp.string() + ": write failed");
  }
  std::filesystem::rename(tmp, path);
}

ResultCache::ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) { std::filesystem::create_directories(dir_); }

std::optional<ResultCache> ResultCache::from_env() {
  const char* d = std::getenv("EFFDIM_CACHE_DIR");
  if (!d || !*d) return std::nullopt;
  return ResultCache(d);
}

std::string ResultCache::key(const CayleyTable& s, const std::string& field, const nlohmann::json& options) {
  std::string bytes = table_bytes(s);
  bytes.push_back('\0');
  bytes += field;
  bytes.push_back('\0');
  bytes += options.dump();  // keys are sorted, so the dump is canonical
  return sha256_hex(bytes);
}

std::optional<nlohmann::json> ResultCache::get(const std::string& key) const {
  const auto path = dir_ / (key + ".json");
  std::ifstream in(path);
  if (!in) return std::nullopt;
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error&) {
    return std::nullopt;  // a foreign or truncated file is a miss
  }
}

void ResultCache::put(const std::string& key, const nlohmann::json& value) const {
  write_file_atomic(dir_ / (key + ".json"), value.dump() + "\n");
}

}  // namespace effdim
