#pragma once

// Table files and the on-disk result cache.
//
// ".cay" text: '#' starts a comment line, the first other line is n, then n
// rows of n space-separated 0-based indices, then optionally one line
// "names: l_0 ... l_{n-1}". JSON: {"n": int, "table": [[int]], "names": [str]}.

#include <filesystem>
#include <istream>
#include <optional>
#include <string>

#include "effdim/semigroup.hpp"
#include "json.hpp"

namespace effdim {

// Malformed errors carry "<source>:<line>: ..." prefixes; a well-formed but
// non-associative table raises NotAssociative from validation.
CayleyTable parse_cay(std::istream& in, const std::string& source = "<input>");
CayleyTable parse_cay_string(const std::string& text, const std::string& source = "<input>");
std::string write_cay(const CayleyTable& s);

CayleyTable table_from_json(const nlohmann::json& j);
nlohmann::json table_to_json(const CayleyTable& s);

// ".json" files are JSON tables, anything else is read as ".cay".
CayleyTable load_table(const std::filesystem::path& path);
void save_table(const std::filesystem::path& path, const CayleyTable& s);

nlohmann::json read_json_file(const std::filesystem::path& path);
// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

// Append-only JSON store keyed by SHA-256 of table bytes, field descriptor
// and the options that influence the result.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir);
  // Cache under $EFFDIM_CACHE_DIR, or none when the variable is unset/empty.
  static std::optional<ResultCache> from_env();

  static std::string key(const CayleyTable& s, const std::string& field, const nlohmann::json& options);
  std::optional<nlohmann::json> get(const std::string& key) const;
  void put(const std::string& key, const nlohmann::json& value) const;
  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
};

}  // namespace effdim
