#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>

#include "effdim/io.hpp"
#include "oracles.hpp"

using namespace effdim;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& tag) {
  const fs::path d = fs::temp_directory_path() / ("effdim_io_" + tag + "_" + std::to_string(std::random_device{}()));
  fs::create_directories(d);
  return d;
}

Errc code_of(const std::string& text) {
  try {
    parse_cay_string(text, "t.cay");
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return Errc::Malformed;
}

std::string message_of(const std::string& text) {
  try {
    parse_cay_string(text, "t.cay");
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE(".cay parsing with comments and names") {
  const auto t = parse_cay_string("# left zero\n2\n0 0\n# between rows\n1 1\nnames: a b\n");
  CHECK(t.size() == 2);
  CHECK(t(0, 1) == 0);
  CHECK(t(1, 0) == 1);
  CHECK(t.name(1) == "b");
  CHECK_FALSE(t.identity());
}

TEST_CASE(".cay errors carry line numbers") {
  CHECK(code_of("2\n0 0\n1\n") == Errc::Malformed);
  CHECK(message_of("2\n0 0\n1\n").find("t.cay:3:") != std::string::npos);
  CHECK(message_of("2\n0 0\n1 x\n").find("t.cay:3:") != std::string::npos);
  CHECK(message_of("# c\n\n2\n0 5\n1 1\n").find("t.cay:4:") != std::string::npos);
  CHECK(message_of("2\n0 0\n1 1\n0 0\n").find("t.cay:4:") != std::string::npos);
  CHECK(message_of("2\n0 0\n1 1\nnames: a\n").find("t.cay:4:") != std::string::npos);
  CHECK(code_of("") == Errc::Malformed);
  CHECK(code_of("0\n") == Errc::Malformed);
  CHECK(code_of("2\n0 0\n") == Errc::Malformed);
  // well formed, not associative: x*x = y, y*x = x, everything else y
  CHECK(code_of("2\n1 1\n0 1\n") == Errc::NotAssociative);
}

TEST_CASE("text and JSON round trips") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    const auto t = oracle::random_semigroup(rng, 3, 2, i % 2 == 1);
    CHECK(parse_cay_string(write_cay(t)) == t);
    CHECK(table_from_json(nlohmann::json::parse(table_to_json(t).dump())) == t);
  }
  const auto named = parse_cay_string("1\n0\nnames: e\n");
  CHECK(parse_cay_string(write_cay(named)).name(0) == "e");
  CHECK(table_from_json(table_to_json(named)).name(0) == "e");
}

TEST_CASE("JSON table errors") {
  CHECK_THROWS_AS(table_from_json(nlohmann::json::parse(R"({"n": 3, "table": [[0,0],[0,0]]})")), Error);
  CHECK_THROWS_AS(table_from_json(nlohmann::json::parse(R"({"table": "x"})")), Error);
  CHECK_THROWS_AS(table_from_json(nlohmann::json::parse(R"([1, 2])")), Error);
  try {
    table_from_json(nlohmann::json::parse(R"({"table": [[0, 1], [1]]})"));
    FAIL("ragged table accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::IndexOutOfRange);
  }
}

TEST_CASE("load and save by extension") {
  const fs::path d = scratch_dir("files");
  const auto t = oracle::rectangular(2, 3);
  save_table(d / "r.cay", t);
  save_table(d / "r.json", t);
  CHECK(load_table(d / "r.cay") == t);
  CHECK(load_table(d / "r.json") == t);
  CHECK(read_json_file(d / "r.json").at("n") == 6);
  CHECK_THROWS_AS(load_table(d / "missing.cay"), Error);
  for (const auto& e : fs::directory_iterator(d)) CHECK(e.path().string().find(".tmp.") == std::string::npos);
  fs::remove_all(d);
}

TEST_CASE("result cache") {
  const fs::path d = scratch_dir("cache");
  const ResultCache cache(d);
  const auto a = oracle::cyclic_group(3), b = oracle::cyclic_group(4);
  const nlohmann::json opt{{"seed", 1}, {"search", false}};
  const auto k = ResultCache::key(a, "Q", opt);
  CHECK(k.size() == 64);
  CHECK(k == ResultCache::key(a, "Q", nlohmann::json{{"search", false}, {"seed", 1}}));
  CHECK(k != ResultCache::key(b, "Q", opt));
  CHECK(k != ResultCache::key(a, "F_5", opt));
  CHECK(k != ResultCache::key(a, "Q", nlohmann::json{{"seed", 2}, {"search", false}}));
  CHECK_FALSE(cache.get(k));
  cache.put(k, {{"value", 1}});
  REQUIRE(cache.get(k));
  CHECK(cache.get(k)->at("value") == 1);
  cache.put(k, {{"value", 1}});  // identical rewrite is harmless
  CHECK(cache.get(k)->at("value") == 1);
  { std::ofstream(d / "bad.json") << "{"; }
  CHECK_FALSE(cache.get("bad"));

  ::setenv("EFFDIM_CACHE_DIR", (d / "env").string().c_str(), 1);
  const auto env = ResultCache::from_env();
  REQUIRE(env);
  CHECK(fs::is_directory(d / "env"));
  ::setenv("EFFDIM_CACHE_DIR", "", 1);
  CHECK_FALSE(ResultCache::from_env());
  fs::remove_all(d);
}
