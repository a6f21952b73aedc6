#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "dgc/cli.hpp"
#include "dgc/workspace.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kFixtures = (fs::path(DGC_SOURCE_DIR) / "fixtures" / "fixtures.json").string();

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = dgc::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("dgc_cli_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
    return (path / name).string();
  }
};

std::string workspace(const std::string& grading, const std::string& entities) {
  return R"({"format": 1, "field": 2, "grading": ")" + grading + R"(", "entities": )" + entities + "}";
}

const std::string kDual = R"({"kind": "category", "objects": ["*"],
  "hom": {"*|*": {"basis": {"0": ["1", "x"]}}},
  "comp": [{"left": "*|*:1", "right": "*|*:1", "out": ["*|*:1"]},
           {"left": "*|*:1", "right": "*|*:x", "out": ["*|*:x"]},
           {"left": "*|*:x", "right": "*|*:1", "out": ["*|*:x"]}],
  "units": {"*": ["*|*:1"]}})";

std::size_t count(const std::string& s, const std::string& what) {
  std::size_t n = 0;
  for (auto p = s.find(what); p != std::string::npos; p = s.find(what, p + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("hochschild reports") {
  auto k = run({"hochschild", kFixtures, "--cat", "unitK", "--trunc", "4"});
  CHECK(k.code == 0);
  CHECK(k.out.rfind("t 0 betti 1 safe\n", 0) == 0);

  auto d = run({"hochschild", kFixtures, "--cat", "dual", "--trunc", "8", "--max-degree", "4"});
  CHECK(d.code == 0);
  CHECK(count(d.out, "betti 2 safe") == 5);

  auto v = run({"hochschild", kFixtures, "--cat", "dual", "--trunc", "8", "--max-degree", "4", "--via-adj"});
  CHECK(v.code == 0);
  CHECK(v.out == d.out);

  auto one = run({"hochschild", kFixtures, "--cat", "dual", "--trunc", "6", "--threads", "1"});
  auto many = run({"hochschild", kFixtures, "--cat", "dual", "--trunc", "6", "--threads", "4"});
  CHECK(one.out == many.out);
}

TEST_CASE("exit codes") {
  TempDir dir;
  CHECK(run({"validate", kFixtures}).code == 0);

  // d(c) = b, d(b) = a.
  auto broken = dir.write("broken.json", workspace("Z", R"({"bad": {"kind": "complex",
    "basis": {"0": ["a"], "1": ["b"], "2": ["c"]}, "d": [{"from": "c", "to": ["b"]}, {"from": "b", "to": ["a"]}]}})"));
  auto v = run({"validate", broken});
  CHECK(v.code == 1);
  CHECK((v.out + v.err).find("degree 2") != std::string::npos);

  auto t = run({"compose", kFixtures, "--left", "diag_a2", "--right", "diag_a2", "--trunc", "3", "--max-degree", "5"});
  CHECK(t.code == 2);
  auto u = run({"compose", kFixtures, "--left", "diag_a2", "--right", "diag_a2", "--trunc", "3", "--max-degree", "5",
                "--allow-unverified"});
  CHECK(u.code == 0);
  CHECK(u.out.find("t 5 betti 0 unverified") != std::string::npos);
  CHECK(u.out.find("t 2 betti 0 safe") != std::string::npos);

  auto junk = dir.write("junk.json", "{ not json");
  CHECK(run({"validate", junk}).code == 3);
  auto unknown = dir.write("unknown.json", workspace("Z", R"({"m": {"kind": "matrix"}})"));
  auto s = run({"validate", unknown});
  CHECK(s.code == 3);
  CHECK(s.err.find("/entities/m/kind") != std::string::npos);
  CHECK(run({"frobnicate"}).code == 3);
  CHECK(run({}).code == 3);
  CHECK(run({"hochschild", kFixtures, "--cat", "dual"}).code == 3);

  CHECK(run({"homology", kFixtures, "--entity", "nothing"}).code == 4);
  CHECK(run({"validate", (dir.path / "absent.json").string()}).code == 4);
  auto missing = dir.write("missing.json",
                           workspace("Z", R"({"v": {"kind": "bimodule", "left_cat": "A", "right_cat": "A", "slots": {}}})"));
  CHECK(run({"validate", missing}).code == 4);

  CHECK(run({"--help"}).code == 0);
  CHECK(run({"hochschild", "--help"}).code == 0);
}

TEST_CASE("truncation in Z2 mode") {
  TempDir dir;
  const std::string k = R"({"kind": "category", "objects": ["*"], "hom": {"*|*": {"basis": {"0": ["1"]}}},
    "comp": [{"left": "*|*:1", "right": "*|*:1", "out": ["*|*:1"]}], "units": {"*": ["*|*:1"]}})";
  auto f = dir.write("z2.json", workspace("Z2", R"({"dual": )" + kDual + R"(, "k": )" + k + "}"));
  // Every bar column of a degree-0 algebra lands in parity j mod 2, so the
  // truncated Betti numbers keep growing.
  auto d = run({"hochschild", f, "--cat", "dual", "--trunc", "4"});
  CHECK(d.code == 2);
  CHECK(d.out.find("unverified") != std::string::npos);
  CHECK(run({"hochschild", f, "--cat", "dual", "--trunc", "4", "--allow-unverified"}).code == 0);
  // The full bar of k alternates with the parity of J; the normalized one is k.
  CHECK(run({"hochschild", f, "--cat", "k", "--trunc", "4"}).code == 2);
  auto n = run({"hochschild", f, "--cat", "k", "--trunc", "4", "--normalized"});
  CHECK(n.code == 0);
  CHECK(n.out == "t 0 betti 1 heuristic\nt 1 betti 0 heuristic\n");
}

TEST_CASE("homology, nat and segal") {
  auto c = run({"homology", kFixtures, "--entity", "cone"});
  CHECK(c.code == 0);
  CHECK(c.out == "t 0 betti 0\nt 1 betti 0\n");
  auto h = run({"homology", kFixtures, "--entity", "a2"});
  CHECK(h.out.find("hom x|y\nt 0 betti 1\n") != std::string::npos);

  auto n = run({"nat", kFixtures, "--left", "diag_dual", "--right", "diag_dual"});
  CHECK(n.code == 0);
  CHECK(n.out == "natural transformations (strict)\nt 0 betti 2 strict\n");

  auto z = run({"segal", kFixtures, "--sset", "z3", "--depth", "4"});
  CHECK(z.code == 0);
  CHECK(z.out.rfind("segal condition, strict/discrete variant, depth 4\n", 0) == 0);
  CHECK(count(z.out, " pass") == 6);
  auto sp = run({"segal", kFixtures, "--sset", "spine", "--depth", "2"});
  CHECK(sp.code == 1);
  CHECK(sp.out.find("m 1 n 1 fail pair (ab, bc) is not hit") != std::string::npos);
  CHECK(run({"segal", kFixtures, "--sset", "spine", "--depth", "3"}).code != 0);
}

TEST_CASE("constructions print workspaces") {
  TempDir dir;
  for (const std::vector<std::string>& args : {std::vector<std::string>{"tensor", kFixtures, "--args", "a2", "dual"},
                                               std::vector<std::string>{"sum", kFixtures, "--args", "a2", "unitK"},
                                               std::vector<std::string>{"oppose", kFixtures, "--args", "a2"},
                                               std::vector<std::string>{"tensor", kFixtures, "--args", "cone", "cone"}}) {
    auto r = run(args);
    REQUIRE(r.code == 0);
    auto p = dir.write("out.json", r.out);
    CHECK(run({"validate", p}).code == 0);
    CHECK(run({"canon", p}).out == r.out);
  }
  auto named = run({"oppose", kFixtures, "--args", "a2", "--name", "a2op"});
  CHECK(nlohmann::json::parse(named.out)["entities"].contains("a2op"));
  CHECK(run({"oppose", kFixtures, "--args", "a2", "dual"}).code == 1);
}

TEST_CASE("bench-rank") {
  auto a = run({"bench-rank", "--size", "200", "--density", "0.02", "--seed", "7"});
  auto b = run({"bench-rank", "--size", "200", "--density", "0.02", "--seed", "7"});
  CHECK(a.code == 0);
  CHECK(a.out.rfind("bench-rank size 200 density 0.02 seed 7 rank ", 0) == 0);
  auto strip = [](const std::string& s) { return s.substr(0, s.find(" time_ms")); };
  CHECK(strip(a.out) == strip(b.out));
}
