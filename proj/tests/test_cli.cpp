#include <filesystem>
#include <sstream>

#include "cotr/catalog.hpp"
#include "cotr/cli.hpp"
#include "cotr/errors.hpp"
#include "cotr/io.hpp"
#include "cotr/modrep.hpp"
#include "doctest.h"

using namespace cotr;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = COTR_FIXTURE_DIR;

cli::Outcome run(std::vector<std::string> args) {
  args.insert(args.end(), {"--fixtures", kFixtures.string()});
  return cli::execute(args);
}

json last(const cli::Outcome& o) {
  REQUIRE_FALSE(o.reports.empty());
  return o.reports.back();
}

std::string a2(const std::string& f) { return (kFixtures / "a2" / f).string(); }

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("cotr-test-cli-" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

void check_shape(const json& r) {
  for (auto k : {"schema", "command", "inputs", "answer", "certainty", "witnesses", "timing_ms", "exit_code"})
    CHECK_MESSAGE(r.contains(k), k);
  CHECK(r["schema"] == cli::kSchema);
  CHECK(r["certainty"].contains("kind"));
  for (auto& in : r["inputs"]) CHECK(in["digest"].get<std::string>().rfind("sha256:", 0) == 0);
  if (r["answer"].is_object() && r["answer"].contains("verdict") && r["answer"]["verdict"].is_string()) {
    auto v = r["answer"]["verdict"].get<std::string>();
    if (v == "out" || v == "fail") CHECK_FALSE(r["witnesses"].empty());
  }
  if (r["exit_code"] != 0) CHECK(r.contains("error"));
}

}  // namespace

TEST_CASE("section files") {
  auto s = io::parse_sections("# comment\n[a]\nx = 1 2\nbare line\n\n[b]\ny=3 # trailing\n", "t");
  REQUIRE(s.size() == 2);
  CHECK(s[0].name == "a");
  CHECK(s[0].entries[0] == std::pair<std::string, std::string>{"x", "1 2"});
  CHECK(s[0].entries[1].first.empty());
  CHECK(s[1].entries[0].second == "3");
  CHECK_THROWS_AS(io::parse_sections("x = 1\n", "t"), InvalidInput);
  CHECK_THROWS_AS(io::parse_sections("[a\n", "t"), InvalidInput);
}

TEST_CASE("matrix syntax") {
  Matrix m = io::parse_matrix("1 0; 3 -1", 2, 2, 2, "m");
  CHECK(m == Matrix::from_rows({{1, 0}, {1, 1}}, 2));
  CHECK(io::parse_matrix("1 2 3 4", 2, 2, 5, "m") == Matrix::from_rows({{1, 2}, {3, 4}}, 5));
  CHECK(io::parse_matrix("", 0, 3, 2, "m").rows() == 0);
  CHECK(io::parse_matrix("", 2, 0, 2, "m").cols() == 0);
  CHECK_THROWS_AS(io::parse_matrix("1 0; 1", 2, 2, 2, "m"), DimensionMismatch);
  CHECK_THROWS_AS(io::parse_matrix("1 x", 1, 2, 2, "m"), InvalidInput);
  CHECK(io::format_matrix(m) == "1 0; 1 1");
}

TEST_CASE("algebra files round trip") {
  auto ex = ex28_algebra();
  auto end = bimodule_over_endomorphisms(direct_sum_module(
      {injective_module(ex, 0), injective_module(ex, 1), simple_module(ex, 2), projective_module(ex, 3),
       injective_module(ex, 3)}));
  for (AlgebraPtr a : {a2_algebra(), dual_numbers_algebra(), ex, a2_algebra(3), semisimple_algebra(2),
                       opposite(a2_algebra()), end.S}) {
    const std::string text = io::export_algebra(*a);
    AlgebraPtr back = io::parse_algebra(text);
    CHECK_MESSAGE(same_algebra(back, a), a->name());
    CHECK(io::digest(*back) == io::digest(*a));
    CHECK(io::export_algebra(*back) == text);
  }
  SUBCASE("relations") {
    auto a = io::parse_algebra("[algebra]\np = 3\n[quiver]\nvertices = 1 2\nx = 1 -> 2\ny = 1 -> 2\nz = 2 -> 2\n"
                               "[relations]\nx z - 2 y z\nz z\n");
    CHECK(a->p() == 3);
    CHECK(a->dim() == 2 + 3 + 1);
    CHECK_THROWS_AS(io::parse_algebra("[algebra]\n[quiver]\nvertices = 1\nx = 1 -> 1\n"), NotFiniteDimensional);
    CHECK_THROWS_AS(io::parse_algebra("[algebra]\np = 4\n[quiver]\nvertices = 1\n"), InvalidInput);
    CHECK_THROWS_AS(io::parse_algebra("[algebra]\n[quiver]\nvertices = 1\nx = 1 -> 3\n"), InvalidInput);
  }
}

TEST_CASE("module and bimodule files round trip") {
  for (AlgebraPtr a : {a2_algebra(), dual_numbers_algebra(), a2_algebra(3)}) {
    for (auto& m : enumerate_modules(a, 3, 1 << 16)) {
      Module back = io::parse_module(io::export_module(m), a);
      CHECK(back.actions() == m.actions());
      CHECK(io::digest(back) == io::digest(m));
    }
    for (const Bimodule& b : {regular_bimodule(a), matlis_dual_bimodule(a)}) {
      Bimodule back = io::parse_bimodule(io::export_bimodule(b), b.R, b.S);
      CHECK(back.left == b.left);
      CHECK(back.right == b.right);
      CHECK(io::digest(back) == io::digest(b));
    }
  }
  auto ex = ex28_algebra();
  Bimodule w = bimodule_over_endomorphisms(direct_sum_module({injective_module(ex, 0), simple_module(ex, 2)}));
  Bimodule back = io::parse_bimodule(io::export_bimodule(w), w.R, w.S);
  CHECK(io::digest(back) == io::digest(w));
  Module m = simple_module(w.S, 0);
  CHECK(io::digest(io::parse_module(io::export_module(m), w.S)) == io::digest(m));
  CHECK_THROWS_AS(io::parse_module("[module]\ndims = 1\n", a2_algebra()), DimensionMismatch);
  CHECK_THROWS_AS(io::parse_module("[module]\ndims = 1 1\n[arrows]\na = 1 1\n", a2_algebra()), DimensionMismatch);
  CHECK_THROWS_AS(io::parse_module("[module]\ndims = 2\n[arrows]\nx = 1 0; 0 1\n", dual_numbers_algebra()),
                  InvalidInput);
}

TEST_CASE("fixture loading") {
  io::Loader l({kFixtures});
  Module s2 = l.module(a2("S2.mod"));
  Bimodule w = l.bimodule(a2("DLambda.bimod"));
  CHECK(s2.algebra() == w.R);  // one algebra object per file
  CHECK(s2.dimvec() == std::vector<int>{0, 1});
  CHECK(io::digest(w) == io::digest(matlis_dual_bimodule(a2_algebra())));
  CHECK(io::digest(l.bimodule("identity-bimodule")) == io::digest(regular_bimodule(a2_algebra())));
  Bimodule e = l.bimodule((kFixtures / "ex28" / "omega.bimod").string());
  CHECK(e.dim == 11);
  CHECK_FALSE(e.S->presentation().has_value());
  Morphism f = l.morphism(a2("P2_to_P1.hom"));
  CHECK(is_mono(f));
  CHECK_THROWS_AS(l.module("no-such-file.mod"), InvalidInput);
}

TEST_CASE("worked example through the driver") {
  auto o = run({"class", "--bass", a2("S2.mod"), "--omega", a2("DLambda.bimod"), "--alg", a2("a2.alg"), "--json"});
  CHECK(o.exit_code == 0);
  json r = last(o);
  check_shape(r);
  CHECK(r["answer"]["verdict"] == "out");
  CHECK(r["answer"]["failing_condition"] == "B3");
  CHECK(r["certainty"]["kind"] == "exact");

  r = last(run({"dim", "--bass-id", a2("regular.mod"), "--omega", a2("DLambda.bimod")}));
  CHECK(r["answer"]["value"]["text"] == "Exactly(1)");
  r = last(run({"check-semidualizing", "identity-bimodule"}));
  CHECK(r["answer"]["semidualizing"] == true);
  CHECK(r["answer"]["faithful"] == true);
  for (auto& ax : r["answer"]["axioms"]) CHECK(ax["verdict"] == "pass");
}

TEST_CASE("certainty kinds") {
  auto r = last(run({"dim", "--pomega-pd", (kFixtures / "dual_numbers" / "k.mod").string(), "--omega",
                     (kFixtures / "dual_numbers" / "regular.bimod").string()}));
  check_shape(r);
  CHECK(r["certainty"]["kind"] == "infinite_by_periodicity");
  CHECK(r["certainty"]["j"] == 0);
  CHECK(r["certainty"]["k"] == 1);
  CHECK_FALSE(r["witnesses"].empty());
  r = last(run({"dim", "--pd", (kFixtures / "dual_numbers" / "k.mod").string(), "--bound", "4"}));
  CHECK(r["answer"]["value"]["status"] == "infinite_by_periodicity");
}

TEST_CASE("exit codes") {
  CHECK(run({"class", "--bass", "missing.mod", "--omega", a2("DLambda.bimod")}).exit_code == 2);
  CHECK(run({"no-such-command"}).exit_code == 2);
  CHECK(run({"class", a2("S2.mod"), "--omega", a2("DLambda.bimod")}).exit_code == 2);
  CHECK(run({"class", "--bass", "--auslander", a2("S2.mod"), "--omega", a2("DLambda.bimod")}).exit_code == 2);
  auto o = run({"seq", "--prop67", a2("S2_zero_S1.hom"), "--omega", a2("DLambda.bimod")});
  CHECK(o.exit_code == 1);
  check_shape(last(o));
  CHECK(last(o)["error"]["tag"] == "HypothesisFailed");
  CHECK(last(o)["error"]["kind"] == "precondition");
  o = run({"dim", "--bass-id", (kFixtures / "dual_numbers" / "k.mod").string(), "--omega", a2("DLambda.bimod")});
  CHECK(o.exit_code == 2);
  CHECK(run({"--help"}).exit_code == 0);
}

TEST_CASE("determinism") {
  std::vector<std::string> cmd{"seq", "--cor68", a2("regular.mod"), "--omega", a2("DLambda.bimod"), "--seed", "7"};
  auto a = last(run(cmd)), b = last(run(cmd));
  CHECK(cli::without_timing(a) == cli::without_timing(b));
  CHECK_FALSE(cli::without_timing(a).find("timing_ms") != std::string::npos);
}

TEST_CASE("newline-delimited output") {
  std::ostringstream out, err;
  int code = cli::run({"gorenstein", "--alg", a2("a2.alg"), "--json", "--fixtures", kFixtures.string()}, out, err);
  CHECK(code == 0);
  std::istringstream in(out.str());
  int lines = 0;
  for (std::string line; std::getline(in, line); ++lines) check_shape(json::parse(line));
  CHECK(lines == 1);
}

TEST_CASE("export writes files that reload identically") {
  fs::path dir = scratch("export");
  for (auto f : {"DLambda.bimod", "regular.mod", "a2.alg"}) {
    auto first = last(run({"export", a2(f), "--out", dir.string()}));
    REQUIRE(first["exit_code"] == 0);
    for (auto& [name, dg] : first["answer"]["digests"].items()) {
      auto again = last(run({"export", (dir / name).string()}));
      CHECK_MESSAGE(again["answer"]["digests"][name] == dg, name);
    }
  }
  auto ex = last(run({"export", (kFixtures / "ex28" / "omega.bimod").string(), "--out", dir.string()}));
  REQUIRE(ex["exit_code"] == 0);
  auto again = last(run({"export", (dir / "omega.bimod").string()}));
  CHECK(again["answer"]["digests"]["omega.bimod"] == ex["answer"]["digests"]["omega.bimod"]);
  fs::remove_all(dir);
}

TEST_CASE("suite over the shipped fixtures") {
  auto o = run({"suite"});
  CHECK(o.exit_code == 0);
  json r = last(o);
  check_shape(r);
  CHECK(r["answer"]["ok"] == true);
  CHECK(r["answer"]["fixtures"].size() == 4);
  int expectations = 0;
  for (auto& rep : o.reports)
    if (rep["command"] == "suite.expectation") {
      ++expectations;
      CHECK(rep["answer"]["passed"] == true);
    }
  CHECK(expectations > 20);
}

TEST_CASE("suite reports a wrong expectation") {
  fs::path dir = scratch("suite");
  fs::create_directories(dir / "bad");
  for (auto f : {"a2.alg", "S2.mod", "DLambda.bimod"}) fs::copy_file(a2(f), dir / "bad" / f);
  io::write_file(dir / "bad" / "expectations",
                 "example wrong: class --bass S2.mod --omega DLambda.bimod => answer.verdict=in\n");
  auto o = cli::execute({"suite", "--fixtures", dir.string()});
  CHECK(o.exit_code == 3);
  check_shape(last(o));
  CHECK(o.reports.front()["answer"]["passed"] == false);
  CHECK(o.reports.front()["answer"]["mismatches"][0]["got"] == "out");
  fs::remove_all(dir);
}
