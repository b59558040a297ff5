#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "support.hpp"
#include "stab/serialize.hpp"

using namespace stab;
using io::json;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::filesystem::path> corpus() {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::recursive_directory_iterator(STAB_SCENARIO_DIR))
    if (e.path().extension() == ".json") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

io::Scenario load(const std::string& rel) {
  return io::parse_scenario(io::parse_document(slurp(std::filesystem::path(STAB_SCENARIO_DIR) / rel)).value);
}

}  // namespace

TEST(Document, RecordsLinesOfValues) {
  auto doc = io::parse_document("{\n  \"a\": 1,\n  \"b\": [\n    2,\n    {\"c\": 3}\n  ]\n}\n");
  EXPECT_EQ(doc.line_of(""), 1);
  EXPECT_EQ(doc.line_of("/a"), 2);
  EXPECT_EQ(doc.line_of("/b"), 3);
  EXPECT_EQ(doc.line_of("/b/0"), 4);
  EXPECT_EQ(doc.line_of("/b/1/c"), 5);
  EXPECT_EQ(doc.line_of("/b/1/missing"), 5);
  EXPECT_EQ(doc.value["b"][1]["c"], 3);
}

TEST(Document, SyntaxErrorsCarryLineAndColumn) {
  try {
    io::parse_document("{\n  \"a\": 1,\n  \"b\": ]\n}");
    FAIL();
  } catch (const io::SyntaxError& e) {
    EXPECT_EQ(e.line, 3);
    EXPECT_EQ(e.column, 8);
  }
}

TEST(Reader, ElementsAndModules) {
  io::Reader z(Domain::integers());
  EXPECT_EQ(z.elem(json(12), ""), Elem(12));
  EXPECT_EQ(z.elem(json("123456789012345678901234567890"), ""), Elem::integer("123456789012345678901234567890"));
  EXPECT_THROW(z.elem(json(1.5), ""), io::SpecError);
  FpModule m = z.module(json::parse(R"({"rank": 1, "factors": [12]})"), "");
  EXPECT_EQ(m.rank(), 1u);
  EXPECT_EQ(m.factors(), testing_support::elems({12}));
  FpModule r = z.module(json::parse(R"({"relations": [[2, 4], [6, 8]]})"), "");
  EXPECT_EQ(r.factors(), testing_support::elems({2, 4}));
  FpModule free2 = z.module(json::parse(R"({"relations": {"rows": 2, "cols": 0}})"), "");
  EXPECT_EQ(free2.rank(), 2u);

  io::Reader f2(Domain::poly_mod(2));
  EXPECT_EQ(f2.elem(json::parse("[1, 0, 1]"), ""), testing_support::poly(2, {1, 0, 1}));
  EXPECT_EQ(f2.elem(json(3), ""), Domain::poly_mod(2).one());
}

TEST(Reader, ErrorsPointAtTheOffendingValue) {
  io::Reader z(Domain::integers(), json::parse(R"({"M": {"rank": 1, "factors": [0]}})"));
  try {
    z.module(json("$M"), "/family/module");
    FAIL();
  } catch (const io::SpecError& e) {
    EXPECT_EQ(e.pointer, "/definitions/M/factors/0");
  }
  try {
    z.module(json("$Q"), "/family/module");
    FAIL();
  } catch (const io::SpecError& e) {
    EXPECT_EQ(e.pointer, "/family/module");
  }
  try {
    z.functor(json::parse(R"({"kind": "tau", "set": {"elements": [4, 6]}})"), "/functor");
    FAIL();
  } catch (const io::SpecError& e) {
    EXPECT_EQ(e.pointer, "/functor/set");
  }
  EXPECT_THROW(z.functor(json::parse(R"({"kind": "nope"})"), "/functor"), io::SpecError);
  EXPECT_THROW(z.functor(json::parse(R"({"kind": "identity", "extra": 1})"), "/functor"), io::SpecError);
  EXPECT_THROW(z.family(json::parse(R"({"kind": "subquotient", "t": {"rank": 1}, "u": [[1]], "v": [[2]],
                                        "w": [[1]], "ideal": 2})"),
                        "/family"),
               io::SpecError);
}

TEST(Scenario, EveryCorpusFileParsesAndRoundTrips) {
  auto files = corpus();
  ASSERT_GE(files.size(), 17u);
  for (const auto& f : files) {
    io::Scenario s = io::parse_scenario(io::parse_document(slurp(f)).value);
    json once = io::to_json(s);
    json twice = io::to_json(io::parse_scenario(once));
    EXPECT_EQ(once, twice) << f;
  }
}

TEST(Scenario, FunctorsRoundTrip) {
  io::Reader z(Domain::integers());
  std::vector<std::string> docs{
      R"({"kind": "identity"})",
      R"({"kind": "ext1", "module": {"rank": 1, "factors": [6]}})",
      R"({"kind": "coherent", "map": {"source": {"rank": 1}, "target": {"rank": 1}, "images": [[2]]}})",
      R"({"kind": "mod_tau", "set": {"base": 2, "exponents": {"finite": [2], "progressions": [[8, 12]]}}})",
      R"({"kind": "middle_finite", "gamma": 3})",
      R"({"kind": "middle_finite", "a": [{"localize": {"rank": 1}, "invert": 2}], "b": {"factors": [3]},
          "c": [], "da": [[1]], "db": {"rows": 0, "cols": 1}})",
      R"({"kind": "oscillating", "sets": [{"prime": 2, "set": {"parity": "odd"}}, {"prime": 3, "set": {"finite": [1]}}]})",
      R"({"kind": "complex", "d2": {"source": {"rank": 1}, "target": {"rank": 1}, "images": [[4]]},
          "d1": {"source": {"rank": 1}, "target": {"rank": 0}, "images": {"rows": 0, "cols": 1}}, "index": 1})",
  };
  for (const auto& d : docs) {
    FunctorSpec f = z.functor(json::parse(d), "");
    json once = io::to_json(f);
    EXPECT_EQ(io::to_json(z.functor(once, "")), once) << d;
    FpModule probe = FpModule::from_decomposition(Domain::integers(), 0, testing_support::elems({4, 12}));
    EXPECT_TRUE(isomorphic(eval(f, probe), eval(z.functor(once, ""), probe))) << d;
  }
}

TEST(Scenario, BrodmannIdentityReport) {
  io::Scenario s = load("brodmann_identity.json");
  io::ScenarioResult r = io::run_scenario(s);
  EXPECT_EQ(r.ass.verdict(), "stable");
  EXPECT_EQ(*r.ass.n0, 1u);
  EXPECT_TRUE(r.mismatches.empty());
  std::string csv = io::report_csv(r);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 51);
  EXPECT_NE(csv.find("\n1,2;2,(2),0\n"), std::string::npos);
  EXPECT_NE(csv.find("\n50,8;1125899906842624,(2),0\n"), std::string::npos);
  json rep = io::report_json(s, r);
  EXPECT_EQ(rep["ass"]["verdict"], "stable");
  EXPECT_EQ(rep["observations"].size(), 50u);
  EXPECT_EQ(rep["expectation"]["matched"], true);
}

TEST(Scenario, ReportsAreDeterministic) {
  for (const char* name : {"brodmann_identity.json", "suite/f3_kw_homology.json", "oscillating_period3.json"}) {
    io::Scenario s = load(name);
    auto a = io::run_scenario(s, true), b = io::run_scenario(s, true), c = io::run_scenario(s, false);
    EXPECT_EQ(io::report_csv(a), io::report_csv(b));
    EXPECT_EQ(io::report_csv(a), io::report_csv(c));
    EXPECT_EQ(io::report_json(s, a).dump(), io::report_json(s, c).dump());
  }
}

TEST(Scenario, ExpectationMismatchIsReported) {
  io::Scenario s = load("oscillating_even.json");
  s.expect->ass = "stable";
  EXPECT_EQ(io::run_scenario(s).mismatches.size(), 1u);
}
