#include <gtest/gtest.h>

#include "gencontact/builtins.hpp"
#include "gencontact/document.hpp"
#include "gencontact/errors.hpp"
#include "gencontact/scenario.hpp"

namespace gencontact {
namespace {

Report run_text(const std::string& text, const LoadOptions& options = {}) {
  return run_scenario(load_scenario(text, "<test>", options));
}

Report run_shipped(const std::string& name, const LoadOptions& options = {}) {
  const auto s = builtin_scenario(name);
  if (!s) throw Error("missing shipped scenario " + name);
  return run_scenario(load_scenario(s->text, s->name, options));
}

const std::string kBrokenJacobi = R"([scenario broken]

[model broken]
frame = X1 X2 X3
coframe = a1 a2 a3
bracket X1 X2 = X2
bracket X1 X3 = X1
point o =

[checks]
courant broken =
)";

TEST(ScenarioLoad, UnknownCheckReportsItsLine) {
  const std::string text = "[scenario p]\n\n[checks]\ncourant torus =\nbogus torus =\n";
  try {
    load_scenario(text);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 5);
    EXPECT_NE(std::string(e.what()).find("bogus"), std::string::npos);
  }
}

TEST(ScenarioLoad, UnknownTargetIsRejected) {
  EXPECT_THROW(load_scenario("[scenario p]\n[checks]\nnormality nowhere =\n"), Error);
  EXPECT_THROW(load_scenario("[scenario p]\n[checks]\ntduality nowhere =\n"), Error);
}

TEST(ScenarioLoad, JacobiViolationNamesTheIndices) {
  try {
    load_scenario(kBrokenJacobi);
    FAIL() << "expected a validation error";
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("Jacobi"), std::string::npos) << msg;
    EXPECT_NE(msg.find("(0, 1, 2)"), std::string::npos) << msg;
  }
}

TEST(ScenarioLoad, UnclosedTwistIsRejected) {
  const std::string head = "[scenario p]\n[model c]\ncone_of = s3\n[twist h]\nmodel = c\n";
  EXPECT_THROW(load_scenario(head + "form = x1*nu1^nu2^dt\n[checks]\n"), ValidationError);
  EXPECT_THROW(load_scenario(head + "form = nu1^nu2\n[checks]\n"), ValidationError);
  EXPECT_NO_THROW(load_scenario(head + "form = nu1^nu2^dt\n[checks]\n"));
}

TEST(ScenarioLoad, PointSubsetMustExist) {
  EXPECT_THROW(run_shipped("s3_strong_integrability", LoadOptions{{"nowhere"}}), Error);
}

TEST(ScenarioRun, ShippedScenariosReachTheirExitCodes) {
  const std::map<std::string, ExitCode> expected = {
      {"courant_axioms", ExitCode::Pass},         {"heisenberg", ExitCode::Pass},
      {"s3_formal_certificates", ExitCode::Pass}, {"s3_normality_h_cubed", ExitCode::Fail},
      {"s3_strong_integrability", ExitCode::Pass}, {"tduality_heisenberg", ExitCode::Pass},
      {"tduality_hopf", ExitCode::Pass},
  };
  std::vector<std::string> names;
  for (const auto& s : builtin_scenarios()) names.push_back(s.name);
  ASSERT_EQ(names.size(), expected.size());
  for (const auto& name : names) {
    ASSERT_TRUE(expected.count(name)) << name;
    const Report r = run_shipped(name);
    EXPECT_EQ(r.exit_code(false), expected.at(name)) << render_text(r);
    EXPECT_EQ(r.count(Verdict::Inconclusive), 0u) << name;
  }
}

TEST(ScenarioRun, CubicNormalityResidualsAreTheDefiningEquations) {
  const Report r = run_shipped("s3_normality_h_cubed");
  bool saw_normality = false;
  for (const auto& c : r.checks) {
    if (c.verdict == Verdict::Fail) EXPECT_FALSE(c.residuals.empty()) << c.label;
    if (c.label.rfind("normality", 0) != 0 || c.verdict != Verdict::Fail) continue;
    saw_normality = true;
    std::string all;
    for (const auto& res : c.residuals) all += res + "\n";
    EXPECT_NE(all.find("frame-bracket e1, e2"), std::string::npos) << all;
  }
  EXPECT_TRUE(saw_normality);
}

TEST(ScenarioRun, ReportsAreDeterministic) {
  for (const auto& s : builtin_scenarios()) {
    const Report a = run_shipped(s.name);
    const Report b = run_shipped(s.name);
    EXPECT_EQ(render_text(a), render_text(b)) << s.name;
    EXPECT_EQ(render_records(a, true), render_records(b, true)) << s.name;
  }
}

TEST(ScenarioRun, PointRestrictionShrinksTheTables) {
  const Report all = run_shipped("s3_strong_integrability");
  const Report two = run_shipped("s3_strong_integrability", LoadOptions{{"north", "diag"}});
  ASSERT_EQ(all.checks.size(), two.checks.size());
  for (std::size_t i = 0; i < all.checks.size(); ++i) {
    EXPECT_EQ(all.checks[i].verdict, two.checks[i].verdict);
    if (all.checks[i].label.rfind("type", 0) == 0) {
      EXPECT_EQ(all.checks[i].table.rows.size(), 5u);
      ASSERT_EQ(two.checks[i].table.rows.size(), 2u);
      EXPECT_EQ(two.checks[i].table.rows[0][0], "north");
      EXPECT_EQ(two.checks[i].table.rows[1][0], "diag");
    }
  }
}

TEST(ScenarioRun, ExpectedFailureInvertsTheVerdict) {
  const std::string base = "[scenario p]\n[structure t]\nbuilder = cosymplectic\nmodel = heisenberg\n"
                           "theta = a1^a2\neta = a3\n[checks]\n";
  EXPECT_EQ(run_text(base + "normality t =\n").checks.front().verdict, Verdict::Fail);
  EXPECT_EQ(run_text(base + "normality t = outcome: fail\n").checks.front().verdict, Verdict::Pass);
  EXPECT_EQ(run_text(base + "type t = expect: 2 2\n").exit_code(false), ExitCode::Fail);
}

TEST(ScenarioRun, StrictPromotesInconclusive) {
  Report r;
  r.checks.push_back(CheckResult{"a", Verdict::Pass});
  r.checks.push_back(CheckResult{"b", Verdict::Inconclusive});
  EXPECT_EQ(r.exit_code(false), ExitCode::Pass);
  EXPECT_EQ(r.exit_code(true), ExitCode::Inconclusive);
  r.checks.push_back(CheckResult{"c", Verdict::Fail, {"1"}});
  EXPECT_EQ(r.exit_code(true), ExitCode::Fail);
}

TEST(ScenarioReport, RecordsParseAsADocument) {
  const Report r = run_shipped("heisenberg");
  const Document doc = parse_document(render_records(r));
  ASSERT_EQ(doc.sections.size(), r.checks.size() + 2);
  EXPECT_EQ(doc.sections.front().kind, "scenario");
  EXPECT_EQ(doc.sections.front().name, "heisenberg");
  for (std::size_t i = 0; i < r.checks.size(); ++i) {
    const auto& sec = doc.sections[i + 1];
    EXPECT_EQ(sec.kind, "check");
    EXPECT_EQ(sec.name, std::to_string(i + 1));
    EXPECT_EQ(sec.get("name"), r.checks[i].label);
    EXPECT_EQ(sec.get("verdict"), to_string(r.checks[i].verdict));
  }
  const auto& summary = doc.sections.back();
  EXPECT_EQ(summary.kind, "summary");
  EXPECT_EQ(summary.get("passed"), std::to_string(r.count(Verdict::Pass)));
  EXPECT_EQ(summary.get("exit"), "0");
}

TEST(ScenarioCatalog, EveryCheckIsExplained) {
  for (const auto& c : check_catalog()) {
    EXPECT_EQ(find_check(c.kind), &c);
    EXPECT_FALSE(c.formula.empty()) << c.kind;
    EXPECT_FALSE(c.description.empty()) << c.kind;
  }
  EXPECT_EQ(find_check("nonsense"), nullptr);
}

TEST(ScenarioCatalog, BuiltinsAreListed) {
  std::vector<std::string> models;
  for (const auto& m : builtin_models()) models.push_back(m.name);
  EXPECT_NE(std::find(models.begin(), models.end(), "triple-contact-7d"), models.end());
  const auto pairs = builtin_dual_pairs();
  EXPECT_NE(std::find(pairs.begin(), pairs.end(), "hopf"), pairs.end());
  bool family = false;
  for (const auto& b : builder_catalog()) family = family || b.name == "s3-family";
  EXPECT_TRUE(family);
}

}  // namespace
}  // namespace gencontact
