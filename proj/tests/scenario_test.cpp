#include <gtest/gtest.h>

#include <set>

#include "json.hpp"
#include "nambu/errors.hpp"
#include "nambu/scenario.hpp"

namespace nambu {
namespace {

const CheckResult* find(const VerificationReport& report, const std::string& id) {
  for (const auto& c : report.checks) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

TEST(ScenarioFormat, ShippedScenariosRoundTrip) {
  for (const auto& name : shipped_scenario_names()) {
    ScenarioConfig cfg = shipped_scenario(name);
    EXPECT_EQ(cfg.name, name);
    std::string text = format_scenario(cfg);
    EXPECT_EQ(parse_scenario(text), cfg) << text;
    EXPECT_EQ(format_scenario(parse_scenario(text)), text);
  }
}

TEST(ScenarioFormat, ShippedNames) {
  EXPECT_EQ(shipped_scenario_names(),
            (std::vector<std::string>{"solid-body", "ishii", "ring-2", "ring-3", "ring-4",
                                      "oscillator"}));
  EXPECT_THROW(shipped_scenario("pendulum"), DomainError);
}

TEST(ScenarioFormat, MinimalConfigParses) {
  ScenarioConfig cfg = parse_scenario(
      "nambu-scenario 1\n"
      "# a comment\n"
      "name = toy\n"
      "variables = p q\n"
      "hamiltonian = (p^2 + q^2)/2\n"
      "initial = 1 0\n"
      "t_end = 2.5\n");
  EXPECT_EQ(cfg.name, "toy");
  EXPECT_EQ(cfg.variables, (std::vector<std::string>{"p", "q"}));
  EXPECT_EQ(cfg.hamiltonians.size(), 1u);
  EXPECT_EQ(cfg.t_end, 2.5);
  EXPECT_EQ(cfg.dt, 1e-3);
}

TEST(ScenarioFormat, ErrorsCarryLineNumbers) {
  auto line_of = [](const std::string& text) -> std::size_t {
    try {
      parse_scenario(text);
    } catch (const ParseError& e) {
      return e.position();
    }
    return 0;
  };
  EXPECT_EQ(line_of("nambu-scenario 2\n"), 1u);
  EXPECT_EQ(line_of("nambu-scenario 1\nname = a\nvariables = x y\nbogus = 1\n"), 4u);
  EXPECT_EQ(line_of("nambu-scenario 1\nvariables = x y\nhamiltonian = x*w\n"), 3u);
  EXPECT_EQ(line_of("nambu-scenario 1\nvariables = x y\nno equals sign\n"), 3u);
  EXPECT_EQ(line_of("nambu-scenario 1\nvariables = x y\nt_end = soon\n"), 3u);
  EXPECT_GT(line_of("nambu-scenario 1\nvariables = x y\n"), 0u);
  EXPECT_GT(line_of("nambu-scenario 1\nvariables = x y\nhamiltonian = x\nfield = y ; x\n"), 0u);
}

class ShippedVerify : public ::testing::TestWithParam<std::string> {};

TEST_P(ShippedVerify, AllChecksPass) {
  VerificationReport report = verify(shipped_scenario(GetParam()));
  for (const auto& c : report.checks) EXPECT_TRUE(c.passed) << c.id << ": " << c.residual;
  EXPECT_TRUE(report.passed());
  EXPECT_EQ(report.elapsed_ms.size(), report.checks.size());
}

INSTANTIATE_TEST_SUITE_P(Scenarios, ShippedVerify,
                         ::testing::Values("solid-body", "ring-2", "ring-3", "ring-4",
                                           "oscillator"));

TEST(Verify, SolidBodyReportsBracketAndTraces) {
  VerificationReport report = verify(shipped_scenario("solid-body"));
  for (const char* id : {"flow.expected", "flow.divergence", "liouville", "homotopy.recovery",
                         "homotopy.expected", "vector_hamiltonian.published", "factorization",
                         "bracket.jacobian", "lax.residual", "lax.trace.1", "lax.trace.2",
                         "theorem.random", "cartan", "invariant.0.drift", "invariant.1.drift"}) {
    const CheckResult* c = find(report, id);
    ASSERT_NE(c, nullptr) << id;
    EXPECT_TRUE(c->passed) << id;
  }
}

TEST(Verify, CubicFlowFailsOnlyOnPrintedLaxPair) {
  VerificationReport report = verify(shipped_scenario("ishii"));
  EXPECT_FALSE(report.passed());
  for (const auto& c : report.checks) {
    if (c.id == "lax.residual") {
      EXPECT_FALSE(c.passed);
      EXPECT_EQ(c.residual, "[[0, 0, 0], [0, -y, 0], [0, 0, 0]]");
    } else {
      EXPECT_TRUE(c.passed) << c.id << ": " << c.residual;
    }
  }
}

TEST(Verify, CheckIdsAreUnique) {
  for (const auto& name : shipped_scenario_names()) {
    VerificationReport report = verify(shipped_scenario(name));
    std::set<std::string> ids;
    for (const auto& c : report.checks) EXPECT_TRUE(ids.insert(c.id).second) << name << " " << c.id;
  }
}

TEST(Verify, CartanDetailCarriesSign) {
  EXPECT_NE(find(verify(shipped_scenario("oscillator")), "cartan")->detail.find("dt sign 1"),
            std::string::npos);
  EXPECT_NE(find(verify(shipped_scenario("solid-body")), "cartan")->detail.find("dt sign -1"),
            std::string::npos);
}

TEST(Verify, TightToleranceFailsNumericChecks) {
  VerifyOptions opts;
  opts.tol = 1e-300;
  VerificationReport report = verify(shipped_scenario("solid-body"), opts);
  EXPECT_FALSE(find(report, "invariant.1.drift")->passed);
  EXPECT_TRUE(find(report, "lax.residual")->passed);
}

TEST(Verify, BrokenInvariantIsCaught) {
  ScenarioConfig cfg = shipped_scenario("solid-body");
  cfg.invariants.push_back("x");
  VerificationReport report = verify(cfg);
  EXPECT_FALSE(report.passed());
  EXPECT_FALSE(find(report, "invariant.2.conserved")->passed);
}

TEST(Verify, JsonIsDeterministic) {
  std::string a = report_json(verify(shipped_scenario("ring-3")));
  std::string b = report_json(verify(shipped_scenario("ring-3")));
  EXPECT_EQ(a, b);
  auto j = nlohmann::json::parse(a);
  EXPECT_EQ(j["scenario"], "ring-3");
  EXPECT_EQ(j["passed"], true);
  EXPECT_EQ(j["checks"][0]["id"], "flow.divergence");
  EXPECT_EQ(j["checks"][0]["status"], "pass");
}

TEST(Verify, TextReportSummary) {
  std::string text = report_text(verify(shipped_scenario("oscillator")));
  EXPECT_NE(text.find("PASS cartan"), std::string::npos);
  EXPECT_NE(text.find("oscillator: 13/13 checks passed"), std::string::npos);
}

}  // namespace
}  // namespace nambu
