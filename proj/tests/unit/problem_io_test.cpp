#include <gtest/gtest.h>

#include <json.hpp>
#include <string>

#include "riskdual/errors.hpp"
#include "riskdual/problem_io.hpp"

namespace riskdual {
namespace {

using nlohmann::json;

const char* kCoin = R"({
  "returns": [[0], [10]],
  "probs": [0.5, 0.5],
  "decision_set": {"type": "box", "lower": [1], "upper": [1]},
  "risk": {"kind": "variance"},
  "gamma": 25
})";

TEST(ProblemFromJson, Reads) {
  const LinearPayoffProblem pb = problem_from_json(kCoin);
  EXPECT_EQ(pb.scenarios(), 2u);
  EXPECT_EQ(pb.assets(), 1u);
  EXPECT_EQ(pb.returns()(1, 0), 10.0);
  EXPECT_EQ(pb.gamma(), 25.0);
  EXPECT_EQ(pb.risk(), RiskSpec::variance());
  EXPECT_EQ(pb.decision_set(), DecisionSet::box({1.0}, {1.0}));
}

TEST(ProblemFromJson, RoundTrip) {
  const char* text = R"({
    "returns": [[1.5, -2], [0.25, 3], [7, 0]],
    "probs": [0.2, 0.3, 0.5],
    "decision_set": {"type": "simplex"},
    "risk": {"kind": "oce", "breakpoints": [-1, 0], "slopes": [2, 1, 0.25]},
    "gamma": -3.75
  })";
  const LinearPayoffProblem a = problem_from_json(text);
  const LinearPayoffProblem b = problem_from_json(problem_to_json(a));
  EXPECT_EQ(a.returns(), b.returns());
  EXPECT_EQ(a.probs(), b.probs());
  EXPECT_EQ(a.decision_set(), b.decision_set());
  EXPECT_EQ(a.risk(), b.risk());
  EXPECT_EQ(a.gamma(), b.gamma());
  for (const char* risk : {R"({"kind":"cvar","p":0.9})", R"({"kind":"wmd","p":0.3})"}) {
    json doc = json::parse(text);
    doc["risk"] = json::parse(risk);
    const LinearPayoffProblem c = problem_from_json(doc.dump());
    EXPECT_EQ(problem_from_json(problem_to_json(c)).risk(), c.risk());
  }
}

TEST(ProblemFromJson, RejectsMalformed) {
  const json base = json::parse(kCoin);
  auto edited = [&](const char* key, const json& value) {
    json d = base;
    if (value.is_discarded()) {
      d.erase(key);
    } else {
      d[key] = value;
    }
    return d.dump();
  };
  const json gone(json::value_t::discarded);
  EXPECT_THROW(problem_from_json("{not json"), InputError);
  EXPECT_THROW(problem_from_json("[]"), InputError);
  EXPECT_THROW(problem_from_json(edited("gamma", gone)), InputError);
  EXPECT_THROW(problem_from_json(edited("gamma", "high")), InputError);
  EXPECT_THROW(problem_from_json(edited("returns", json::parse("[[0], [1, 2]]"))), InputError);
  EXPECT_THROW(problem_from_json(edited("returns", json::parse("[]"))), InputError);
  EXPECT_THROW(problem_from_json(edited("probs", json::parse("[0.5, 0.6]"))), InputError);
  EXPECT_THROW(problem_from_json(edited("probs", json::parse("[0.5]"))), InputError);
  EXPECT_THROW(problem_from_json(edited("risk", json::parse(R"({"kind":"entropic"})"))), InputError);
  EXPECT_THROW(problem_from_json(edited("risk", json::parse(R"({"kind":"cvar","p":1.5})"))), InputError);
  EXPECT_THROW(problem_from_json(edited("risk", json::parse(R"({"kind":"cvar"})"))), InputError);
  EXPECT_THROW(problem_from_json(edited("decision_set", json::parse(R"({"type":"ball"})"))), InputError);
  EXPECT_THROW(
      problem_from_json(edited("decision_set", json::parse(R"({"type":"box","lower":[2],"upper":[1]})"))),
      InputError);
  EXPECT_THROW(problem_from_json_file("/nonexistent/problem.json"), InputError);
}

TEST(SolveResultToJson, Fields) {
  SolveResult r;
  r.a_star = Eigen::VectorXd::Constant(2, 0.5);
  r.lambda_star = 0.25;
  r.eta_star = -3.0;
  r.value = 5.0;
  r.risk_at_opt = 1.0;
  r.status = SolveStatus::Optimal;
  r.constraint_active = true;
  r.trace.push_back({1.0, 2.0, 3.0, 4.0, true});
  const json doc = json::parse(solve_result_to_json(r));
  EXPECT_EQ(doc["status"], "optimal");
  EXPECT_EQ(doc["a_star"], json::parse("[0.5, 0.5]"));
  EXPECT_EQ(doc["lambda_star"], 0.25);
  EXPECT_EQ(doc["value"], 5.0);
  EXPECT_EQ(doc["constraint_active"], true);
  EXPECT_EQ(doc["dual_evaluations"], 1);
  EXPECT_FALSE(doc.contains("trace"));
  EXPECT_FALSE(doc.contains("maxmin"));

  SolveReportExtras extras;
  extras.include_trace = true;
  const json with_trace = json::parse(solve_result_to_json(r, extras));
  ASSERT_EQ(with_trace["trace"].size(), 1u);
  EXPECT_EQ(with_trace["trace"][0]["risk"], 4.0);
}

TEST(SolveResultToJson, NonFiniteBecomesNull) {
  SolveResult r;
  r.a_star = Eigen::VectorXd::Ones(1);
  r.status = SolveStatus::Infeasible;
  MaxminResult mm{MinusInfinity{}, Eigen::VectorXd::Ones(1), 0.0, false};
  SolveReportExtras extras;
  extras.maxmin = &mm;
  const json doc = json::parse(solve_result_to_json(r, extras));
  EXPECT_EQ(doc["status"], "infeasible");
  EXPECT_TRUE(doc["value"].is_null());
  EXPECT_TRUE(doc["min_risk_probed"].is_null());
  EXPECT_TRUE(doc["maxmin"]["value"].is_null());
  EXPECT_EQ(doc["maxmin"]["minus_infinity"], true);
}

TEST(Table3ToJson, Rows) {
  const json doc = json::parse(table3_to_json(reproduce_table3()));
  ASSERT_EQ(doc.size(), 8u);
  for (const json& r : doc) {
    EXPECT_TRUE(r.contains("a_sharp_computed"));
    EXPECT_TRUE(r["flag"].is_boolean());
  }
}

}  // namespace
}  // namespace riskdual
