#include "riskdual/problem_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "riskdual/errors.hpp"

namespace riskdual {

using nlohmann::json;

namespace {

const json& field(const json& obj, const char* name, const std::string& where) {
  const auto it = obj.find(name);
  if (it == obj.end()) throw InputError(where + ": missing field \"" + name + "\"");
  return *it;
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) throw InputError(where + ": expected a number");
  return v.get<double>();
}

std::vector<double> numbers(const json& v, const std::string& where) {
  if (!v.is_array()) throw InputError(where + ": expected an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(number(v[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

RiskSpec risk_from(const json& r) {
  if (!r.is_object()) throw InputError("risk: expected an object");
  const json& kind = field(r, "kind", "risk");
  if (!kind.is_string()) throw InputError("risk.kind: expected a string");
  const std::string k = kind.get<std::string>();
  if (k == "variance") return RiskSpec::variance();
  if (k == "cvar") return RiskSpec::cvar(number(field(r, "p", "risk"), "risk.p"));
  if (k == "wmd") return RiskSpec::wmd(number(field(r, "p", "risk"), "risk.p"));
  if (k == "oce") {
    return RiskSpec::oce(
        OceUtility::make(numbers(field(r, "breakpoints", "risk"), "risk.breakpoints"),
                         numbers(field(r, "slopes", "risk"), "risk.slopes")));
  }
  throw InputError("risk.kind: unknown kind \"" + k + "\"");
}

DecisionSet decision_set_from(const json& d, std::size_t assets) {
  if (!d.is_object()) throw InputError("decision_set: expected an object");
  const json& type = field(d, "type", "decision_set");
  if (!type.is_string()) throw InputError("decision_set.type: expected a string");
  const std::string t = type.get<std::string>();
  if (t == "simplex") return DecisionSet::simplex(assets);
  if (t == "box") {
    return DecisionSet::box(numbers(field(d, "lower", "decision_set"), "decision_set.lower"),
                            numbers(field(d, "upper", "decision_set"), "decision_set.upper"));
  }
  throw InputError("decision_set.type: unknown type \"" + t + "\"");
}

json risk_to(const RiskSpec& risk) {
  json r;
  r["kind"] = to_string(risk.kind());
  switch (risk.kind()) {
    case RiskKind::Variance: break;
    case RiskKind::CVaR:
    case RiskKind::WMd: r["p"] = risk.p(); break;
    case RiskKind::OCE:
      r["breakpoints"] = risk.utility().breakpoints();
      r["slopes"] = risk.utility().slopes();
      break;
  }
  return r;
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json vector_to(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(finite_or_null(v[i]));
  return out;
}

}  // namespace

LinearPayoffProblem problem_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("problem: expected a JSON object");

  const json& rows = field(doc, "returns", "problem");
  if (!rows.is_array() || rows.empty()) throw InputError("returns: expected a nonempty array of rows");
  const std::size_t m = rows.size();
  std::size_t n = 0;
  Eigen::MatrixXd returns;
  for (std::size_t i = 0; i < m; ++i) {
    const std::vector<double> row = numbers(rows[i], "returns[" + std::to_string(i) + "]");
    if (i == 0) {
      n = row.size();
      if (n == 0) throw InputError("returns[0]: rows must not be empty");
      returns.resize(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
    } else if (row.size() != n) {
      throw InputError("returns[" + std::to_string(i) + "]: expected " + std::to_string(n) +
                       " entries, found " + std::to_string(row.size()));
    }
    for (std::size_t j = 0; j < n; ++j) {
      returns(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row[j];
    }
  }

  try {
    std::vector<double> probs = numbers(field(doc, "probs", "problem"), "probs");
    DecisionSet set = decision_set_from(field(doc, "decision_set", "problem"), n);
    RiskSpec risk = risk_from(field(doc, "risk", "problem"));
    const double gamma = number(field(doc, "gamma", "problem"), "gamma");
    return LinearPayoffProblem::make(std::move(returns), std::move(probs), std::move(set),
                                     std::move(risk), gamma);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

LinearPayoffProblem problem_from_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return problem_from_json(buf.str());
}

std::string problem_to_json(const LinearPayoffProblem& problem) {
  json doc;
  json rows = json::array();
  const auto& R = problem.returns();
  for (Eigen::Index i = 0; i < R.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < R.cols(); ++j) row.push_back(R(i, j));
    rows.push_back(std::move(row));
  }
  doc["returns"] = std::move(rows);
  doc["probs"] = vector_to(problem.probs());
  const DecisionSet& set = problem.decision_set();
  if (set.type() == DecisionSet::Type::Simplex) {
    doc["decision_set"] = {{"type", "simplex"}};
  } else {
    doc["decision_set"] = {{"type", "box"}, {"lower", set.lower()}, {"upper", set.upper()}};
  }
  doc["risk"] = risk_to(problem.risk());
  doc["gamma"] = problem.gamma();
  return doc.dump(2);
}

std::string solve_result_to_json(const SolveResult& result, const SolveReportExtras& extras) {
  json doc;
  doc["status"] = to_string(result.status);
  doc["a_star"] = vector_to(result.a_star);
  doc["lambda_star"] = finite_or_null(result.lambda_star);
  doc["eta_star"] = finite_or_null(result.eta_star);
  doc["value"] = finite_or_null(result.value);
  doc["risk_at_opt"] = finite_or_null(result.risk_at_opt);
  doc["constraint_active"] = result.constraint_active;
  doc["dual_value"] = finite_or_null(result.dual_value);
  doc["lambda_max"] = finite_or_null(result.lambda_max);
  doc["lambda_nonunique"] = result.lambda_nonunique;
  doc["min_risk_probed"] = finite_or_null(result.min_risk_probed);
  doc["dual_evaluations"] = result.trace.size();

  if (extras.maxmin != nullptr) {
    const MaxminResult& mm = *extras.maxmin;
    json m;
    m["value"] = is_minus_infinity(mm.value) ? json(nullptr) : json(std::get<double>(mm.value));
    m["minus_infinity"] = is_minus_infinity(mm.value);
    m["a"] = vector_to(mm.a);
    m["eta"] = finite_or_null(mm.eta);
    m["converged"] = mm.converged;
    doc["maxmin"] = std::move(m);
  }
  if (extras.saddle != nullptr) {
    const SaddleReport& s = *extras.saddle;
    doc["saddle"] = {{"center_value", finite_or_null(s.center_value)},
                     {"worst_eta_violation", finite_or_null(s.worst_eta_violation)},
                     {"worst_lambda_violation", finite_or_null(s.worst_lambda_violation)},
                     {"relative_violation", finite_or_null(s.relative_violation())},
                     {"lambda_points", s.lambda_points},
                     {"eta_points", s.eta_points}};
  }
  if (extras.include_trace) {
    json trace = json::array();
    for (const DualProbe& pr : result.trace) {
      trace.push_back({{"lambda", finite_or_null(pr.lambda)},
                       {"dual_value", finite_or_null(pr.dual_value)},
                       {"expected_payoff", finite_or_null(pr.expected_payoff)},
                       {"risk", finite_or_null(pr.risk)},
                       {"feasible", pr.feasible}});
    }
    doc["trace"] = std::move(trace);
  }
  return doc.dump(2);
}

std::string table3_to_json(const std::vector<Table3Row>& rows) {
  json out = json::array();
  for (const Table3Row& r : rows) {
    out.push_back({{"p", r.p},
                   {"gamma", r.gamma},
                   {"a_sharp_computed", r.a_sharp_computed},
                   {"a_sharp_paper", r.a_sharp_paper},
                   {"eta_computed", r.eta_computed},
                   {"eta_paper", r.eta_paper},
                   {"theta_computed", r.theta_computed},
                   {"theta_paper", r.theta_paper},
                   {"flag", r.flag}});
  }
  return out.dump(2);
}

}  // namespace riskdual
