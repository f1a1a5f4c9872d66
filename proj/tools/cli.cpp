#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "riskdual/coherence.hpp"
#include "riskdual/dual_solver.hpp"
#include "riskdual/errors.hpp"
#include "riskdual/format.hpp"
#include "riskdual/gaussian_cvar.hpp"
#include "riskdual/problem_io.hpp"
#include "riskdual/risk_measures.hpp"
#include "riskdual/scenario.hpp"
#include "riskdual/utility_family.hpp"

namespace riskdual::cli {

namespace {

/// Thrown for flag combinations CLI11 cannot check on its own.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RiskFlags {
  std::string kind = "cvar";
  double p = 0.95;
  std::vector<double> oce_breakpoints;
  std::vector<double> oce_slopes;
};

void add_risk_flags(CLI::App* cmd, RiskFlags& flags) {
  cmd->add_option("--risk", flags.kind, "Risk measure")
      ->check(CLI::IsMember({"variance", "cvar", "wmd", "oce"}))
      ->capture_default_str();
  cmd->add_option("--p", flags.p, "Confidence level for cvar and wmd")->capture_default_str();
  cmd->add_option("--oce-breakpoints", flags.oce_breakpoints,
                  "Breakpoints of the piecewise-linear OCE utility")
      ->delimiter(',');
  cmd->add_option("--oce-slopes", flags.oce_slopes, "Segment slopes of the OCE utility")
      ->delimiter(',');
}

RiskSpec make_risk(const RiskFlags& flags) {
  try {
    if (flags.kind == "variance") return RiskSpec::variance();
    if (flags.kind == "cvar") return RiskSpec::cvar(flags.p);
    if (flags.kind == "wmd") return RiskSpec::wmd(flags.p);
    return RiskSpec::oce(OceUtility::make(flags.oce_breakpoints, flags.oce_slopes));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::string fixed1(double v) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(1) << v;
  return s.str();
}

std::string fixed2(double v) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(2) << v;
  return s.str();
}

std::string sci(double v) {
  std::ostringstream s;
  s << std::scientific << std::setprecision(3) << v;
  return s.str();
}

std::string general(double v) {
  std::ostringstream s;
  s << std::setprecision(6) << v;
  return s.str();
}

nlohmann::json scenarios_json(const ScenarioSet& s) {
  return {{"values", std::vector<double>(s.values().begin(), s.values().end())},
          {"probs", std::vector<double>(s.probs().begin(), s.probs().end())}};
}

// --- eval-risk --------------------------------------------------------------

struct EvalRiskArgs {
  RiskFlags risk;
  std::string path;
  double tolerance = kDefaultRiskTolerance;
  std::string format = "table";
};

void run_eval_risk(const EvalRiskArgs& args, std::ostream& out) {
  const RiskSpec spec = make_risk(args.risk);
  if (!(args.tolerance > 0.0)) throw UsageError("--tolerance must be positive");
  const ScenarioSet X = scenarios_from_csv_file(args.path);

  const RiskEvaluation generic = evaluate_risk(spec, X, args.tolerance);
  const bool has_closed = spec.has_closed_form();
  double delta = 0.0;
  RiskEvaluation closed;
  if (has_closed) {
    closed = closed_form_risk(spec, X);
    delta = std::abs(generic.value - closed.value);
  }
  const double value = has_closed ? closed.value : generic.value;
  const double eta = has_closed ? closed.eta_star : generic.eta_star;

  if (args.format == "json") {
    nlohmann::json doc;
    doc["risk"] = spec.label();
    doc["scenarios"] = X.size();
    doc["value"] = value;
    doc["eta_star"] = eta;
    doc["generic_value"] = generic.value;
    doc["generic_iterations"] = generic.iterations;
    doc["closed_form_delta"] = has_closed ? nlohmann::json(delta) : nlohmann::json(nullptr);
    out << doc.dump(2) << '\n';
    return;
  }
  out << "risk               " << spec.label() << '\n'
      << "scenarios          " << X.size() << '\n'
      << "value              " << fixed1(value) << '\n'
      << "eta_star           " << fixed1(eta) << '\n'
      << "closed_form_delta  " << (has_closed ? sci(delta) : std::string("n/a")) << '\n';
}

// --- check-axioms -----------------------------------------------------------

struct CheckAxiomsArgs {
  RiskFlags risk;
  std::size_t trials = 200;
  std::uint64_t seed = 1;
  double tolerance = kDefaultAxiomTolerance;
  std::string format = "table";
};

void run_check_axioms(const CheckAxiomsArgs& args, std::ostream& out) {
  const RiskSpec spec = make_risk(args.risk);
  if (args.trials == 0) throw UsageError("--trials must be at least 1");
  if (!(args.tolerance > 0.0)) throw UsageError("--tolerance must be positive");

  const auto reports = check_all_axioms(spec, args.trials, args.seed, args.tolerance);

  if (args.format == "json") {
    nlohmann::json doc;
    doc["risk"] = spec.label();
    doc["seed"] = args.seed;
    doc["trials"] = args.trials;
    nlohmann::json rows = nlohmann::json::array();
    for (const AxiomReport& r : reports) {
      nlohmann::json row{{"axiom", to_string(r.axiom)},
                         {"holds", r.holds},
                         {"trials_run", r.trials}};
      if (r.witness) {
        row["witness"] = {{"x1", scenarios_json(r.witness->x1)},
                          {"x2", scenarios_json(r.witness->x2)},
                          {"scalar", r.witness->scalar},
                          {"lhs", r.witness->lhs},
                          {"rhs", r.witness->rhs}};
      }
      rows.push_back(std::move(row));
    }
    doc["axioms"] = std::move(rows);
    out << doc.dump(2) << '\n';
    return;
  }

  out << "risk " << spec.label() << ", " << args.trials << " trials, seed " << args.seed << '\n';
  out << std::left << std::setw(24) << "axiom" << std::setw(8) << "verdict" << std::setw(8)
      << "trials" << "witness" << '\n';
  for (const AxiomReport& r : reports) {
    out << std::left << std::setw(24) << to_string(r.axiom) << std::setw(8)
        << (r.holds ? "holds" : "fails") << std::setw(8) << r.trials;
    if (r.witness) {
      out << "lhs=" << general(r.witness->lhs) << " rhs=" << general(r.witness->rhs)
          << " scalar=" << general(r.witness->scalar) << " atoms=" << r.witness->x1.size();
    }
    out << '\n';
  }
}

// --- solve ------------------------------------------------------------------

struct SolveArgs {
  std::string path;
  bool check = false;
  bool trace = false;
  std::size_t inner_budget = kDefaultInnerBudget;
  double feasibility_tolerance = SolveOptions{}.feasibility_tolerance;
};

void run_solve(const SolveArgs& args, std::ostream& out) {
  if (args.inner_budget == 0) throw UsageError("--inner-budget must be at least 1");
  if (!(args.feasibility_tolerance >= 0.0)) {
    throw UsageError("--feasibility-tolerance must be nonnegative");
  }
  const LinearPayoffProblem problem = problem_from_json_file(args.path);

  SolveOptions opts;
  opts.inner_budget = args.inner_budget;
  opts.feasibility_tolerance = args.feasibility_tolerance;
  const SolveResult result = solve(problem, opts);

  SolveReportExtras extras;
  extras.include_trace = args.trace;
  MaxminResult maxmin;
  SaddleReport saddle;
  if (args.check) {
    maxmin = maxmin_solve(problem, opts);
    extras.maxmin = &maxmin;
    if (result.status == SolveStatus::Optimal) {
      saddle = verify_saddle(problem, result);
      extras.saddle = &saddle;
    }
  }
  out << solve_result_to_json(result, extras) << '\n';
}

// --- table3 -----------------------------------------------------------------

struct Table3Args {
  std::string format = "csv";
  double tolerance = 1.0;
};

void run_table3(const Table3Args& args, std::ostream& out) {
  if (!std::isfinite(args.tolerance) || args.tolerance < 0.0) {
    throw UsageError("--tolerance must be a finite nonnegative scale factor");
  }
  const std::vector<Table3Row> rows = reproduce_table3(args.tolerance);
  if (args.format == "csv") {
    write_table3_csv(out, rows);
  } else if (args.format == "json") {
    out << table3_to_json(rows) << '\n';
  } else {
    out << std::right << std::setw(5) << "p" << std::setw(9) << "gamma" << std::setw(8) << "a"
        << std::setw(8) << "a_pub" << std::setw(9) << "eta" << std::setw(9) << "eta_pub"
        << std::setw(7) << "theta" << std::setw(7) << "th_pub" << "  flag" << '\n';
    for (const Table3Row& r : rows) {
      out << std::right << std::setw(5) << fixed2(r.p) << std::setw(9) << fixed1(r.gamma)
          << std::setw(8) << fixed2(r.a_sharp_computed) << std::setw(8) << fixed2(r.a_sharp_paper)
          << std::setw(9) << fixed1(r.eta_computed) << std::setw(9) << fixed1(r.eta_paper)
          << std::setw(7) << fixed1(r.theta_computed) << std::setw(7) << fixed1(r.theta_paper)
          << (r.flag ? "  deviates" : "  ok") << '\n';
    }
  }
}

// --- plot-utility -----------------------------------------------------------

struct PlotUtilityArgs {
  RiskFlags risk;
  double lambda = 0.0;
  double eta = 0.0;
  double gamma = 0.0;
  std::vector<double> range{-1000.0, 1000.0};
  std::size_t points = 201;
  std::string out_path;
};

void run_plot_utility(const PlotUtilityArgs& args, std::ostream& out) {
  const RiskSpec spec = make_risk(args.risk);
  if (!std::isfinite(args.lambda) || args.lambda < 0.0) {
    throw UsageError("--lambda must be finite and nonnegative");
  }
  if (!std::isfinite(args.eta) || !std::isfinite(args.gamma)) {
    throw UsageError("--eta and --gamma must be finite");
  }
  if (args.range.size() != 2 || !std::isfinite(args.range[0]) || !std::isfinite(args.range[1]) ||
      !(args.range[0] < args.range[1])) {
    throw UsageError("--range needs two finite values lo < hi");
  }
  if (args.points < 2) throw UsageError("--points must be at least 2");

  const std::vector<UtilityPoint> curve = utility_curve(
      {spec, args.gamma}, args.lambda, args.eta, args.range[0], args.range[1], args.points);

  std::ostringstream csv;
  csv << "x,utility\n";
  for (const UtilityPoint& pt : curve) {
    csv << format_double(pt.x) << ',' << format_double(pt.utility) << '\n';
  }

  if (args.out_path.empty()) {
    out << csv.str();
    return;
  }
  std::ofstream file(args.out_path, std::ios::binary);
  if (!file) throw InputError("cannot open " + args.out_path + " for writing");
  file << csv.str();
  file.flush();
  if (!file) throw InputError("failed writing " + args.out_path);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Risk measures, risk-constrained portfolio solver and utility duality tools",
               "riskdual"};
  app.require_subcommand(1);

  EvalRiskArgs eval_args;
  auto* eval_cmd = app.add_subcommand("eval-risk", "Evaluate a risk measure on a scenario CSV");
  add_risk_flags(eval_cmd, eval_args.risk);
  eval_cmd->add_option("--tolerance", eval_args.tolerance, "Relative search tolerance")
      ->capture_default_str();
  eval_cmd->add_option("--format", eval_args.format)
      ->check(CLI::IsMember({"table", "json"}))
      ->capture_default_str();
  eval_cmd->add_option("scenarios", eval_args.path, "CSV file with a value,prob header")
      ->required();

  CheckAxiomsArgs axiom_args;
  auto* axiom_cmd = app.add_subcommand("check-axioms", "Property-test the coherence axioms");
  add_risk_flags(axiom_cmd, axiom_args.risk);
  axiom_cmd->add_option("--trials", axiom_args.trials)->capture_default_str();
  axiom_cmd->add_option("--seed", axiom_args.seed)->capture_default_str();
  axiom_cmd->add_option("--tolerance", axiom_args.tolerance)->capture_default_str();
  axiom_cmd->add_option("--format", axiom_args.format)
      ->check(CLI::IsMember({"table", "json"}))
      ->capture_default_str();

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "Solve a risk-constrained problem from JSON");
  solve_cmd->add_option("problem", solve_args.path, "Problem JSON file")->required();
  solve_cmd->add_flag("--check", solve_args.check,
                      "Also compute the maxmin value and verify the saddle point");
  solve_cmd->add_flag("--trace", solve_args.trace, "Include every dual evaluation");
  solve_cmd->add_option("--inner-budget", solve_args.inner_budget)->capture_default_str();
  solve_cmd->add_option("--feasibility-tolerance", solve_args.feasibility_tolerance)
      ->capture_default_str();

  Table3Args table_args;
  auto* table_cmd = app.add_subcommand("table3", "Recompute the reference loss-aversion table");
  table_cmd->add_option("--format", table_args.format)
      ->check(CLI::IsMember({"csv", "json", "table"}))
      ->capture_default_str();
  table_cmd->add_option("--tolerance", table_args.tolerance,
                        "Scale applied to the per-column flag tolerances")
      ->capture_default_str();

  PlotUtilityArgs plot_args;
  auto* plot_cmd = app.add_subcommand("plot-utility", "Sample the utility x -> U(x, eta) as CSV");
  add_risk_flags(plot_cmd, plot_args.risk);
  plot_cmd->add_option("--lambda", plot_args.lambda)->capture_default_str();
  plot_cmd->add_option("--eta", plot_args.eta)->capture_default_str();
  plot_cmd->add_option("--gamma", plot_args.gamma)->capture_default_str();
  plot_cmd->add_option("--range", plot_args.range, "lo hi")->expected(2)->capture_default_str();
  plot_cmd->add_option("--points", plot_args.points)->capture_default_str();
  plot_cmd->add_option("--out", plot_args.out_path, "Output file (default: stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (eval_cmd->parsed()) run_eval_risk(eval_args, out);
    if (axiom_cmd->parsed()) run_check_axioms(axiom_args, out);
    if (solve_cmd->parsed()) run_solve(solve_args, out);
    if (table_cmd->parsed()) run_table3(table_args, out);
    if (plot_cmd->parsed()) run_plot_utility(plot_args, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace riskdual::cli
