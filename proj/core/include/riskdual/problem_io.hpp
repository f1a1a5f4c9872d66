#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "riskdual/dual_solver.hpp"
#include "riskdual/gaussian_cvar.hpp"

namespace riskdual {

/**
 * Reads a problem from JSON:
 *
 *   {
 *     "returns": [[r11, r12], [r21, r22], ...],   // one row per scenario
 *     "probs": [p1, p2, ...],
 *     "decision_set": {"type": "simplex"}
 *                   | {"type": "box", "lower": [...], "upper": [...]},
 *     "risk": {"kind": "cvar", "p": 0.95}
 *           | {"kind": "variance"} | {"kind": "wmd", "p": 0.9}
 *           | {"kind": "oce", "breakpoints": [...], "slopes": [...]},
 *     "gamma": -772.5
 *   }
 *
 * Any syntax error, missing field, wrong type or invalid value throws
 * InputError.
 */
LinearPayoffProblem problem_from_json(std::string_view text);
LinearPayoffProblem problem_from_json_file(const std::string& path);

std::string problem_to_json(const LinearPayoffProblem& problem);

/// Optional sections appended to a solve report.
struct SolveReportExtras {
  const MaxminResult* maxmin = nullptr;
  const SaddleReport* saddle = nullptr;
  bool include_trace = false;
};

/// SolveResult as a JSON object; non-finite numbers become null.
std::string solve_result_to_json(const SolveResult& result, const SolveReportExtras& extras = {});

std::string table3_to_json(const std::vector<Table3Row>& rows);

}  // namespace riskdual
