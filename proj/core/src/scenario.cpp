#include "riskdual/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string_view>

#include "riskdual/errors.hpp"
#include "riskdual/format.hpp"
#include "riskdual/normal.hpp"
#include "riskdual/random.hpp"

namespace riskdual {

namespace {

double stable_sum(std::span<const double> xs) {
  // Neumaier summation; probability vectors can be long.
  double sum = 0.0;
  double comp = 0.0;
  for (double x : xs) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  return sum + comp;
}

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view field, std::size_t line, const char* what) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), x);
  if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
    throw ParseError(line, std::string("cannot parse ") + what + " '" + std::string(field) + "'");
  }
  return x;
}

}  // namespace

ScenarioSet ScenarioSet::make(std::vector<double> values, std::vector<double> probs) {
  if (values.size() != probs.size()) {
    throw std::invalid_argument("values and probabilities differ in length (" +
                                std::to_string(values.size()) + " vs " +
                                std::to_string(probs.size()) + ")");
  }
  if (values.empty()) {
    throw std::invalid_argument("no scenarios");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw std::invalid_argument("scenario " + std::to_string(i) + " has a non-finite value");
    }
    if (!std::isfinite(probs[i]) || probs[i] < 0.0) {
      throw std::invalid_argument("scenario " + std::to_string(i) +
                                  " has a negative or non-finite probability " +
                                  format_double(probs[i]));
    }
  }
  const double sum = stable_sum(probs);
  if (std::abs(sum - 1.0) > kProbabilitySumTolerance) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "probabilities sum to " << sum;
    throw std::invalid_argument(msg.str());
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    for (double& p : probs) p /= sum;
  }
  return ScenarioSet(std::move(values), std::move(probs));
}

ScenarioSet ScenarioSet::uniform(std::vector<double> values) {
  if (values.empty()) {
    throw std::invalid_argument("no scenarios");
  }
  std::vector<double> probs(values.size(), 1.0 / static_cast<double>(values.size()));
  return make(std::move(values), std::move(probs));
}

double ScenarioSet::mean() const noexcept {
  double m = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) m += probs_[i] * values_[i];
  return m;
}

double ScenarioSet::min_value() const noexcept {
  return *std::min_element(values_.begin(), values_.end());
}

double ScenarioSet::max_value() const noexcept {
  return *std::max_element(values_.begin(), values_.end());
}

ScenarioSet make_scenarios(std::vector<double> values, std::vector<double> probs) {
  return ScenarioSet::make(std::move(values), std::move(probs));
}

ScenarioSet scenarios_from_csv(std::istream& in) {
  std::string raw;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::vector<double> values;
  std::vector<double> probs;

  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (!header_seen) {
      if (line.empty()) continue;
      const auto comma = line.find(',');
      if (comma == std::string_view::npos || trim(line.substr(0, comma)) != "value" ||
          trim(line.substr(comma + 1)) != "prob") {
        throw ParseError(line_no, "expected header 'value,prob'");
      }
      header_seen = true;
      continue;
    }
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string_view::npos) {
      throw ParseError(line_no, "expected two comma-separated fields");
    }
    const std::string_view rest = line.substr(comma + 1);
    if (rest.find(',') != std::string_view::npos) {
      throw ParseError(line_no, "expected two comma-separated fields");
    }
    values.push_back(parse_number(line.substr(0, comma), line_no, "value"));
    probs.push_back(parse_number(rest, line_no, "prob"));
  }
  if (!header_seen) {
    throw ParseError(line_no == 0 ? 1 : line_no, "missing header 'value,prob'");
  }
  if (values.empty()) {
    throw InputError("no scenarios");
  }
  try {
    return ScenarioSet::make(std::move(values), std::move(probs));
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

ScenarioSet scenarios_from_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw InputError("cannot open '" + path + "'");
  }
  return scenarios_from_csv(in);
}

void write_scenarios_csv(std::ostream& out, const ScenarioSet& s) {
  out << "value,prob\n";
  for (std::size_t i = 0; i < s.size(); ++i) {
    out << format_double(s.values()[i]) << ',' << format_double(s.probs()[i]) << '\n';
  }
}

std::string scenarios_to_csv(const ScenarioSet& s) {
  std::ostringstream os;
  write_scenarios_csv(os, s);
  return os.str();
}

ScenarioSet sample_normal(double mean, double std, std::size_t n, std::uint64_t seed) {
  if (n == 0) {
    throw std::invalid_argument("sample_normal needs at least one draw");
  }
  if (!(std >= 0.0) || !std::isfinite(std) || !std::isfinite(mean)) {
    throw std::invalid_argument("sample_normal needs a finite mean and std >= 0");
  }
  CounterRng rng(seed);
  std::vector<double> values(n);
  for (double& v : values) {
    v = mean + std * normal_quantile(rng.uniform_open());
  }
  return ScenarioSet::uniform(std::move(values));
}

ScenarioSet affine(const ScenarioSet& s, double scale, double shift) {
  std::vector<double> values(s.values().begin(), s.values().end());
  for (double& v : values) v = scale * v + shift;
  return ScenarioSet::make(std::move(values),
                           std::vector<double>(s.probs().begin(), s.probs().end()));
}

}  // namespace riskdual
