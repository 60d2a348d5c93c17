//
// Copyright 2026 The dpgauss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// dpgauss: calibrate Gaussian-mechanism noise for (epsilon, delta)
// differential privacy, emit bound-comparison surfaces, verify the
// cross-bound invariants, and perturb scalars or CSV columns.
//
// Exit codes: 0 success, 1 verification failure, 2 domain error (including
// bad flags), 3 I/O error.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dpgauss/dpgauss.hpp"

namespace {

using dpgauss::CalibrationMethod;
using dpgauss::CalibrationResult;
using dpgauss::GridSpacing;
using dpgauss::GridSpec;
using dpgauss::OutputTable;
using dpgauss::PrivacyParams;
using dpgauss::Sensitivity;
using dpgauss::SurfaceKind;
using dpgauss::TableCell;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int OutputPrecision() {
  const char* env = std::getenv("DPGAUSS_PRECISION");
  if (env == nullptr || *env == '\0') return 12;
  int value = 0;
  auto [ptr, ec] = std::from_chars(env, env + std::strlen(env), value);
  if (ec != std::errc() || *ptr != '\0' || value < 1) {
    std::cerr << "warning: ignoring invalid DPGAUSS_PRECISION value\n";
    return 12;
  }
  return std::min(value, 17);
}

double ParseDoubleStrict(const std::string& text, const std::string& what) {
  double value = 0.0;
  const char* begin = text.c_str();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw std::domain_error(what + ": cannot parse number '" + text + "'");
  }
  return value;
}

struct AxisSpec {
  double lo = 0.0;
  double hi = 0.0;
  int n = 0;
};

// Parses the lo:hi:n axis syntax.
AxisSpec ParseAxis(const std::string& text, const std::string& flag) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream stream(text);
  while (std::getline(stream, part, ':')) parts.push_back(part);
  if (parts.size() != 3) {
    throw std::domain_error(flag + " expects lo:hi:n, got '" + text + "'");
  }
  AxisSpec axis;
  axis.lo = ParseDoubleStrict(parts[0], flag);
  axis.hi = ParseDoubleStrict(parts[1], flag);
  int n = 0;
  auto [ptr, ec] =
      std::from_chars(parts[2].c_str(), parts[2].c_str() + parts[2].size(), n);
  if (ec != std::errc() || ptr != parts[2].c_str() + parts[2].size() ||
      n < 1) {
    throw std::domain_error(flag + ": point count must be a positive integer");
  }
  axis.n = n;
  return axis;
}

GridSpacing ParseSpacing(const std::string& text) {
  if (text == "linear") return GridSpacing::kLinear;
  if (text == "log") return GridSpacing::kLog;
  throw std::domain_error("--spacing must be 'linear' or 'log'");
}

CalibrationMethod ParseMethod(const std::string& text) {
  if (text == "standard") return CalibrationMethod::kStandard;
  if (text == "closed-form") return CalibrationMethod::kClosedForm;
  if (text == "simplified") return CalibrationMethod::kSimplified;
  if (text == "optimal") return CalibrationMethod::kOptimalSufficient;
  if (text == "analytic") return CalibrationMethod::kAnalyticExact;
  throw std::domain_error("unknown method '" + text + "'");
}

CalibrationResult Calibrate(CalibrationMethod method,
                            const PrivacyParams& params,
                            const Sensitivity& sens) {
  switch (method) {
    case CalibrationMethod::kStandard:
      return dpgauss::standard_sigma(params, sens);
    case CalibrationMethod::kClosedForm:
      return dpgauss::closed_form_sigma(params, sens);
    case CalibrationMethod::kSimplified:
      return dpgauss::simplified_sigma(params, sens);
    case CalibrationMethod::kOptimalSufficient:
      return dpgauss::optimal_sufficient_sigma(params, sens);
    case CalibrationMethod::kAnalyticExact:
      return dpgauss::solve_analytic_sigma(params, sens);
  }
  throw std::logic_error("Calibrate: unknown method");
}

// ---------------------------------------------------------------------------
// calibrate

struct CalibrateOptions {
  double epsilon = 0.0;
  double delta = 0.0;
  double sensitivity = 1.0;
  std::string method = "all";
};

int RunCalibrate(const CalibrateOptions& opt) {
  PrivacyParams params(opt.epsilon, opt.delta);
  Sensitivity sens(opt.sensitivity);
  bool all = opt.method == "all";
  // Fixed order so the bound ordering is visible in the output: sigma is
  // non-increasing from simplified to analytic.
  std::vector<CalibrationMethod> methods;
  if (all) {
    methods = {CalibrationMethod::kStandard, CalibrationMethod::kSimplified,
               CalibrationMethod::kClosedForm,
               CalibrationMethod::kOptimalSufficient,
               CalibrationMethod::kAnalyticExact};
  } else {
    methods = {ParseMethod(opt.method)};
  }
  OutputTable table;
  table.header = {"method", "sigma", "z"};
  table.precision = OutputPrecision();
  for (CalibrationMethod method : methods) {
    CalibrationResult result;
    if (all) {
      try {
        result = Calibrate(method, params, sens);
      } catch (const std::domain_error& e) {
        std::cerr << "note: skipping " << to_string(method) << ": " << e.what()
                  << "\n";
        continue;
      }
    } else {
      result = Calibrate(method, params, sens);
    }
    if (result.domain_warning) {
      std::cerr << "warning: " << to_string(method) << ": "
                << *result.domain_warning << "\n";
    }
    table.add_row({std::string(to_string(method)), result.sigma,
                   result.z_value ? TableCell(*result.z_value)
                                  : TableCell(std::string())});
  }
  table.write_csv(std::cout);
  return 0;
}

// ---------------------------------------------------------------------------
// grid

struct GridOptions {
  std::string surface;
  std::string eps = "0.01:1:50";
  std::string delta = "0.01:0.99:50";
  std::string spacing = "linear";
  std::string out;
};

SurfaceKind ParseSurface(const std::string& text) {
  if (text == "g") return SurfaceKind::kG;
  if (text == "d") return SurfaceKind::kD;
  if (text == "r") return SurfaceKind::kR;
  if (text == "rho") return SurfaceKind::kRho;
  if (text == "crossover") return SurfaceKind::kCrossover;
  throw std::domain_error("unknown surface '" + text + "'");
}

int RunGrid(const GridOptions& opt) {
  SurfaceKind kind = ParseSurface(opt.surface);
  AxisSpec eps = ParseAxis(opt.eps, "--eps");
  AxisSpec delta = ParseAxis(opt.delta, "--delta");
  GridSpec grid;
  grid.eps_lo = eps.lo;
  grid.eps_hi = eps.hi;
  grid.n_eps = eps.n;
  grid.delta_lo = delta.lo;
  grid.delta_hi = delta.hi;
  grid.n_delta = delta.n;
  grid.spacing = ParseSpacing(opt.spacing);
  std::vector<dpgauss::SurfacePoint> points =
      dpgauss::evaluate_surface(kind, grid);
  OutputTable table;
  table.precision = OutputPrecision();
  bool one_dimensional =
      kind == SurfaceKind::kRho || kind == SurfaceKind::kCrossover;
  if (one_dimensional) {
    table.header = {"delta", "value"};
    for (const auto& point : points) {
      table.add_row({point.delta, point.value});
    }
  } else {
    table.header = {"epsilon", "delta", "value", "violated"};
    for (const auto& point : points) {
      table.add_row({point.epsilon, point.delta, point.value,
                     std::string(point.violated ? "1" : "0")});
    }
  }
  if (!opt.out.empty()) {
    std::ofstream file(opt.out);
    if (!file) throw IoError("cannot open output file: " + opt.out);
    table.write_csv(file);
    file.flush();
    if (!file) throw IoError("cannot write output file: " + opt.out);
  } else {
    table.write_csv(std::cout);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyOptions {
  std::string eps = "0.05:5:20";
  std::string delta = "1e-10:0.9:20";
  std::string spacing = "log";
  std::optional<double> sensitivity;
  std::optional<double> tolerance;
};

struct CheckOutcome {
  std::string name;
  double max_violation = -std::numeric_limits<double>::infinity();
  double tolerance = 0.0;
  bool strict = false;
  double at_eps = 0.0;
  double at_delta = 0.0;
  double at_sens = 0.0;
  bool evaluated = false;

  void Observe(double violation, double eps, double delta, double sens) {
    evaluated = true;
    if (violation > max_violation) {
      max_violation = violation;
      at_eps = eps;
      at_delta = delta;
      at_sens = sens;
    }
  }

  bool Passed() const {
    if (!evaluated) return true;
    return strict ? max_violation < tolerance : max_violation <= tolerance;
  }
};

void PrintOutcome(const CheckOutcome& check) {
  if (!check.evaluated) {
    std::cout << "PASS " << check.name << ": skipped (no grid points in its "
              << "parameter region)\n";
    return;
  }
  std::cout << (check.Passed() ? "PASS " : "FAIL ") << check.name
            << ": max violation " << dpgauss::format_double(check.max_violation, 6)
            << (check.strict ? " (must be < " : " (tolerance ")
            << dpgauss::format_double(check.tolerance, 6) << ")";
  if (!check.Passed()) {
    std::cout << " at epsilon=" << dpgauss::format_double(check.at_eps, 6)
              << " delta=" << dpgauss::format_double(check.at_delta, 6)
              << " sensitivity=" << dpgauss::format_double(check.at_sens, 6);
  }
  std::cout << "\n";
}

int RunVerify(const VerifyOptions& opt) {
  AxisSpec eps_axis = ParseAxis(opt.eps, "--eps");
  AxisSpec delta_axis = ParseAxis(opt.delta, "--delta");
  GridSpacing spacing = ParseSpacing(opt.spacing);
  GridSpec grid;
  grid.eps_lo = eps_axis.lo;
  grid.eps_hi = eps_axis.hi;
  grid.n_eps = eps_axis.n;
  grid.delta_lo = delta_axis.lo;
  grid.delta_hi = delta_axis.hi;
  grid.n_delta = delta_axis.n;
  grid.spacing = spacing;
  grid.validate();
  std::vector<double> eps_values =
      dpgauss::axis_values(eps_axis.lo, eps_axis.hi, eps_axis.n, spacing);
  std::vector<double> delta_values = dpgauss::axis_values(
      delta_axis.lo, delta_axis.hi, delta_axis.n, spacing);
  std::vector<double> ordering_sens =
      opt.sensitivity ? std::vector<double>{*opt.sensitivity}
                      : std::vector<double>{0.5, 1.0, 7.0};
  double pair_sens = opt.sensitivity.value_or(1.0);
  double tol_rel = opt.tolerance.value_or(1e-12);
  double tol_oracle = opt.tolerance.value_or(1e-9);

  CheckOutcome ordering{.name = "ordering", .tolerance = tol_rel};
  CheckOutcome floor{.name = "floor", .tolerance = 0.0, .strict = true};
  CheckOutcome oracle{.name = "oracle-equivalence", .tolerance = tol_oracle};
  CheckOutcome dom_analytic{.name = "dominance-analytic", .tolerance = tol_rel};
  CheckOutcome dom_standard{.name = "dominance-standard", .tolerance = tol_rel};

  for (double delta : delta_values) {
    for (double eps : eps_values) {
      PrivacyParams params(eps, delta);
      for (double s : ordering_sens) {
        Sensitivity sens(s);
        double optimal = dpgauss::optimal_sufficient_sigma(params, sens).sigma;
        double closed = dpgauss::closed_form_sigma(params, sens).sigma;
        double simplified = dpgauss::simplified_sigma(params, sens).sigma;
        ordering.Observe((optimal - closed) / closed, eps, delta, s);
        ordering.Observe((closed - simplified) / simplified, eps, delta, s);
        double floor_sigma = dpgauss::sigma_floor(params, sens);
        floor.Observe((floor_sigma - optimal) / floor_sigma, eps, delta, s);
      }
      Sensitivity sens(pair_sens);
      double optimal = dpgauss::optimal_sufficient_sigma(params, sens).sigma;
      double solved = dpgauss::solve_sufficient_sigma(params, sens);
      oracle.Observe(std::fabs(solved - optimal) / optimal, eps, delta,
                     pair_sens);
      double analytic = dpgauss::solve_analytic_sigma(params, sens).sigma;
      dom_analytic.Observe((analytic - optimal) / optimal, eps, delta,
                           pair_sens);
      if (eps < 1.0 && delta < 0.946) {
        double closed = dpgauss::closed_form_sigma(params, sens).sigma;
        double standard = dpgauss::standard_sigma(params, sens).sigma;
        dom_standard.Observe((closed - standard) / standard, eps, delta,
                             pair_sens);
      }
    }
  }

  bool all_pass = true;
  for (const CheckOutcome* check :
       {&ordering, &floor, &oracle, &dom_analytic, &dom_standard}) {
    PrintOutcome(*check);
    all_pass = all_pass && check->Passed();
  }
  return all_pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// noise

struct NoiseOptions {
  std::optional<double> value;
  std::string in;
  int column = 1;
  double epsilon = 0.0;
  double delta = 0.0;
  double sensitivity = 1.0;
  std::string method = "closed-form";
  std::optional<std::uint64_t> seed;
};

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream stream(line);
  while (std::getline(stream, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

int RunNoise(const NoiseOptions& opt) {
  PrivacyParams params(opt.epsilon, opt.delta);
  Sensitivity sens(opt.sensitivity);
  CalibrationMethod method = ParseMethod(opt.method);
  int precision = OutputPrecision();

  if (!opt.value.has_value() && opt.in.empty()) {
    throw std::domain_error("noise: one of --value or --in is required");
  }
  if (opt.column < 1) {
    throw std::domain_error("noise: --column must be >= 1");
  }

  std::optional<std::string> header_line;
  std::vector<std::vector<std::string>> rows;
  std::vector<double> values;
  if (opt.value) {
    values.push_back(*opt.value);
  } else {
    std::ifstream file(opt.in);
    if (!file) throw IoError("cannot open input file: " + opt.in);
    std::string line;
    bool first = true;
    while (std::getline(file, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (first) {
        header_line = line;
        first = false;
        continue;
      }
      std::vector<std::string> cells = SplitCsvLine(line);
      if (opt.column < 1 || static_cast<std::size_t>(opt.column) > cells.size()) {
        throw IoError("row " + std::to_string(rows.size() + 2) + " has " +
                      std::to_string(cells.size()) +
                      " columns; --column is out of range");
      }
      const std::string& cell = cells[opt.column - 1];
      double parsed = 0.0;
      auto [ptr, ec] =
          std::from_chars(cell.c_str(), cell.c_str() + cell.size(), parsed);
      if (ec != std::errc() || ptr != cell.c_str() + cell.size()) {
        throw IoError("row " + std::to_string(rows.size() + 2) +
                      ": cannot parse '" + cell + "' as a number");
      }
      values.push_back(parsed);
      rows.push_back(std::move(cells));
    }
    if (!header_line) throw IoError("input file is empty: " + opt.in);
  }

  dpgauss::NoiseOutput out =
      dpgauss::calibrate_and_sample(params, sens, method, values, opt.seed);
  if (out.domain_warning) {
    std::cerr << "warning: " << to_string(method) << ": " << *out.domain_warning
              << "\n";
  }
  std::cerr << "sigma_used=" << dpgauss::format_double(out.sigma_used, precision)
            << " method=" << to_string(*out.method)
            << " seed_used=" << out.seed_used << "\n";

  if (opt.value) {
    std::cout << dpgauss::format_double(out.noisy_values[0], precision) << "\n";
    return 0;
  }
  std::cout << *header_line << "\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i][opt.column - 1] =
        dpgauss::format_double(out.noisy_values[i], precision);
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      if (j > 0) std::cout << ',';
      std::cout << rows[i][j];
    }
    std::cout << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Gaussian-mechanism noise calibration for (epsilon, delta) "
      "differential privacy"};
  app.require_subcommand(1);

  CalibrateOptions copt;
  CLI::App* calibrate = app.add_subcommand(
      "calibrate", "Compute the noise scale sigma for one or all methods");
  calibrate->add_option("--epsilon", copt.epsilon, "Privacy loss bound (> 0)")
      ->required();
  calibrate->add_option("--delta", copt.delta, "Failure probability in (0, 1]")
      ->required();
  calibrate
      ->add_option("--sensitivity", copt.sensitivity,
                   "Global query sensitivity (>= 0)")
      ->capture_default_str();
  calibrate
      ->add_option("--method", copt.method,
                   "standard|closed-form|simplified|optimal|analytic|all")
      ->capture_default_str()
      ->check(CLI::IsMember({"standard", "closed-form", "simplified",
                             "optimal", "analytic", "all"}));

  GridOptions gopt;
  CLI::App* grid = app.add_subcommand(
      "grid", "Evaluate a comparison surface over an (epsilon, delta) grid");
  grid->add_option("--surface", gopt.surface, "g|d|r|rho|crossover")
      ->required()
      ->check(CLI::IsMember({"g", "d", "r", "rho", "crossover"}));
  grid->add_option("--eps", gopt.eps, "Epsilon axis as lo:hi:n")
      ->capture_default_str();
  grid->add_option("--delta", gopt.delta, "Delta axis as lo:hi:n")
      ->capture_default_str();
  grid->add_option("--spacing", gopt.spacing, "linear|log")
      ->capture_default_str()
      ->check(CLI::IsMember({"linear", "log"}));
  grid->add_option("--out", gopt.out, "Write CSV to this file instead of stdout");

  VerifyOptions vopt;
  CLI::App* verify = app.add_subcommand(
      "verify", "Check the cross-bound invariants on a parameter grid");
  verify->add_option("--eps", vopt.eps, "Epsilon axis as lo:hi:n")
      ->capture_default_str();
  verify->add_option("--delta", vopt.delta, "Delta axis as lo:hi:n")
      ->capture_default_str();
  verify->add_option("--spacing", vopt.spacing, "linear|log")
      ->capture_default_str()
      ->check(CLI::IsMember({"linear", "log"}));
  verify->add_option("--sensitivity", vopt.sensitivity,
                     "Use one sensitivity instead of the default {0.5, 1, 7}");
  verify->add_option("--tolerance", vopt.tolerance,
                     "Override the per-check relative tolerances");

  NoiseOptions nopt;
  CLI::App* noise = app.add_subcommand(
      "noise", "Perturb a scalar or a CSV column with calibrated noise");
  CLI::Option* value_opt =
      noise->add_option("--value", nopt.value, "Single value to perturb");
  noise->add_option("--in", nopt.in, "Input CSV file (header row required)")
      ->excludes(value_opt);
  noise->add_option("--column", nopt.column, "1-based CSV column to perturb")
      ->capture_default_str();
  noise->add_option("--epsilon", nopt.epsilon, "Privacy loss bound (> 0)")
      ->required();
  noise->add_option("--delta", nopt.delta, "Failure probability in (0, 1]")
      ->required();
  noise
      ->add_option("--sensitivity", nopt.sensitivity,
                   "Global query sensitivity (>= 0)")
      ->capture_default_str();
  noise
      ->add_option("--method", nopt.method,
                   "standard|closed-form|simplified|optimal|analytic")
      ->capture_default_str()
      ->check(CLI::IsMember(
          {"standard", "closed-form", "simplified", "optimal", "analytic"}));
  noise->add_option("--seed", nopt.seed, "64-bit generator seed");

  try {
    app.parse(argc, argv);
    if (*calibrate) return RunCalibrate(copt);
    if (*grid) return RunGrid(gopt);
    if (*verify) return RunVerify(vopt);
    if (*noise) return RunNoise(nopt);
    return 2;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
