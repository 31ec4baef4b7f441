#pragma once

#include "horolab/modular.hpp"

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace horolab {

enum class ExperimentKind {
  horocycle_decay,
  fold_unfold,
  interpolation_suite,
  sl3_roots,
  sln_tables,
  budgets,
};

enum class EpsPolicy { fixed, paper_optimal };

const char* kind_name(ExperimentKind kind);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::horocycle_decay;
  double t_min = 10.0;
  double t_max = 1e4;
  int t_points = 13;
  EpsPolicy eps_policy = EpsPolicy::fixed;
  double eps_value = 0.01;
  double bump_center_x = 0.0;
  double bump_center_y = 2.0;
  double bump_wx = 0.4;
  double bump_wy = 0.8;
  double bump_amplitude = 1.0;
  QuadratureSpec quad;
  std::string out;
  int workers = 1;

  static ExperimentConfig parse(std::string_view text);
  static ExperimentConfig load(const std::string& path);
  void validate() const;

  std::vector<double> t_grid() const;
  BumpTestFunction bump() const;
};

struct ResultRow {
  std::string label;  // T, or T1|T2|... for higher rank
  double T = 0.0;
  double value = 0.0;
  double reference = 0.0;
  double abs_error = 0.0;
  double eps = 0.0;
  double wall_ms = 0.0;
};

struct FitReport {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  double threshold = 0.0;
  int points = 0;
  bool pass = false;
};

// Least squares on (log T, log abs_error), skipping rows with zero error or T < t_cut.
FitReport fit_slope(const std::vector<ResultRow>& rows, double threshold, double t_cut = 0.0);

struct RunOptions {
  bool record_timing = true;
};

struct RunResult {
  std::vector<ResultRow> rows;
  FitReport fit;
  bool has_fit = false;
  bool pass = false;
  std::vector<std::string> notes;
};

RunResult run(const ExperimentConfig& config, const RunOptions& options = {});

std::string format_csv(const std::vector<ResultRow>& rows);
std::string format_summary(const ExperimentConfig& config, const RunResult& result);
std::vector<ResultRow> parse_csv(std::string_view text);

// Writes the CSV to path and the summary to path + ".summary.txt".
void emit_report(const ExperimentConfig& config, const RunResult& result, const std::string& path);

struct CheckResult {
  std::string name;
  bool pass;
  std::string detail;
};

// Quick self-checks of one module, or of all of them.
std::vector<CheckResult> verify_suite(std::string_view suite);

// Runs fn(i) for i in [0, count) on up to workers threads.
void parallel_for(int count, int workers, const std::function<void(int)>& fn);

}  // namespace horolab
