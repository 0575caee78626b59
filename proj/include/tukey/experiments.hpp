#pragma once

#include "tukey/breakdown.hpp"
#include "tukey/distributions.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace tukey {

enum ExitCode : int { kExitOk = 0, kExitRefused = 2, kExitBudget = 3 };

struct ExperimentConfig {
  std::string name = "convergence";
  DistributionSpec spec{UniformBall{2, 1.0}, {}, 53};
  std::vector<long> n_schedule{50, 200, 800, 1600};
  int trials = 20;
  std::uint64_t seed = 1;
  DirectionSearchConfig search;
  std::string out_dir;  ///< empty: nothing written
  double wall_limit_s = 60.0;

  std::size_t probe_draws = 100000;
  int probe_directions = 180;
  std::vector<double> probe_widths{1e-1, 1e-2, 1e-3};
  double smooth_threshold = 0.01;

  /// Throws std::invalid_argument unless the schedule strictly increases and
  /// trials >= 1.
  void validate() const;
};

/// Reads key=value overrides (variant keys go to the distribution spec;
/// n_schedule, trials, seed, wall_limit_s, probe_draws, probe_directions).
ExperimentConfig parse_experiment(const std::map<std::string, std::string>& kv);

struct ConvergenceRow {
  long n = 0;
  int trial = 0;
  DepthValue lambda_star;
  Rational lower;
  DepthValue inf_lambda_u;
  Rational upper;
  double runtime_ms = 0.0;
  bool aborted = false;  ///< budget exceeded; bounds after the abort point are missing
};

struct ConvergenceSummary {
  long n = 0;
  double median_lower = 0.0;
  double median_upper = 0.0;
  double gap = 0.0;  ///< max(|median lower - 1/3|, |median upper - 1/3|)
};

struct ConvergenceResult {
  int exit_code = kExitOk;
  std::vector<ProbeReport> preflight;
  std::vector<ConvergenceRow> rows;  ///< sorted by (n, trial)
  std::vector<ConvergenceSummary> summary;
  /// Steps where the gap increased; at most one is tolerated.
  int gap_increases = 0;
};

/// Preflight probes (halfspace symmetry and smoothness at theta0); refused
/// runs return kExitRefused with no rows.
ConvergenceResult run_convergence(const ExperimentConfig& cfg);

void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows);
void write_summary_csv(std::ostream& out, const std::vector<ConvergenceSummary>& summary);

struct RegionOracleConfig {
  int d = 2;
  int instances = 200;
  long n_min = 4;
  long n_max = 12;
  double dup_rate = 0.3;
  double collinear_rate = 0.2;
  int random_probes = 100;
  bool general_position = false;  ///< sample without degeneracy and check certificate shape
  std::uint64_t seed = 11;
};

struct RegionOracleSummary {
  int instances = 0;
  long levels = 0;
  long points_checked = 0;
  long mismatches = 0;
  long certificates = 0;
  long certificate_exceptions = 0;  ///< general-position shape violations
  std::vector<std::string> failures;  ///< first few mismatch descriptions
};

/// Membership of depth_region against pointwise depth on vertices, sample
/// points, random probes and points pushed just outside each facet.
RegionOracleSummary check_region_instance(const DataSet& ds, int random_probes, std::uint64_t seed,
                                          bool check_general_position);
RegionOracleSummary run_region_oracle(const RegionOracleConfig& cfg);

struct AttackDemoRow {
  Rational scale;
  ContaminationPlan plan;
  AttackVerification verification;
};

struct AttackDemo {
  DataSet data;
  Direction u;
  DepthValue lambda_u;
  std::vector<AttackDemoRow> rows;
};

/// Builds and verifies the attack along `u` (default: the minimizing
/// direction of the upper bound) at each scale.
AttackDemo run_attack_demo(const DataSet& ds, const std::vector<Rational>& scales,
                           std::optional<Direction> u = std::nullopt, std::optional<long> m = std::nullopt);

void write_attack_csv(std::ostream& out, const AttackDemo& demo);
/// Plot data: the line l_u (two points), y0 and contaminated median per scale.
void write_attack_geometry(std::ostream& out, const AttackDemo& demo);

}  // namespace tukey
