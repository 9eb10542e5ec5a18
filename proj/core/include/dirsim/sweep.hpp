#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dirsim/monte_carlo.hpp"
#include "dirsim/optimizer.hpp"

namespace dirsim {

enum class SweepVariable { p_s, t_s, t1_split, t_total, k, irs_x, irs_y };
enum class Design { optimized, random, pure_los_design, pure_nlos_design };
enum class Metric { gamma_analytic, rate_bound, rate_mc, gamma_mc };

const char* to_string(SweepVariable v);
const char* to_string(Design d);
const char* to_string(Metric m);
SweepVariable sweep_variable_from_string(const std::string& s);
Design design_from_string(const std::string& s);
Metric metric_from_string(const std::string& s);

/// One sweep: the axis (P_S and K values are dBm/dB, element counts are
/// totals, positions are meters), the systems and phase designs to evaluate,
/// and the metrics to record at each point.
struct SweepSpec {
  SweepVariable variable = SweepVariable::p_s;
  std::vector<double> values;
  std::vector<SystemKind> systems{SystemKind::dirs_c};
  std::vector<Design> designs{Design::optimized};
  std::vector<Metric> metrics{Metric::rate_bound};
  long long mc_samples = 100000;
  int random_draws = 10;  // phase draws averaged for the random design
};

struct ResultRow {
  double sweep_value = 0.0;
  SystemKind system = SystemKind::dirs_c;
  Design design = Design::optimized;
  Metric metric = Metric::rate_bound;
  double value = 0.0;
  std::optional<double> std_error;
  std::optional<int> iterations;
};

/// Scenario at one sweep point. Element-count axes re-factor the panels into
/// near-square grids; position axes move the panels and rebuild the derived
/// path losses; the K axis forces the general regime on every link.
ScenarioConfig apply_sweep_value(const ScenarioConfig& base, SweepVariable v,
                                 double value);

/// Runs every (value, system, design, metric) cell. Cells are dispatched to a
/// small worker pool and emitted in deterministic nested-loop order no matter
/// how the workers are scheduled.
std::vector<ResultRow> run_sweep(const ScenarioConfig& base,
                                 const SweepSpec& spec, std::uint64_t seed,
                                 int num_threads = 0);

/// Locale-independent shortest round-trip decimal formatting.
std::string format_number(double x);

/// Fixed-schema CSV: header row plus one row per result.
std::string sweep_to_csv(const SweepSpec& spec,
                         const std::vector<ResultRow>& rows);

}  // namespace dirsim
