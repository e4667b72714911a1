#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "thermoent/analytic.hpp"
#include "thermoent/dynamics.hpp"
#include "thermoent/entfilter.hpp"
#include "thermoent/model.hpp"

namespace thermoent {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class MachineVariant { ResetQutrit, ResetQudit, LindbladQutrit };
enum class AxisScale { Linear, Log };

struct SweepAxis {
  std::string name;
  double min = 0.0;
  double max = 1.0;
  std::size_t points = 2;
  AxisScale scale = AxisScale::Linear;

  std::vector<double> values() const;
  void validate() const;
};

struct OptimizerSettings {
  std::size_t budget = 1500;  // simplex iterations per local search
  std::uint64_t seed = 1;
  std::size_t restarts = 6;   // random starts per optimisation
};

struct SweepConfig {
  std::string experiment;
  MachineVariant variant = MachineVariant::ResetQutrit;
  std::size_t d = 2;
  CouplingFamily family = CouplingFamily::Equal;
  std::vector<SweepAxis> axes;
  std::map<std::string, double> fixed;
  std::map<std::string, std::vector<double>> lists;
  OptimizerSettings optimizer;
  std::string output;

  void validate() const;
  const SweepAxis& axis(const std::string& name) const;
  double fixed_or(const std::string& name, double fallback) const;
  std::vector<double> list_or(const std::string& name, std::vector<double> fallback) const;
};

/// Default configurations of the shipped experiments ("figure2", "figure3",
/// "figure4b", "conjecture").
SweepConfig default_config(const std::string& experiment);

/// g, p_A, p_B <= eta * min(1, eps). The search box spans `dynamic_range`
/// below that bound in each parameter.
struct PerturbativeConstraint {
  double eta = 1e-2;
  double epsilon = 1.0;
  double dynamic_range = 1e4;

  double upper() const;
  double lower() const { return upper() / dynamic_range; }
  void validate() const;
};

/// One output row. Fields that do not apply to an experiment stay NaN.
struct FigureRecord {
  std::string experiment;
  std::string objective;
  std::string status = "ok";  // ok | infeasible | invalid | degenerate | unphysical
  std::size_t i = 0;          // first grid index
  std::size_t j = 0;          // second grid index
  std::size_t d = 2;
  double t_a = 0.0;           // +inf for the maximal gradient
  double t_b = 0.0;
  double epsilon = 1.0;
  double g = 0.0;
  double p_a = 0.0;
  double p_b = 0.0;
  double target_psuc = 0.0;
  double p_suc = 0.0;
  double negativity = 0.0;
  double chsh = 0.0;
  double fidelity = 0.0;
  double coherence = 0.0;
  double solver_negativity = 0.0;
  double kernel_gap = 0.0;
  double residual = 0.0;
  std::string note;
};

/// Steady state of the reset machine plus its filtered image.
struct MachineSolve {
  SteadyState steady;
  FilterOutcome filtered;
};

MachineSolve solve_reset(const MachineSpec& spec, const BathSpec& bath_a, const BathSpec& bath_b,
                         const FilterSpec& filter);

// ---- success probability versus entanglement quality ---------------------

struct FrontierOptions {
  CouplingFamily family = CouplingFamily::Equal;
  double theta = 0.7853981633974483;
  double psuc_tolerance = 0.01;  // relative
  bool solver_check = true;
  OptimizerSettings optimizer;
};

/// One record per target optimising the negativity, then one per target
/// optimising the CHSH value, both in grid order.
std::vector<FigureRecord> tradeoff_frontier(const PerturbativeConstraint& constraint,
                                            const std::vector<double>& psuc_grid, const FrontierOptions& options = {});

/// p_suc at which the optimised `quantity` ("negativity" or "chsh") first
/// drops to `level`, linearly interpolated between feasible frontier points.
/// NaN when it never does.
double frontier_crossing(const std::vector<FigureRecord>& frontier, const std::string& quantity, double level);

// ---- finite temperatures -------------------------------------------------

struct TemperatureSweepOptions {
  /// Optimised points must herald at least this often; without a floor the
  /// coherence optimum runs off to vanishing success probability.
  double min_psuc = 1e-8;
  double size_tolerance = 1e-4;  // simplex size in log-parameter space
  OptimizerSettings optimizer;
};

/// Per T_A, maximises |<0,2|rho'|1,1>| of the filtered state over
/// (g, p_A, p_B) with equal couplings and p_suc >= min_psuc, then reports the
/// negativity. The optimum of each T_A seeds the next one. Points where the
/// floor cannot be met are marked "infeasible".
std::vector<FigureRecord> finite_temperature_sweep(Temperature t_b, double epsilon, const std::vector<double>& t_a_grid,
                                                   const PerturbativeConstraint& constraint,
                                                   const TemperatureSweepOptions& options = {});

// ---- Lindblad heatmap -----------------------------------------------------

struct LindbladParameters {
  double gamma_a = 1e-4;
  double gamma_b = 5e-3;
  double dephasing = 3.5e-5;
  double g = 1.6e-3;  // g1 = g2 = g3
  double epsilon = 3.0;
  double gamma_b12_factor = 1.0 / 50.0;  // Gamma_{B,12} = factor * Gamma_B
};

/// Bosonic rates for both qutrits at the given temperatures.
Liouvillian lindblad_qutrit_liouvillian(const LindbladParameters& params, Temperature t_a, Temperature t_b);

struct HeatmapOptions {
  double psuc_threshold = 1e-8;  // cells below are marked invalid
  std::size_t threads = 0;       // 0: hardware concurrency
};

/// Row-major over (T_B index j, T_A index i); record.i indexes T_A.
std::vector<FigureRecord> lindblad_heatmap(const LindbladParameters& params, const std::vector<double>& t_a_grid,
                                           const std::vector<double>& t_b_grid, const HeatmapOptions& options = {});

struct HeatmapSummary {
  double peak = 0.0;
  std::size_t peak_i = 0;
  std::size_t peak_j = 0;
  std::size_t valid_cells = 0;
  std::size_t positive_cells = 0;
  std::size_t positive_regions = 0;  // 4-connected components of valid cells above the threshold
  bool interior_peak = false;        // 0 < peak_i < last T_A index
};

HeatmapSummary summarize_heatmap(const std::vector<FigureRecord>& cells, std::size_t n_t_a, std::size_t n_t_b,
                                 double positive_threshold = 1e-3);

// ---- Conjecture: arbitrary Schmidt targets ---------------------------------

struct ConjectureOptions {
  double g = 1e-3;
  double p_b = 1e-2;
  double mu = 1e-3;
  std::size_t threads = 0;
};

/// Squared amplitudes drawn from a flat Dirichlet distribution.
SchmidtTarget random_schmidt_target(std::size_t d, std::mt19937_64& rng);

struct ConjectureReport {
  std::size_t d = 0;
  std::size_t trials = 0;
  double min_fidelity = 0.0;
  double median_fidelity = 0.0;
  std::vector<FigureRecord> rows;
};

/// Maximal-gradient solve of schmidt_machine(target) and fidelity of the
/// filtered state with the target.
FigureRecord evaluate_schmidt_target(const SchmidtTarget& target, const ConjectureOptions& options = {});

ConjectureReport conjecture_batch(std::size_t d, std::size_t trials, std::uint64_t seed,
                                  const ConjectureOptions& options = {});

// ---- Oracle-versus-solver self check ---------------------------------------

struct CheckResult {
  std::string name;
  bool passed = false;
  double metric = 0.0;     // worst observed deviation
  double tolerance = 0.0;
};

/// Closed forms against the numerical solver and the reset/Lindblad mapping
/// on seeded random draws.
std::vector<CheckResult> verify_suite(std::uint64_t seed);

/// Runs the experiment a config names and returns its rows. Figure 2 targets
/// are the union of every axis whose name starts with "p_suc". Figure 3 rows
/// carry the curve index in `j`.
std::vector<FigureRecord> run_sweep(const SweepConfig& config, std::size_t threads = 0);

/// Evaluates `fn(k)` for k in [0, n) on up to `threads` workers (0: hardware
/// concurrency). The first exception is rethrown after all workers stop.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn);

}  // namespace thermoent
