#include "thermoent/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <queue>
#include <sstream>
#include <thread>

#include "thermoent/mapping.hpp"
#include "thermoent/optimize.hpp"

namespace thermoent {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct RateTriple {
  double g, p_a, p_b;
};

RateTriple unpack(const std::vector<double>& x) { return {std::exp(x[0]), std::exp(x[1]), std::exp(x[2])}; }

Box log_box(const PerturbativeConstraint& c) {
  const double lo = std::log(c.lower()), hi = std::log(c.upper());
  return {{lo, lo, lo}, {hi, hi, hi}};
}

BathSpec hot_bath(double p) { return {Temperature::infinite(), p}; }
BathSpec cold_bath(double p) { return {Temperature::zero(), p}; }

double relative_kernel_gap(const NullVector& k) { return k.sigma_max > 0.0 ? k.sigma_gap / k.sigma_max : 0.0; }

void fill_diagnostics(FigureRecord& r, const SteadyState& s) {
  r.kernel_gap = relative_kernel_gap(s.kernel);
  r.residual = s.residual;
}

std::string join(const std::vector<double>& v) {
  std::ostringstream out;
  out.precision(17);
  for (std::size_t k = 0; k < v.size(); ++k) out << (k ? ";" : "") << v[k];
  return out.str();
}

}  // namespace

// ---- configuration -----------------------------------------------------------

std::vector<double> SweepAxis::values() const {
  validate();
  std::vector<double> out(points);
  for (std::size_t k = 0; k < points; ++k) {
    const double f = static_cast<double>(k) / static_cast<double>(points - 1);
    out[k] = scale == AxisScale::Linear ? min + f * (max - min)
                                        : std::exp(std::log(min) + f * (std::log(max) - std::log(min)));
  }
  out.front() = min;
  out.back() = max;
  return out;
}

void SweepAxis::validate() const {
  if (name.empty()) throw ConfigError("axis: missing name");
  if (points < 2) throw ConfigError("axis " + name + ": needs at least two points");
  if (!std::isfinite(min) || !std::isfinite(max) || !(max > min)) {
    throw ConfigError("axis " + name + ": need finite min < max");
  }
  if (scale == AxisScale::Log && !(min > 0.0)) throw ConfigError("axis " + name + ": log scale needs min > 0");
}

void SweepConfig::validate() const {
  if (axes.empty()) throw ConfigError("config: no swept axes");
  for (const auto& a : axes) a.validate();
  if (optimizer.budget < 1) throw ConfigError("config: optimizer budget must be at least 1");
  if (variant == MachineVariant::ResetQudit && d < 2) throw ConfigError("config: qudit machine needs d >= 2");
  for (const auto& [name, value] : fixed) {
    if (std::isnan(value)) throw ConfigError("config: fixed parameter " + name + " is NaN");
  }
}

const SweepAxis& SweepConfig::axis(const std::string& name) const {
  for (const auto& a : axes) {
    if (a.name == name) return a;
  }
  throw ConfigError("config: missing axis " + name);
}

double SweepConfig::fixed_or(const std::string& name, double fallback) const {
  const auto it = fixed.find(name);
  return it == fixed.end() ? fallback : it->second;
}

std::vector<double> SweepConfig::list_or(const std::string& name, std::vector<double> fallback) const {
  const auto it = lists.find(name);
  return it == lists.end() ? fallback : it->second;
}

SweepConfig default_config(const std::string& experiment) {
  SweepConfig c;
  c.experiment = experiment;
  c.output = experiment + ".csv";
  if (experiment == "figure2") {
    c.axes = {{"p_suc", 0.005, 0.30, 60, AxisScale::Linear}, {"p_suc_low", 1e-4, 4e-3, 12, AxisScale::Log}};
    c.fixed = {{"eta", 1e-2}, {"epsilon", 1.0}, {"theta", std::numbers::pi / 4}};
  } else if (experiment == "figure3") {
    c.axes = {{"T_A", 0.1, 1000.0, 25, AxisScale::Log}};
    c.fixed = {{"eta", 1e-2}};
    c.lists = {{"T_B", {0.0, 0.1, 0.1}}, {"epsilon", {3.0, 3.0, 1.0}}};
  } else if (experiment == "figure4b") {
    c.variant = MachineVariant::LindbladQutrit;
    c.axes = {{"T_A", 0.1, 100.0, 41, AxisScale::Log}, {"T_B", 0.01, 10.0, 41, AxisScale::Log}};
    const LindbladParameters p;
    c.fixed = {{"gamma_a", p.gamma_a},     {"gamma_b", p.gamma_b}, {"dephasing", p.dephasing},
               {"g", p.g},                 {"epsilon", p.epsilon}, {"gamma_b12_factor", p.gamma_b12_factor},
               {"psuc_threshold", 1e-8}};
  } else if (experiment == "conjecture") {
    c.variant = MachineVariant::ResetQudit;
    c.d = 3;
    c.axes = {{"d", 3.0, 5.0, 3, AxisScale::Linear}};
    const ConjectureOptions o;
    c.fixed = {{"trials", 100.0}, {"g", o.g}, {"p_b", o.p_b}, {"mu", o.mu}};
  } else {
    throw ConfigError("unknown experiment '" + experiment + "'");
  }
  return c;
}

double PerturbativeConstraint::upper() const { return eta * std::min(1.0, epsilon); }

void PerturbativeConstraint::validate() const {
  if (!(eta > 0.0) || !std::isfinite(eta)) throw ConfigError("constraint: eta must be positive");
  if (!(epsilon > 0.0)) throw ConfigError("constraint: epsilon must be positive");
  if (!(dynamic_range > 1.0)) throw ConfigError("constraint: dynamic range must exceed 1");
}

MachineSolve solve_reset(const MachineSpec& spec, const BathSpec& bath_a, const BathSpec& bath_b,
                         const FilterSpec& filter) {
  MachineSolve out;
  out.steady = steady_state(reset_liouvillian(spec, bath_a, bath_b));
  out.filtered = apply_filter(out.steady.rho, spec.shape(), filter);
  return out;
}

void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (std::size_t k = 0; k < n; ++k) fn(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < n && !failed; k = next++) {
        try {
          fn(k);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          failed = true;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

// ---- trade-off frontier ------------------------------------------------------

std::vector<FigureRecord> tradeoff_frontier(const PerturbativeConstraint& constraint,
                                            const std::vector<double>& psuc_grid, const FrontierOptions& options) {
  constraint.validate();
  for (double t : psuc_grid) {
    if (!(t > 0.0 && t <= 0.3)) throw ConfigError("tradeoff_frontier: targets must lie in (0, 0.3]");
  }
  const Box box = log_box(constraint);
  const ComplexVector target_state = theta_target_state(options.theta);
  const BipartiteShape qubits{2, 2};
  const auto closed = [&](const std::vector<double>& x) {
    const RateTriple r = unpack(x);
    const double p = qutrit_psuc(options.family, r.g, options.theta, r.p_a, r.p_b);
    const ComplexMatrix rho = filtered_qutrit_state(options.family, r.g, options.theta, r.p_a, r.p_b);
    return std::pair{p, rho};
  };

  std::vector<FigureRecord> out;
  for (const std::string quantity : {"negativity", "chsh"}) {
    std::vector<double> previous;
    for (std::size_t k = 0; k < psuc_grid.size(); ++k) {
      const double target = psuc_grid[k];
      const auto value = [&](const ComplexMatrix& rho) {
        return quantity == "negativity" ? negativity(rho, qubits) : chsh_max(rho);
      };
      double weight = 1e2;
      const Objective f = [&](const std::vector<double>& x) {
        const auto [p, rho] = closed(x);
        const double miss = std::max(0.0, std::abs(p - target) / target - 0.5 * options.psuc_tolerance);
        return -value(rho) + weight * miss * miss;
      };
      std::vector<std::vector<double>> seeds{{0.5 * (box.lower[0] + box.upper[0]), box.lower[1], box.upper[2]}};
      if (!previous.empty()) seeds.push_back(previous);
      SimplexOptions so;
      so.max_iterations = options.optimizer.budget;
      SimplexResult best =
          minimize_multistart(f, box, seeds, options.optimizer.restarts, options.optimizer.seed + k, so);
      for (double w : {1e4, 1e6, 1e8}) {
        weight = w;
        best = minimize_multistart(f, box, {best.x}, 0, 0, so);
      }
      previous = best.x;

      const RateTriple r = unpack(best.x);
      const auto [p, rho] = closed(best.x);
      FigureRecord rec;
      rec.experiment = "figure2";
      rec.objective = quantity;
      rec.i = k;
      rec.t_a = std::numeric_limits<double>::infinity();
      rec.t_b = 0.0;
      rec.epsilon = constraint.epsilon;
      rec.g = r.g;
      rec.p_a = r.p_a;
      rec.p_b = r.p_b;
      rec.target_psuc = target;
      rec.p_suc = p;
      rec.negativity = negativity(rho, qubits);
      rec.chsh = chsh_max(rho);
      rec.fidelity = fidelity_target(rho, target_state);
      rec.coherence = std::abs(rho(1, 2));
      if (std::abs(p - target) / target > options.psuc_tolerance) rec.status = "infeasible";
      rec.solver_negativity = kNaN;
      if (options.solver_check) {
        const MachineSpec spec = qutrit_family_machine(options.family, r.g, options.theta, constraint.epsilon);
        const MachineSolve s = solve_reset(spec, hot_bath(r.p_a), cold_bath(r.p_b), FilterSpec::qutrit());
        rec.solver_negativity = negativity(s.filtered.state, qubits);
        fill_diagnostics(rec, s.steady);
      }
      out.push_back(std::move(rec));
    }
  }
  return out;
}

double frontier_crossing(const std::vector<FigureRecord>& frontier, const std::string& quantity, double level) {
  std::vector<const FigureRecord*> rows;
  for (const auto& r : frontier) {
    if (r.objective == quantity && r.status == "ok") rows.push_back(&r);
  }
  std::sort(rows.begin(), rows.end(), [](auto* a, auto* b) { return a->target_psuc < b->target_psuc; });
  const auto value = [&](const FigureRecord* r) { return quantity == "negativity" ? r->negativity : r->chsh; };
  for (std::size_t k = 0; k + 1 < rows.size(); ++k) {
    const double v0 = value(rows[k]), v1 = value(rows[k + 1]);
    if (v0 > level && v1 <= level) {
      const double f = (v0 - level) / (v0 - v1);
      return rows[k]->p_suc + f * (rows[k + 1]->p_suc - rows[k]->p_suc);
    }
  }
  return kNaN;
}

// ---- finite temperatures -----------------------------------------------------

std::vector<FigureRecord> finite_temperature_sweep(Temperature t_b, double epsilon, const std::vector<double>& t_a_grid,
                                                   const PerturbativeConstraint& constraint,
                                                   const TemperatureSweepOptions& options) {
  if (!(epsilon > 0.0)) throw ConfigError("finite_temperature_sweep: epsilon must be positive");
  if (!(options.min_psuc > 0.0 && options.min_psuc < 1.0)) {
    throw ConfigError("finite_temperature_sweep: min_psuc must lie in (0, 1)");
  }
  PerturbativeConstraint c = constraint;
  c.epsilon = epsilon;
  c.validate();
  const Box box = log_box(c);
  const BipartiteShape qubits{2, 2};
  const ComplexVector psi = theta_target_state(std::numbers::pi / 4);
  SimplexOptions so;
  so.max_iterations = options.optimizer.budget;
  so.size_tolerance = options.size_tolerance;

  std::vector<FigureRecord> out;
  std::vector<double> previous;
  for (std::size_t k = 0; k < t_a_grid.size(); ++k) {
    const Temperature t_a = Temperature::finite(t_a_grid[k]);
    const auto solve = [&](const std::vector<double>& x) {
      const RateTriple r = unpack(x);
      return solve_reset(MachineSpec::qutrit(epsilon, r.g, r.g, r.g), {t_a, r.p_a}, {t_b, r.p_b},
                         FilterSpec::qutrit());
    };
    double weight = 1e2;
    const Objective f = [&](const std::vector<double>& x) {
      try {
        const MachineSolve s = solve(x);
        const double miss = std::max(0.0, 1.0 - s.filtered.p_suc / options.min_psuc);
        return -std::abs(s.filtered.state(1, 2)) + weight * miss * miss;
      } catch (const std::exception&) {
        return 1.0 + weight;
      }
    };
    const double mid = 0.5 * (box.lower[0] + box.upper[0]);
    std::vector<std::vector<double>> seeds{
        {box.upper[0], box.upper[1], box.upper[2]}, {box.upper[0], mid, box.upper[2]}, {mid, mid, mid}};
    if (!previous.empty()) seeds.insert(seeds.begin(), previous);
    SimplexResult best =
        minimize_multistart(f, box, seeds, options.optimizer.restarts, options.optimizer.seed + k, so);
    for (double w : {1e4, 1e6}) {
      weight = w;
      best = minimize_multistart(f, box, {best.x}, 0, 0, so);
    }
    previous = best.x;

    const RateTriple r = unpack(best.x);
    FigureRecord rec;
    rec.experiment = "figure3";
    rec.objective = "coherence";
    rec.i = k;
    rec.t_a = t_a.value();
    rec.t_b = t_b.value();
    rec.epsilon = epsilon;
    rec.g = r.g;
    rec.p_a = r.p_a;
    rec.p_b = r.p_b;
    rec.target_psuc = options.min_psuc;
    try {
      const MachineSolve s = solve(best.x);
      rec.p_suc = s.filtered.p_suc;
      rec.negativity = negativity(s.filtered.state, qubits);
      rec.solver_negativity = rec.negativity;
      rec.chsh = chsh_max(s.filtered.state);
      rec.fidelity = fidelity_target(s.filtered.state, psi);
      rec.coherence = std::abs(s.filtered.state(1, 2));
      fill_diagnostics(rec, s.steady);
      if (rec.p_suc < options.min_psuc * (1.0 - 1e-2)) rec.status = "infeasible";
    } catch (const FilterError&) {
      rec.status = "invalid";
    } catch (const KernelError&) {
      rec.status = "degenerate";
    } catch (const UnphysicalStateError&) {
      rec.status = "unphysical";
    }
    out.push_back(std::move(rec));
  }
  return out;
}

// ---- Lindblad heatmap ---------------------------------------------------------

Liouvillian lindblad_qutrit_liouvillian(const LindbladParameters& params, Temperature t_a, Temperature t_b) {
  const MachineSpec spec = MachineSpec::qutrit(params.epsilon, params.g, params.g, params.g);
  const LindbladRates rates_a =
      bosonic_rates(spec.ladder_a(), t_a, [&](std::size_t, std::size_t) { return params.gamma_a; }, params.dephasing);
  const LindbladRates rates_b = bosonic_rates(
      spec.ladder_b(), t_b,
      [&](std::size_t m, std::size_t n) {
        return m == 1 && n == 2 ? params.gamma_b * params.gamma_b12_factor : params.gamma_b;
      },
      params.dephasing);
  return lindblad_liouvillian(total_hamiltonian(spec), spec.shape(), rates_a, rates_b);
}

std::vector<FigureRecord> lindblad_heatmap(const LindbladParameters& params, const std::vector<double>& t_a_grid,
                                           const std::vector<double>& t_b_grid, const HeatmapOptions& options) {
  for (double t : t_a_grid) {
    if (!(t > 0.0) || !std::isfinite(t)) throw ConfigError("lindblad_heatmap: temperatures must be positive");
  }
  for (double t : t_b_grid) {
    if (!(t > 0.0) || !std::isfinite(t)) throw ConfigError("lindblad_heatmap: temperatures must be positive");
  }
  const std::size_t na = t_a_grid.size(), nb = t_b_grid.size();
  std::vector<FigureRecord> cells(na * nb);
  const BipartiteShape qubits{2, 2};
  const ComplexVector psi = theta_target_state(std::numbers::pi / 4);

  parallel_for(cells.size(), options.threads, [&](std::size_t k) {
    const std::size_t j = k / na, i = k % na;
    FigureRecord& rec = cells[k];
    rec.experiment = "figure4b";
    rec.objective = "negativity";
    rec.i = i;
    rec.j = j;
    rec.t_a = t_a_grid[i];
    rec.t_b = t_b_grid[j];
    rec.epsilon = params.epsilon;
    rec.g = params.g;
    rec.p_a = params.gamma_a;
    rec.p_b = params.gamma_b;
    rec.negativity = rec.chsh = rec.fidelity = rec.coherence = rec.solver_negativity = kNaN;
    try {
      const auto l =
          lindblad_qutrit_liouvillian(params, Temperature::finite(t_a_grid[i]), Temperature::finite(t_b_grid[j]));
      const SteadyState s = steady_state(l);
      fill_diagnostics(rec, s);
      const FilterOutcome f = apply_filter(s.rho, {3, 3}, FilterSpec::qutrit());
      rec.p_suc = f.p_suc;
      if (f.p_suc < options.psuc_threshold) {
        rec.status = "invalid";
        return;
      }
      rec.negativity = negativity(f.state, qubits);
      rec.solver_negativity = rec.negativity;
      rec.chsh = chsh_max(f.state);
      rec.fidelity = fidelity_target(f.state, psi);
      rec.coherence = std::abs(f.state(1, 2));
    } catch (const FilterError&) {
      rec.status = "invalid";
    } catch (const KernelError&) {
      rec.status = "degenerate";
    } catch (const UnphysicalStateError&) {
      rec.status = "unphysical";
    }
  });
  return cells;
}

HeatmapSummary summarize_heatmap(const std::vector<FigureRecord>& cells, std::size_t n_t_a, std::size_t n_t_b,
                                 double positive_threshold) {
  if (cells.size() != n_t_a * n_t_b) throw ConfigError("summarize_heatmap: grid size mismatch");
  HeatmapSummary s;
  s.peak = -1.0;
  std::vector<char> positive(cells.size(), 0);
  for (std::size_t k = 0; k < cells.size(); ++k) {
    const FigureRecord& c = cells[k];
    if (c.status != "ok") continue;
    ++s.valid_cells;
    if (c.negativity > positive_threshold) {
      positive[k] = 1;
      ++s.positive_cells;
    }
    if (c.negativity > s.peak) {
      s.peak = c.negativity;
      s.peak_i = k % n_t_a;
      s.peak_j = k / n_t_a;
    }
  }
  if (s.valid_cells == 0) s.peak = 0.0;

  std::vector<char> seen(cells.size(), 0);
  for (std::size_t start = 0; start < cells.size(); ++start) {
    if (!positive[start] || seen[start]) continue;
    ++s.positive_regions;
    std::queue<std::size_t> todo;
    todo.push(start);
    seen[start] = 1;
    while (!todo.empty()) {
      const std::size_t k = todo.front();
      todo.pop();
      const std::size_t i = k % n_t_a, j = k / n_t_a;
      std::vector<std::size_t> next;
      if (i > 0) next.push_back(k - 1);
      if (i + 1 < n_t_a) next.push_back(k + 1);
      if (j > 0) next.push_back(k - n_t_a);
      if (j + 1 < n_t_b) next.push_back(k + n_t_a);
      for (std::size_t m : next) {
        if (positive[m] && !seen[m]) {
          seen[m] = 1;
          todo.push(m);
        }
      }
    }
  }
  s.interior_peak = s.valid_cells > 0 && s.peak_i > 0 && s.peak_i + 1 < n_t_a;
  return s;
}

// ---- conjecture --------------------------------------------------------------

SchmidtTarget random_schmidt_target(std::size_t d, std::mt19937_64& rng) {
  std::exponential_distribution<double> draw(1.0);
  std::vector<double> w(d);
  double total = 0.0;
  for (double& x : w) total += (x = draw(rng));
  for (double& x : w) x = std::sqrt(x / total);
  double norm = 0.0;
  for (double x : w) norm += x * x;
  for (double& x : w) x /= std::sqrt(norm);
  return SchmidtTarget(std::move(w));
}

FigureRecord evaluate_schmidt_target(const SchmidtTarget& target, const ConjectureOptions& options) {
  const std::size_t d = target.dimension();
  const double p_a = options.mu * options.p_b;
  const FilterSpec filter = FilterSpec::qudit(d);
  const MachineSolve s =
      solve_reset(schmidt_machine(target, options.g), hot_bath(p_a), cold_bath(options.p_b), filter);
  FigureRecord rec;
  rec.experiment = "conjecture";
  rec.objective = "fidelity";
  rec.d = d;
  rec.t_a = std::numeric_limits<double>::infinity();
  rec.t_b = 0.0;
  rec.g = options.g;
  rec.p_a = p_a;
  rec.p_b = options.p_b;
  rec.p_suc = s.filtered.p_suc;
  rec.negativity = negativity(s.filtered.state, s.filtered.shape);
  rec.solver_negativity = rec.negativity;
  rec.chsh = kNaN;
  rec.fidelity = fidelity_target(s.filtered.state, schmidt_target_state(target));
  fill_diagnostics(rec, s.steady);
  rec.note = join(target.coefficients());
  return rec;
}

ConjectureReport conjecture_batch(std::size_t d, std::size_t trials, std::uint64_t seed,
                                  const ConjectureOptions& options) {
  if (d < 3 || d > 5) throw ConfigError("conjecture_batch: d must be 3, 4 or 5");
  if (trials < 1) throw ConfigError("conjecture_batch: need at least one trial");
  std::mt19937_64 rng(seed);
  std::vector<SchmidtTarget> targets;
  targets.reserve(trials);
  for (std::size_t k = 0; k < trials; ++k) targets.push_back(random_schmidt_target(d, rng));

  ConjectureReport report;
  report.d = d;
  report.trials = trials;
  report.rows.resize(trials);
  parallel_for(trials, options.threads, [&](std::size_t k) {
    report.rows[k] = evaluate_schmidt_target(targets[k], options);
    report.rows[k].i = k;
  });
  std::vector<double> f;
  for (const auto& r : report.rows) f.push_back(r.fidelity);
  std::sort(f.begin(), f.end());
  report.min_fidelity = f.front();
  report.median_fidelity = f.size() % 2 ? f[f.size() / 2] : 0.5 * (f[f.size() / 2 - 1] + f[f.size() / 2]);
  return report;
}

// ---- self check --------------------------------------------------------------

std::vector<CheckResult> verify_suite(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> log_rate(std::log(1e-4), std::log(1e-2));
  const auto draw = [&] { return std::exp(log_rate(rng)); };
  std::vector<CheckResult> out;

  {
    CheckResult c{"equal-coupling filtered state", true, 0.0, 1e-8};
    for (int k = 0; k < 20; ++k) {
      const double g = draw(), p_a = draw(), p_b = draw();
      const auto s = solve_reset(qutrit_family_machine(CouplingFamily::Equal, g, 0.0), hot_bath(p_a), cold_bath(p_b),
                                 FilterSpec::qutrit());
      c.metric = std::max(c.metric, (s.filtered.state - equal_coupling_filtered_state(p_a, p_b)).cwiseAbs().maxCoeff());
      c.metric = std::max(c.metric, std::abs(s.filtered.p_suc - qutrit_psuc(CouplingFamily::Equal, g, 0, p_a, p_b)));
    }
    c.passed = c.metric <= c.tolerance;
    out.push_back(c);
  }
  {
    CheckResult c{"theta-family filtered state and success probability", true, 0.0, 1e-8};
    std::uniform_real_distribution<double> angle(0.05, std::numbers::pi / 2 - 0.05);
    for (int k = 0; k < 20; ++k) {
      const double g = draw(), p_a = draw(), p_b = draw(), th = angle(rng);
      const auto s = solve_reset(qutrit_family_machine(CouplingFamily::Theta, g, th), hot_bath(p_a), cold_bath(p_b),
                                 FilterSpec::qutrit());
      c.metric = std::max(c.metric, (s.filtered.state - theta_filtered_state(g, th, p_a, p_b)).cwiseAbs().maxCoeff());
      c.metric = std::max(c.metric, std::abs(s.filtered.p_suc - qutrit_psuc(CouplingFamily::Theta, g, th, p_a, p_b)));
    }
    c.passed = c.metric <= c.tolerance;
    out.push_back(c);
  }
  {
    CheckResult c{"qudit steady state", true, 0.0, 1e-8};
    for (std::size_t d = 3; d <= 5; ++d) {
      const double g = draw(), p_a = draw(), p_b = draw();
      const ComplexMatrix closed = qudit_steady_state(d, g, p_a, p_b);
      const SteadyState s =
          steady_state(reset_liouvillian(MachineSpec::uniform_qudit(d, g), hot_bath(p_a), cold_bath(p_b)));
      c.metric = std::max(c.metric, (s.rho - closed).cwiseAbs().maxCoeff());
    }
    c.passed = c.metric <= c.tolerance;
    out.push_back(c);
  }
  {
    CheckResult c{"qudit success probability (relative)", true, 0.0, 1e-6};
    for (std::size_t d = 3; d <= 5; ++d) {
      const double g = draw(), p_a = draw(), p_b = draw();
      const auto s = solve_reset(qudit_psuc_machine(d, g), hot_bath(p_a), cold_bath(p_b), FilterSpec::qudit(d));
      c.metric = std::max(c.metric, std::abs(s.filtered.p_suc - qudit_psuc(d, g, p_a, p_b)) / s.filtered.p_suc);
    }
    c.passed = c.metric <= c.tolerance;
    out.push_back(c);
  }
  {
    CheckResult c{"reset to Lindblad mapping", true, 0.0, 1e-12};
    std::uniform_real_distribution<double> temp(std::log(0.5), std::log(50.0));
    for (int k = 0; k < 10; ++k) {
      const MachineSpec spec = MachineSpec::qutrit(1.5, draw(), draw(), draw());
      const BathSpec a{Temperature::finite(std::exp(temp(rng))), draw()};
      const BathSpec b{Temperature::finite(std::exp(temp(rng))), draw()};
      const auto ta = thermal_populations(spec.ladder_a(), a.temperature);
      const auto tb = thermal_populations(spec.ladder_b(), b.temperature);
      if (ta[0] > kMaxMappableGroundPopulation || tb[0] > kMaxMappableGroundPopulation) continue;
      c.metric = std::max(c.metric, generator_discrepancy(reset_liouvillian(spec, a, b),
                                                          mapped_lindblad_liouvillian(spec, a, b)));
    }
    c.passed = c.metric <= c.tolerance;
    out.push_back(c);
  }
  return out;
}

// ---- config dispatch ---------------------------------------------------------

std::vector<FigureRecord> run_sweep(const SweepConfig& config, std::size_t threads) {
  config.validate();
  const double eta = config.fixed_or("eta", 1e-2);
  OptimizerSettings opt = config.optimizer;
  if (config.experiment == "figure2") {
    FrontierOptions o;
    o.family = config.family;
    o.theta = config.fixed_or("theta", std::numbers::pi / 4);
    o.optimizer = opt;
    std::vector<double> grid;
    for (const auto& a : config.axes) {
      if (a.name.rfind("p_suc", 0) != 0) continue;
      const auto v = a.values();
      grid.insert(grid.end(), v.begin(), v.end());
    }
    if (grid.empty()) throw ConfigError("figure2: needs a p_suc axis");
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return tradeoff_frontier({eta, config.fixed_or("epsilon", 1.0)}, grid, o);
  }
  if (config.experiment == "figure3") {
    const auto t_b = config.list_or("T_B", {0.0, 0.1, 0.1});
    const auto eps = config.list_or("epsilon", {3.0, 3.0, 1.0});
    if (t_b.size() != eps.size()) throw ConfigError("figure3: lists T_B and epsilon differ in length");
    TemperatureSweepOptions o;
    o.min_psuc = config.fixed_or("min_psuc", o.min_psuc);
    o.optimizer = opt;
    const auto grid = config.axis("T_A").values();
    std::vector<FigureRecord> out;
    for (std::size_t c = 0; c < t_b.size(); ++c) {
      if (!(t_b[c] >= 0.0)) throw ConfigError("figure3: T_B must be non-negative");
      const Temperature tb = t_b[c] == 0.0 ? Temperature::zero() : Temperature::finite(t_b[c]);
      for (auto& r : finite_temperature_sweep(tb, eps[c], grid, {eta, 1.0}, o)) {
        r.j = c;
        out.push_back(std::move(r));
      }
    }
    return out;
  }
  if (config.experiment == "figure4b") {
    LindbladParameters p;
    p.gamma_a = config.fixed_or("gamma_a", p.gamma_a);
    p.gamma_b = config.fixed_or("gamma_b", p.gamma_b);
    p.dephasing = config.fixed_or("dephasing", p.dephasing);
    p.g = config.fixed_or("g", p.g);
    p.epsilon = config.fixed_or("epsilon", p.epsilon);
    p.gamma_b12_factor = config.fixed_or("gamma_b12_factor", p.gamma_b12_factor);
    HeatmapOptions h;
    h.psuc_threshold = config.fixed_or("psuc_threshold", h.psuc_threshold);
    h.threads = threads;
    return lindblad_heatmap(p, config.axis("T_A").values(), config.axis("T_B").values(), h);
  }
  if (config.experiment == "conjecture") {
    ConjectureOptions o;
    o.g = config.fixed_or("g", o.g);
    o.p_b = config.fixed_or("p_b", o.p_b);
    o.mu = config.fixed_or("mu", o.mu);
    o.threads = threads;
    const double trials = config.fixed_or("trials", 100.0);
    if (!(trials >= 1.0)) throw ConfigError("conjecture: trials must be at least 1");
    std::vector<FigureRecord> out;
    for (double dv : config.axis("d").values()) {
      const auto d = static_cast<std::size_t>(std::lround(dv));
      auto report = conjecture_batch(d, static_cast<std::size_t>(trials), opt.seed + d, o);
      for (auto& r : report.rows) out.push_back(std::move(r));
    }
    return out;
  }
  throw ConfigError("unknown experiment '" + config.experiment + "'");
}

}  // namespace thermoent
