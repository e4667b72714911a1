#include "thermoent_cli/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <optional>
#include <utility>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "thermoent/analytic.hpp"
#include "thermoent/dynamics.hpp"
#include "thermoent/entfilter.hpp"
#include "thermoent/experiments.hpp"
#include "thermoent/mapping.hpp"
#include "thermoent/records.hpp"

namespace thermoent::cli {

namespace {

using json = nlohmann::json;

struct Options {
  std::string verb;
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  int verbosity = 1;  // 0 quiet, 1 normal, 2 verbose
};

struct DomainFailure : std::runtime_error {
  DomainFailure(std::string kind, const std::string& what) : std::runtime_error(what), kind(std::move(kind)) {}
  std::string kind;
};

void emit(const Options& o, std::ostream& out, const json& result) {
  const std::string text = result.dump(2);
  if (!o.out.empty()) {
    const std::filesystem::path path(o.out);
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + o.out);
    f << text << '\n';
  }
  if (o.verbosity > 0) out << text << '\n';
}

FilterSpec filter_for(const MachineSpec& spec) {
  return spec.kind == MachineKind::Qutrit ? FilterSpec::qutrit() : FilterSpec::qudit(spec.gaps_a.size());
}

SolveConfig solve_config(const Options& o) {
  if (o.config.empty()) throw ConfigError(o.verb + ": --config is required");
  return load_solve_config(o.config);
}

int cmd_steady(const Options& o, std::ostream& out) {
  const SolveConfig c = solve_config(o);
  const SteadyState s = steady_state(reset_liouvillian(c.machine, c.bath_a, c.bath_b));
  const std::size_t n = c.machine.levels();
  json pops = json::array();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const auto k = static_cast<Eigen::Index>(a * n + b);
      pops.push_back({{"a", a}, {"b", b}, {"population", s.rho(k, k).real()}});
    }
  }
  emit(o, out,
       {{"command", "steady"},
        {"populations", pops},
        {"residual", s.residual},
        {"min_eigenvalue", s.min_eigenvalue},
        {"kernel_gap", s.kernel.sigma_max > 0 ? s.kernel.sigma_gap / s.kernel.sigma_max : 0.0}});
  return kExitOk;
}

int cmd_filter(const Options& o, std::ostream& out) {
  const SolveConfig c = solve_config(o);
  const FilterSpec filter = filter_for(c.machine);
  const MachineSolve s = solve_reset(c.machine, c.bath_a, c.bath_b, filter);
  const ComplexVector target = maximally_entangled_target(filter.kept_a.size());
  const EntanglementReport r = entanglement_report(s.filtered.state, s.filtered.shape, target);
  json state = json::array();
  for (Eigen::Index i = 0; i < s.filtered.state.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < s.filtered.state.cols(); ++j) {
      row.push_back({s.filtered.state(i, j).real(), s.filtered.state(i, j).imag()});
    }
    state.push_back(row);
  }
  json result{{"command", "filter"},
              {"p_suc", s.filtered.p_suc},
              {"negativity", r.negativity},
              {"fidelity_maximally_entangled", r.fidelity_target},
              {"concurrence_lower_bound", r.concurrence_lower_bound},
              {"state", state}};
  if (s.filtered.shape == BipartiteShape{2, 2}) result["chsh"] = r.chsh;
  emit(o, out, result);
  return kExitOk;
}

int cmd_map_check(const Options& o, std::ostream& out) {
  const SolveConfig c = solve_config(o);
  const double diff = generator_discrepancy(reset_liouvillian(c.machine, c.bath_a, c.bath_b),
                                            mapped_lindblad_liouvillian(c.machine, c.bath_a, c.bath_b));
  constexpr double tolerance = 1e-12;
  emit(o, out, {{"command", "map-check"}, {"discrepancy", diff}, {"tolerance", tolerance}, {"passed", diff <= tolerance}});
  if (!(diff <= tolerance)) throw DomainFailure("mapping-mismatch", "generators differ by " + std::to_string(diff));
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const auto checks = verify_suite(o.seed.value_or(1));
  std::size_t passed = 0;
  for (const auto& c : checks) {
    passed += c.passed;
    if (o.verbosity > 0) {
      out << (c.passed ? "PASS " : "FAIL ") << c.name << "  worst " << std::setprecision(3) << c.metric << " (tol "
          << c.tolerance << ")\n";
    }
  }
  if (o.verbosity > 0) out << passed << " passed, " << checks.size() - passed << " failed\n";
  if (passed != checks.size()) throw DomainFailure("verification-failed", "oracle checks failed");
  return kExitOk;
}

void summarize(const SweepConfig& config, const std::vector<FigureRecord>& rows, std::ostream& out) {
  if (config.experiment == "figure2") {
    out << "negativity reaches 0 at p_suc " << frontier_crossing(rows, "negativity", 0.0) << "\n";
    out << "CHSH reaches 2 at p_suc " << frontier_crossing(rows, "chsh", 2.0) << "\n";
  } else if (config.experiment == "figure3") {
    std::size_t curves = 0;
    for (const auto& r : rows) curves = std::max(curves, r.j + 1);
    for (std::size_t c = 0; c < curves; ++c) {
      double best = 0.0, t_b = 0.0, eps = 0.0;
      for (const auto& r : rows) {
        if (r.j != c) continue;
        t_b = r.t_b;
        eps = r.epsilon;
        if (r.status == "ok") best = std::max(best, r.negativity);
      }
      out << "T_B=" << t_b << " eps=" << eps << ": max negativity " << best << "\n";
    }
  } else if (config.experiment == "figure4b") {
    const auto s = summarize_heatmap(rows, config.axis("T_A").points, config.axis("T_B").points);
    out << "peak negativity " << s.peak << " at T_A=" << rows[s.peak_j * config.axis("T_A").points + s.peak_i].t_a
        << " T_B=" << rows[s.peak_j * config.axis("T_A").points + s.peak_i].t_b << "; " << s.positive_regions
        << " positive region(s), " << s.valid_cells << " valid cells\n";
  } else if (config.experiment == "conjecture") {
    std::map<std::size_t, double> worst;
    for (const auto& r : rows) {
      auto [it, fresh] = worst.try_emplace(r.d, r.fidelity);
      if (!fresh) it->second = std::min(it->second, r.fidelity);
    }
    for (const auto& [d, f] : worst) out << "d=" << d << ": min fidelity " << f << "\n";
  }
}

int cmd_sweep(const Options& o, std::ostream& out) {
  SweepConfig config = o.config.empty() ? default_config(o.verb) : load_sweep_config(o.config);
  if (config.experiment != o.verb) {
    throw ConfigError("config names experiment '" + config.experiment + "' but the command is " + o.verb);
  }
  if (o.seed) config.optimizer.seed = *o.seed;
  if (!o.out.empty()) config.output = o.out;
  if (config.output.empty()) config.output = o.verb + ".csv";
  const auto rows = run_sweep(config);
  write_artifacts(config.output, rows, to_json(config));
  if (o.verbosity > 1) write_csv(out, rows);
  if (o.verbosity > 0) {
    summarize(config, rows, out);
    out << "wrote " << rows.size() << " rows to " << config.output << "\n";
  }
  return kExitOk;
}

int dispatch(const Options& o, std::ostream& out) {
  if (o.verb == "steady") return cmd_steady(o, out);
  if (o.verb == "filter") return cmd_filter(o, out);
  if (o.verb == "map-check") return cmd_map_check(o, out);
  if (o.verb == "verify") return cmd_verify(o, out);
  return cmd_sweep(o, out);
}

void error_record(std::ostream& out, const std::string& kind, const std::string& message, int code) {
  out << json{{"error", {{"kind", kind}, {"message", message}, {"exit_code", code}}}}.dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Heralded entanglement from autonomous thermal machines", "thermoent"};
  app.require_subcommand(1);
  Options o;
  bool verbose = false, quiet = false;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "Config file (JSON)");
    sub->add_option("--out", o.out, "Output path");
    sub->add_option("--seed", o.seed, "Random seed");
    sub->add_flag("-v,--verbose", verbose, "More output");
    sub->add_flag("-q,--quiet", quiet, "No output except errors");
  };
  const std::pair<const char*, const char*> verbs[] = {
      {"steady", "Steady state of a reset machine; prints level populations"},
      {"filter", "Filtered steady state with negativity, CHSH and fidelity"},
      {"map-check", "Compare the reset generator with its mapped Lindblad form"},
      {"figure2", "Success probability versus entanglement frontier"},
      {"figure3", "Optimised negativity versus hot-bath temperature"},
      {"figure4b", "Negativity heatmap of the Lindblad qutrit machine"},
      {"conjecture", "Fidelity with random Schmidt targets"},
      {"verify", "Closed forms and mapping against the numerical solver"},
  };
  for (const auto& [verb, help] : verbs) add_common(app.add_subcommand(verb, help));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return kExitConfig;
  }
  o.verb = app.get_subcommands().front()->get_name();
  o.verbosity = quiet ? 0 : verbose ? 2 : 1;

  try {
    return dispatch(o, out);
  } catch (const DomainFailure& e) {
    error_record(out, e.kind, e.what(), kExitDomain);
    return kExitDomain;
  } catch (const KernelError& e) {
    error_record(out, e.kind() == KernelError::Kind::Empty ? "no-steady-state" : "degenerate-kernel", e.what(),
                 kExitDomain);
    return kExitDomain;
  } catch (const FilterError& e) {
    error_record(out, "infeasible-filter", e.what(), kExitDomain);
    return kExitDomain;
  } catch (const MappingError& e) {
    error_record(out, "unmappable-bath", e.what(), kExitDomain);
    return kExitDomain;
  } catch (const DynamicsError& e) {
    error_record(out, "unphysical-state", e.what(), kExitDomain);
    return kExitDomain;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    error_record(out, "error", e.what(), kExitDomain);
    return kExitDomain;
  }
}

}  // namespace thermoent::cli
