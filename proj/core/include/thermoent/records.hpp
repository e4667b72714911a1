#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "thermoent/experiments.hpp"
#include "thermoent/model.hpp"

namespace thermoent {

std::string library_version();

/// Column names, in output order.
std::vector<std::string> record_columns();

/// One header row, "," separators, "." decimals, LF line endings. Doubles
/// use the shortest representation that round-trips.
void write_csv(std::ostream& out, const std::vector<FigureRecord>& rows);

/// Writes `csv_path` and a sidecar `csv_path + ".json"` holding the library
/// version, the resolved config and the row count. Parent directories are
/// created as needed.
void write_artifacts(const std::filesystem::path& csv_path, const std::vector<FigureRecord>& rows,
                     const std::string& resolved_config_json);

/// Declarative sweep description:
///   {"experiment": "figure2", "machine": "reset-qutrit", "d": 2, "couplings": "equal",
///    "axes": [{"name": "p_suc", "min": 0.005, "max": 0.3, "points": 60, "scale": "linear"}],
///    "fixed": {"eta": 0.01}, "lists": {"T_B": [0, 0.1]},
///    "optimizer": {"budget": 1500, "seed": 1, "restarts": 6}, "output": "figure2.csv"}
/// Missing keys fall back to default_config(experiment). Throws ConfigError.
SweepConfig parse_sweep_config(const std::string& json_text);
SweepConfig load_sweep_config(const std::filesystem::path& path);
std::string to_json(const SweepConfig& config);

/// One-shot solve of a reset machine:
///   {"machine": {"kind": "qutrit", "epsilon": 1, "couplings": [g1, g2, g3]},
///    "bath_a": {"temperature": "inf", "reset_rate": 1e-3},
///    "bath_b": {"temperature": 0, "reset_rate": 1e-3}}
/// A qudit machine is {"kind": "qudit", "gaps": [...], "couplings": [...]}.
struct SolveConfig {
  MachineSpec machine;
  BathSpec bath_a;
  BathSpec bath_b;
};

SolveConfig parse_solve_config(const std::string& json_text);
SolveConfig load_solve_config(const std::filesystem::path& path);
std::string to_json(const SolveConfig& config);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace thermoent
