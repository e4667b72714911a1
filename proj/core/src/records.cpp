#include "thermoent/records.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#ifndef THERMOENT_VERSION
#define THERMOENT_VERSION "unknown"
#endif

namespace thermoent {

namespace {

using nlohmann::json;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

json temperature_json(Temperature t) {
  if (t.is_infinite()) return "inf";
  return t.value();
}

Temperature temperature_from(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "infinity") return Temperature::infinite();
    throw ConfigError("temperature: expected a number or \"inf\", got \"" + s + "\"");
  }
  if (!j.is_number()) throw ConfigError("temperature: expected a number or \"inf\"");
  const double v = j.get<double>();
  try {
    return v == 0.0 ? Temperature::zero() : Temperature::finite(v);
  } catch (const ModelError& e) {
    throw ConfigError(e.what());
  }
}

std::string variant_name(MachineVariant v) {
  switch (v) {
    case MachineVariant::ResetQutrit: return "reset-qutrit";
    case MachineVariant::ResetQudit: return "reset-qudit";
    case MachineVariant::LindbladQutrit: return "lindblad-qutrit";
  }
  return "";
}

MachineVariant variant_from(const std::string& s) {
  if (s == "reset-qutrit") return MachineVariant::ResetQutrit;
  if (s == "reset-qudit") return MachineVariant::ResetQudit;
  if (s == "lindblad-qutrit") return MachineVariant::LindbladQutrit;
  throw ConfigError("unknown machine variant '" + s + "'");
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
}

template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config has a wrong field type: ") + e.what());
  }
}

}  // namespace

std::string library_version() { return THERMOENT_VERSION; }

std::vector<std::string> record_columns() {
  return {"experiment", "objective", "status",     "i",        "j",        "d",        "t_a",
          "t_b",        "epsilon",   "g",          "p_a",      "p_b",      "target_psuc", "p_suc",
          "negativity", "chsh",      "fidelity",   "coherence", "solver_negativity", "kernel_gap", "residual",
          "note"};
}

void write_csv(std::ostream& out, const std::vector<FigureRecord>& rows) {
  const auto cols = record_columns();
  for (std::size_t k = 0; k < cols.size(); ++k) out << (k ? "," : "") << cols[k];
  out << '\n';
  for (const auto& r : rows) {
    out << quote(r.experiment) << ',' << quote(r.objective) << ',' << r.status << ',' << r.i << ',' << r.j << ','
        << r.d;
    for (double v : {r.t_a, r.t_b, r.epsilon, r.g, r.p_a, r.p_b, r.target_psuc, r.p_suc, r.negativity, r.chsh,
                     r.fidelity, r.coherence, r.solver_negativity, r.kernel_gap, r.residual}) {
      out << ',' << format_double(v);
    }
    out << ',' << quote(r.note) << '\n';
  }
}

void write_artifacts(const std::filesystem::path& csv_path, const std::vector<FigureRecord>& rows,
                     const std::string& resolved_config_json) {
  if (csv_path.has_parent_path()) std::filesystem::create_directories(csv_path.parent_path());
  {
    std::ofstream csv(csv_path, std::ios::binary);
    if (!csv) throw std::runtime_error("cannot open " + csv_path.string());
    write_csv(csv, rows);
  }
  json side;
  side["version"] = library_version();
  side["config"] = parse_json(resolved_config_json);
  side["rows"] = rows.size();
  side["columns"] = record_columns();
  std::ofstream meta(csv_path.string() + ".json", std::ios::binary);
  if (!meta) throw std::runtime_error("cannot open " + csv_path.string() + ".json");
  meta << side.dump(2) << '\n';
}

SweepConfig parse_sweep_config(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  if (!j.contains("experiment")) throw ConfigError("config: missing \"experiment\"");
  return guarded([&] {
    SweepConfig c = default_config(j.at("experiment").get<std::string>());
    if (j.contains("machine")) c.variant = variant_from(j.at("machine").get<std::string>());
    if (j.contains("d")) c.d = j.at("d").get<std::size_t>();
    if (j.contains("couplings")) {
      const auto s = j.at("couplings").get<std::string>();
      if (s == "equal") {
        c.family = CouplingFamily::Equal;
      } else if (s == "theta") {
        c.family = CouplingFamily::Theta;
      } else {
        throw ConfigError("config: couplings must be \"equal\" or \"theta\"");
      }
    }
    if (j.contains("axes")) {
      c.axes.clear();
      for (const auto& a : j.at("axes")) {
        SweepAxis axis;
        axis.name = a.at("name").get<std::string>();
        axis.min = a.at("min").get<double>();
        axis.max = a.at("max").get<double>();
        axis.points = a.at("points").get<std::size_t>();
        const auto scale = a.value("scale", std::string("linear"));
        if (scale == "linear") {
          axis.scale = AxisScale::Linear;
        } else if (scale == "log") {
          axis.scale = AxisScale::Log;
        } else {
          throw ConfigError("axis " + axis.name + ": scale must be \"linear\" or \"log\"");
        }
        c.axes.push_back(axis);
      }
    }
    if (j.contains("fixed")) {
      for (const auto& [k, v] : j.at("fixed").items()) c.fixed[k] = v.get<double>();
    }
    if (j.contains("lists")) {
      for (const auto& [k, v] : j.at("lists").items()) c.lists[k] = v.get<std::vector<double>>();
    }
    if (j.contains("optimizer")) {
      const auto& o = j.at("optimizer");
      c.optimizer.budget = o.value("budget", c.optimizer.budget);
      c.optimizer.seed = o.value("seed", c.optimizer.seed);
      c.optimizer.restarts = o.value("restarts", c.optimizer.restarts);
    }
    if (j.contains("output")) c.output = j.at("output").get<std::string>();
    c.validate();
    return c;
  });
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

SweepConfig load_sweep_config(const std::filesystem::path& path) { return parse_sweep_config(read_text_file(path)); }

std::string to_json(const SweepConfig& c) {
  json j;
  j["experiment"] = c.experiment;
  j["machine"] = variant_name(c.variant);
  j["d"] = c.d;
  j["couplings"] = c.family == CouplingFamily::Equal ? "equal" : "theta";
  j["axes"] = json::array();
  for (const auto& a : c.axes) {
    j["axes"].push_back({{"name", a.name},
                         {"min", a.min},
                         {"max", a.max},
                         {"points", a.points},
                         {"scale", a.scale == AxisScale::Log ? "log" : "linear"}});
  }
  j["fixed"] = c.fixed;
  j["lists"] = c.lists;
  j["optimizer"] = {{"budget", c.optimizer.budget}, {"seed", c.optimizer.seed}, {"restarts", c.optimizer.restarts}};
  j["output"] = c.output;
  return j.dump();
}

SolveConfig parse_solve_config(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  return guarded([&] {
    SolveConfig c;
    const auto& m = j.at("machine");
    const auto kind = m.value("kind", std::string("qutrit"));
    try {
      if (kind == "qutrit") {
        const auto g = m.at("couplings").get<std::vector<double>>();
        if (g.size() != 3) throw ConfigError("machine: a qutrit machine needs three couplings");
        c.machine = MachineSpec::qutrit(m.value("epsilon", 1.0), g[0], g[1], g[2]);
      } else if (kind == "qudit") {
        c.machine = MachineSpec::qudit(m.at("gaps").get<std::vector<double>>(),
                                       m.at("couplings").get<std::vector<double>>());
      } else {
        throw ConfigError("machine: kind must be \"qutrit\" or \"qudit\"");
      }
      c.machine.validate();
      for (auto [key, bath] : {std::pair{"bath_a", &c.bath_a}, std::pair{"bath_b", &c.bath_b}}) {
        const auto& b = j.at(key);
        bath->temperature = temperature_from(b.at("temperature"));
        bath->reset_rate = b.at("reset_rate").get<double>();
        bath->validate();
      }
    } catch (const ModelError& e) {
      throw ConfigError(e.what());
    }
    return c;
  });
}

SolveConfig load_solve_config(const std::filesystem::path& path) { return parse_solve_config(read_text_file(path)); }

std::string to_json(const SolveConfig& c) {
  json j;
  json m;
  if (c.machine.kind == MachineKind::Qutrit) {
    m["kind"] = "qutrit";
    m["epsilon"] = c.machine.gaps_a.at(1);
  } else {
    m["kind"] = "qudit";
    m["gaps"] = c.machine.gaps_a;
  }
  m["couplings"] = c.machine.couplings;
  j["machine"] = m;
  j["bath_a"] = {{"temperature", temperature_json(c.bath_a.temperature)}, {"reset_rate", c.bath_a.reset_rate}};
  j["bath_b"] = {{"temperature", temperature_json(c.bath_b.temperature)}, {"reset_rate", c.bath_b.reset_rate}};
  return j.dump();
}

}  // namespace thermoent
