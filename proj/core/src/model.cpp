#include "thermoent/model.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace thermoent {

Temperature Temperature::finite(double value) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw ModelError("temperature must be finite and non-negative; use Temperature::infinite()");
  }
  return Temperature(value, false);
}

EnergyLadder::EnergyLadder(std::vector<double> energies) : energies_(std::move(energies)) {
  if (energies_.size() < 2) throw ModelError("energy ladder needs at least two levels");
  if (energies_.front() != 0.0) throw ModelError("energy ladder must start at E_0 = 0");
  for (std::size_t k = 1; k < energies_.size(); ++k) {
    if (!(energies_[k] > energies_[k - 1])) throw ModelError("energy ladder must be strictly increasing");
  }
}

EnergyLadder EnergyLadder::from_gaps(const std::vector<double>& gaps) {
  std::vector<double> e(gaps.size() + 1, 0.0);
  for (std::size_t k = 0; k < gaps.size(); ++k) e[k + 1] = e[k] + gaps[k];
  return EnergyLadder(std::move(e));
}

EnergyLadder EnergyLadder::from_reversed_gaps(const std::vector<double>& gaps) {
  std::vector<double> e(gaps.size() + 1, 0.0);
  const std::size_t d = gaps.size();
  for (std::size_t k = 0; k < d; ++k) e[k + 1] = e[k] + gaps[d - 1 - k];
  return EnergyLadder(std::move(e));
}

ComplexMatrix EnergyLadder::hamiltonian() const {
  ComplexMatrix h = ComplexMatrix::Zero(static_cast<Eigen::Index>(levels()), static_cast<Eigen::Index>(levels()));
  for (std::size_t k = 0; k < levels(); ++k) h(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = energies_[k];
  return h;
}

MachineSpec MachineSpec::qutrit(double epsilon, double g1, double g2, double g3) {
  MachineSpec spec{MachineKind::Qutrit, {1.0, epsilon}, {g1, g2, g3}};
  spec.validate();
  return spec;
}

MachineSpec MachineSpec::qudit(std::vector<double> gaps, std::vector<double> couplings) {
  MachineSpec spec{MachineKind::Qudit, std::move(gaps), std::move(couplings)};
  spec.validate();
  return spec;
}

MachineSpec MachineSpec::uniform_qudit(std::size_t d, double g) {
  return qudit(std::vector<double>(d, 1.0), std::vector<double>(d, g));
}

void MachineSpec::validate() const {
  if (gaps_a.empty()) throw ModelError("machine needs at least one gap");
  if (gaps_a.front() != 1.0) throw ModelError("first gap of subsystem A must be 1 (energy unit)");
  for (double gap : gaps_a) {
    if (!(gap > 0.0) || !std::isfinite(gap)) throw ModelError("all gaps must be positive and finite");
  }
  for (double g : couplings) {
    if (!std::isfinite(g)) throw ModelError("couplings must be finite");
  }
  if (kind == MachineKind::Qutrit) {
    if (gaps_a.size() != 2) throw ModelError("qutrit machine takes gaps {1, epsilon}");
    if (couplings.size() != 3) throw ModelError("qutrit machine takes three couplings g1, g2, g3");
  } else {
    if (gaps_a.size() < 2) throw ModelError("qudit machine needs d >= 2");
    if (couplings.size() != gaps_a.size()) {
      throw ModelError("qudit machine with d = " + std::to_string(gaps_a.size()) + " needs " +
                       std::to_string(gaps_a.size()) + " couplings, got " + std::to_string(couplings.size()));
    }
  }
}

void BathSpec::validate() const {
  if (!(reset_rate >= 0.0) || !std::isfinite(reset_rate)) throw ModelError("reset rate must be non-negative");
}

namespace {

ComplexMatrix embed_a(const ComplexMatrix& h, std::size_t other) {
  return kron(h, ComplexMatrix::Identity(static_cast<Eigen::Index>(other), static_cast<Eigen::Index>(other)));
}

ComplexMatrix embed_b(const ComplexMatrix& h, std::size_t other) {
  return kron(ComplexMatrix::Identity(static_cast<Eigen::Index>(other), static_cast<Eigen::Index>(other)), h);
}

void add_transition(ComplexMatrix& h, std::size_t levels, std::size_t a1, std::size_t b1, std::size_t a2,
                    std::size_t b2, double g) {
  const auto i = static_cast<Eigen::Index>(a1 * levels + b1);
  const auto j = static_cast<Eigen::Index>(a2 * levels + b2);
  h(i, j) += g;
  h(j, i) += g;
}

}  // namespace

FreeHamiltonians qutrit_hamiltonians(const MachineSpec& spec) {
  spec.validate();
  if (spec.kind != MachineKind::Qutrit) throw ModelError("qutrit_hamiltonians: not a qutrit machine");
  const double eps = spec.gaps_a[1];
  const EnergyLadder a({0.0, 1.0, 1.0 + eps});
  const EnergyLadder b({0.0, eps, 1.0 + eps});
  return {embed_a(a.hamiltonian(), 3), embed_b(b.hamiltonian(), 3)};
}

ComplexMatrix qutrit_interaction(double g1, double g2, double g3) {
  ComplexMatrix h = ComplexMatrix::Zero(9, 9);
  add_transition(h, 3, 0, 2, 2, 0, g1);
  add_transition(h, 3, 1, 1, 2, 0, g2);
  add_transition(h, 3, 1, 1, 0, 2, g3);
  return h;
}

FreeHamiltonians qudit_hamiltonians(const MachineSpec& spec, std::size_t d) {
  spec.validate();
  if (spec.gaps_a.size() != d) {
    throw ModelError("qudit_hamiltonians: expected " + std::to_string(d) + " gaps, got " +
                     std::to_string(spec.gaps_a.size()));
  }
  return {embed_a(spec.ladder_a().hamiltonian(), d + 1), embed_b(spec.ladder_b().hamiltonian(), d + 1)};
}

ComplexMatrix qudit_interaction(const std::vector<double>& couplings, std::size_t d) {
  if (d < 2) throw ModelError("qudit_interaction: d must be at least 2");
  if (couplings.size() != d) {
    throw ModelError("qudit_interaction: expected " + std::to_string(d) + " couplings, got " +
                     std::to_string(couplings.size()));
  }
  const std::size_t levels = d + 1;
  const auto n = static_cast<Eigen::Index>(levels * levels);
  ComplexMatrix h = ComplexMatrix::Zero(n, n);
  for (std::size_t j = 0; j < d; ++j) add_transition(h, levels, d, 0, j, d - j, couplings[j]);
  return h;
}

ComplexMatrix free_hamiltonian(const MachineSpec& spec) {
  const auto h = spec.kind == MachineKind::Qutrit ? qutrit_hamiltonians(spec)
                                                  : qudit_hamiltonians(spec, spec.gaps_a.size());
  return h.h_a + h.h_b;
}

ComplexMatrix interaction_hamiltonian(const MachineSpec& spec) {
  spec.validate();
  if (spec.kind == MachineKind::Qutrit) {
    return qutrit_interaction(spec.couplings[0], spec.couplings[1], spec.couplings[2]);
  }
  return qudit_interaction(spec.couplings, spec.gaps_a.size());
}

ComplexMatrix total_hamiltonian(const MachineSpec& spec) {
  return free_hamiltonian(spec) + interaction_hamiltonian(spec);
}

std::vector<double> thermal_populations(const EnergyLadder& ladder, Temperature temperature) {
  const std::size_t n = ladder.levels();
  std::vector<double> pop(n, 0.0);
  if (temperature.is_infinite()) {
    std::fill(pop.begin(), pop.end(), 1.0 / static_cast<double>(n));
    return pop;
  }
  if (temperature.is_zero()) {
    pop[0] = 1.0;
    return pop;
  }
  // E_0 = 0 is the minimum, so every weight is in (0, 1].
  for (std::size_t k = 0; k < n; ++k) pop[k] = std::exp(-ladder.energy(k) / temperature.value());
  const double z = std::accumulate(pop.begin(), pop.end(), 0.0);
  for (double& p : pop) p /= z;
  return pop;
}

ComplexMatrix thermal_state(const EnergyLadder& ladder, Temperature temperature) {
  const auto pop = thermal_populations(ladder, temperature);
  const auto n = static_cast<Eigen::Index>(pop.size());
  ComplexMatrix tau = ComplexMatrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) tau(k, k) = pop[static_cast<std::size_t>(k)];
  return tau;
}

}  // namespace thermoent
