#pragma once

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "thermoent/linalg.hpp"

namespace thermoent {

class ModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Bath temperature in units of the first gap of subsystem A (k_B = 1).
/// Infinite temperature is a separate state rather than a large number so
/// that T = inf limits are exact.
class Temperature {
 public:
  static Temperature finite(double value);
  static Temperature infinite() { return Temperature(0.0, true); }
  static Temperature zero() { return Temperature(0.0, false); }

  bool is_infinite() const { return infinite_; }
  bool is_zero() const { return !infinite_ && value_ == 0.0; }
  /// +inf for the infinite state.
  double value() const { return infinite_ ? std::numeric_limits<double>::infinity() : value_; }

  bool operator==(const Temperature&) const = default;

 private:
  Temperature(double value, bool infinite) : value_(value), infinite_(infinite) {}
  double value_;
  bool infinite_;
};

/// Level energies E_0 = 0 < E_1 < ... < E_n of one subsystem.
class EnergyLadder {
 public:
  explicit EnergyLadder(std::vector<double> energies);

  /// E_k = sum of the first k gaps.
  static EnergyLadder from_gaps(const std::vector<double>& gaps);
  /// E_k = sum of the last k gaps, taken from the top down.
  static EnergyLadder from_reversed_gaps(const std::vector<double>& gaps);

  std::size_t levels() const { return energies_.size(); }
  double energy(std::size_t k) const { return energies_.at(k); }
  double gap(std::size_t m, std::size_t n) const { return energy(n) - energy(m); }
  const std::vector<double>& energies() const { return energies_; }
  ComplexMatrix hamiltonian() const;

 private:
  std::vector<double> energies_;
};

enum class MachineKind {
  Qutrit,  // two qutrits, three couplings g1, g2, g3
  Qudit,   // two (d+1)-level systems, d couplings into |d,0>
};

/// Level structure and interaction strengths of a two-system machine.
///
/// `gaps_a` are the gaps of subsystem A from the bottom; B uses the same gaps
/// in reverse order. The first gap is the energy unit and must equal 1.
/// Qutrit: gaps_a = {1, eps}, couplings = {g1, g2, g3}.
/// Qudit:  gaps_a = {eps_1 = 1, ..., eps_d}, couplings = {g_1, ..., g_d} where
///         g_k drives |d,0> <-> |k-1, d-k+1>.
struct MachineSpec {
  MachineKind kind = MachineKind::Qutrit;
  std::vector<double> gaps_a;
  std::vector<double> couplings;

  static MachineSpec qutrit(double epsilon, double g1, double g2, double g3);
  static MachineSpec qudit(std::vector<double> gaps, std::vector<double> couplings);
  /// Qudit machine with unit gaps and every coupling equal to `g`.
  static MachineSpec uniform_qudit(std::size_t d, double g);

  std::size_t levels() const { return gaps_a.size() + 1; }
  BipartiteShape shape() const { return {levels(), levels()}; }
  EnergyLadder ladder_a() const { return EnergyLadder::from_gaps(gaps_a); }
  EnergyLadder ladder_b() const { return EnergyLadder::from_reversed_gaps(gaps_a); }

  /// Throws ModelError when an invariant fails.
  void validate() const;
};

/// A bath is a temperature plus a reset rate. Lindblad-type coupling
/// tables live with the dynamics.
struct BathSpec {
  Temperature temperature = Temperature::zero();
  double reset_rate = 0.0;

  void validate() const;
};

struct FreeHamiltonians {
  ComplexMatrix h_a;  // H_A (x) 1
  ComplexMatrix h_b;  // 1 (x) H_B
};

FreeHamiltonians qutrit_hamiltonians(const MachineSpec& spec);
ComplexMatrix qutrit_interaction(double g1, double g2, double g3);

FreeHamiltonians qudit_hamiltonians(const MachineSpec& spec, std::size_t d);
ComplexMatrix qudit_interaction(const std::vector<double>& couplings, std::size_t d);

/// H_A + H_B + H_int for either machine kind.
ComplexMatrix total_hamiltonian(const MachineSpec& spec);
ComplexMatrix free_hamiltonian(const MachineSpec& spec);
ComplexMatrix interaction_hamiltonian(const MachineSpec& spec);

/// Gibbs state exp(-H/T)/Z on a ladder. T = 0 gives the ground projector,
/// T = inf the maximally mixed state.
ComplexMatrix thermal_state(const EnergyLadder& ladder, Temperature temperature);
std::vector<double> thermal_populations(const EnergyLadder& ladder, Temperature temperature);

}  // namespace thermoent
