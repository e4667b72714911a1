#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "thermoent/linalg.hpp"
#include "thermoent/model.hpp"

// Closed-form steady and filtered states at maximal temperature gradient
// (T_A = inf, T_B = 0). All states are returned in the reduced basis that
// apply_filter produces: kept levels of A (slow index) times kept levels of B,
// both ascending.

namespace thermoent {

class AnalyticError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Coupling pattern of the two-qutrit machine.
enum class CouplingFamily {
  Equal,  // g1 = g2 = g3 = g
  Theta,  // g1 = g cos(theta), g2 = g sin(theta), g3 = 0
};

/// Qutrit machine of the given family with gaps {1, epsilon}.
MachineSpec qutrit_family_machine(CouplingFamily family, double g, double theta, double epsilon = 1.0);

/// Entries of the theta-family filtered state as published. The published
/// matrix is written in the relabelled qubit basis (|00>, |01>, |10>, |11>)
/// with qubit 0 of A = level 1 and qubit 0 of B = level 2, i.e. the natural
/// filter ordering reversed.
struct FilteredQutritClosedForm {
  double r1 = 0.0;
  double r2 = 0.0;
  double r3 = 0.0;
  double t = 0.0;

  double r4() const { return 1.0 - r1 - r2 - r3; }
};

FilteredQutritClosedForm theta_filtered_entries(double g, double theta, double p_a, double p_b);

/// g-independent filtered state for equal couplings:
/// diag(p_A, p_A + 3p_B, p_A + 3p_B, p_A)/(4p_A + 6p_B), coherence 3p_B/(4p_A + 6p_B).
ComplexMatrix equal_coupling_filtered_state(double p_a, double p_b);

ComplexMatrix theta_filtered_state(double g, double theta, double p_a, double p_b);

/// First order in mu = p_A/p_B for g << p_B.
ComplexMatrix theta_filtered_state_first_order(double mu, double theta);

ComplexMatrix filtered_qutrit_state(CouplingFamily family, double g, double theta, double p_a, double p_b);

/// Tr[(Pi_A (x) Pi_B) rho] at maximal gradient.
/// Theta family: the published expression with its A, B, C, D terms.
/// Equal family: 4 g^2 p_A (2p_A + 3p_B) / (9 (2g^2p_A^2 + 9g^2p_Ap_B + 4g^2p_B^2 + p_Ap_B(p_A+p_B)^2)),
/// obtained by solving the stationary equations of the reset model with
/// g1 = g2 = g3 = g.
double qutrit_psuc(CouplingFamily family, double g, double theta, double p_a, double p_b);

/// p_suc -> p_A / (3 p_B) for p_A << p_B at fixed g.
double psuc_small_ratio_limit(double p_a, double p_b);
/// p_suc -> 2 (2p_A + 3p_B) g^2 / (9 p_B (p_A + p_B)^2) for small g, where
/// g^2 = g1^2 + g2^2 is the theta-family coupling.
double psuc_small_coupling_limit(double g, double p_a, double p_b);

/// Coefficients of the (d+1)-level steady state with couplings g_k = g.
struct QuditSteadyClosedForm {
  std::size_t d = 0;
  double g = 0.0, p_a = 0.0, p_b = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  Complex c3{0.0, 0.0};
  double normalizer = 0.0;
};

QuditSteadyClosedForm qudit_coefficients(std::size_t d, double g, double p_a, double p_b);

/// Closed-form steady state of the qudit machine whose couplings are all g
/// (MachineSpec::uniform_qudit(d, g)); (d+1)^2 x (d+1)^2 in the full basis.
ComplexMatrix qudit_steady_state(std::size_t d, double g, double p_a, double p_b);
ComplexMatrix qudit_steady_state(const QuditSteadyClosedForm& form);

/// Success-probability formula in terms of the number of levels `n` of each
/// system and the overall coupling g, with the machine's n - 1 couplings all
/// equal to g / sqrt(2):
///   (n-1) g^2 p_A ((n-1) p_A + n p_B) / (n^2 (g^2 xi + p_A p_B (p_A + p_B)^2)),
///   xi = 2 (n-1) p_A p_B + (n-1) p_B^2 + p_A^2.
/// n = 3 is the qutrit machine at theta = pi/4.
double success_probability_by_levels(std::size_t n, double g, double p_a, double p_b);

/// p_suc of the machine producing d-dimensional entanglement, i.e. (d+1)
/// levels with couplings g / sqrt(2); equals success_probability_by_levels(d + 1, ...).
double qudit_psuc(std::size_t d, double g, double p_a, double p_b);

/// The machine that qudit_psuc describes: unit gaps unless given, couplings g/sqrt(2).
MachineSpec qudit_psuc_machine(std::size_t d, double g, std::vector<double> gaps = {});

/// |S_d> = sum_k |k, d-k> / sqrt(d) in the reduced filter basis (A kept
/// 0..d-1, B kept 1..d).
ComplexVector maximally_entangled_target(std::size_t d);

/// Non-negative Schmidt coefficients with unit 2-norm (to 1e-12).
class SchmidtTarget {
 public:
  explicit SchmidtTarget(std::vector<double> coefficients);

  std::size_t dimension() const { return coefficients_.size(); }
  const std::vector<double>& coefficients() const { return coefficients_; }

 private:
  std::vector<double> coefficients_;
};

/// Machine with couplings g_k = g lambda_k on |d,0> <-> |k, d-k>.
MachineSpec schmidt_machine(const SchmidtTarget& target, double g, std::vector<double> gaps = {});

/// sum_k lambda_k |k, d-k> in the reduced filter basis.
ComplexVector schmidt_target_state(const SchmidtTarget& target);

/// psi_theta = cos(theta)|0,2> + sin(theta)|1,1> in the reduced qutrit filter basis.
ComplexVector theta_target_state(double theta);

}  // namespace thermoent
