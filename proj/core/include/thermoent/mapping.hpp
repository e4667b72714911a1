#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "thermoent/dynamics.hpp"
#include "thermoent/model.hpp"

namespace thermoent {

class MappingError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Lindblad rates that reproduce the single-qutrit reset dissipator
/// p (tau Tr rho - rho) exactly:
///
///   Gamma^-_{mn} = p tau_m,  Gamma^+_{mn} = p tau_n,
///   gamma_{mn}   = p (2 - 3 tau_k) / 9   with k the third level.
///
/// The dephasing rate is negative when tau_0 > 2/3, so those populations are
/// rejected; the T -> 0 reset model stays on the reset generator.
LindbladRates reset_to_lindblad(double p, std::span<const double> populations);

/// Largest ground population accepted by reset_to_lindblad.
inline constexpr double kMaxMappableGroundPopulation = 2.0 / 3.0;

/// n_B(E, T) = 1 / (exp(E/T) - 1). Zero at T = 0, +inf at T = inf.
double bose_einstein(double gap, Temperature temperature);

/// Bath coupling Gamma_{mn} = p tau_n / n_B(E_n - E_m, T) that turns the
/// bosonic rates Gamma n_B and Gamma (1 + n_B) into the mapped reset rates.
/// Singular at T = 0 and T = inf; both are rejected.
double coupling_from_reset(double p, double tau_n, double gap, Temperature temperature);

/// Bosonic-bath rates on a ladder: Gamma^+ = Gamma_{mn} n_B, Gamma^- =
/// Gamma_{mn} (1 + n_B), dephasing gamma on every transition. `coupling(m, n)`
/// supplies Gamma_{mn}. T must be finite.
LindbladRates bosonic_rates(const EnergyLadder& ladder, Temperature temperature,
                            const std::function<double(std::size_t, std::size_t)>& coupling, double dephasing);

/// Lindblad generator of a qutrit machine whose baths are replaced by the
/// mapped rates of reset_to_lindblad (same Hamiltonian as reset_liouvillian).
Liouvillian mapped_lindblad_liouvillian(const MachineSpec& spec, const BathSpec& bath_a, const BathSpec& bath_b);

/// Hermitian operator basis of an n-level system: |m><m|, |m><n| + |n><m| and
/// i|m><n| - i|n><m| for m < n (n^2 elements).
std::vector<ComplexMatrix> hermitian_basis(std::size_t n);

/// max over the Hermitian basis E of max_ij |L1(E) - L2(E)|_ij.
double generator_discrepancy(const Liouvillian& l1, const Liouvillian& l2);

}  // namespace thermoent
