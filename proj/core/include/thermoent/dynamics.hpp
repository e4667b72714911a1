#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "thermoent/linalg.hpp"
#include "thermoent/model.hpp"

namespace thermoent {

class DynamicsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnphysicalStateError : public DynamicsError {
 public:
  using DynamicsError::DynamicsError;
};

class IntegrationError : public DynamicsError {
 public:
  using DynamicsError::DynamicsError;
};

/// Generator of d(vec rho)/dt = L vec rho, column-stacked.
struct Liouvillian {
  ComplexMatrix matrix;
  std::size_t hilbert_dim = 0;

  ComplexMatrix apply(const ComplexMatrix& rho) const;
};

/// Rates for one pair of levels m < n of one subsystem.
struct TransitionRates {
  double up = 0.0;         // Gamma^+ on sigma^+_{mn} = |n><m|
  double down = 0.0;       // Gamma^- on sigma^-_{mn} = |m><n|
  double dephasing = 0.0;  // gamma on sigma^z_{mn} = |m><m| - |n><n|
};

/// Per-transition rates of one subsystem, one entry per ordered pair m < n.
class LindbladRates {
 public:
  explicit LindbladRates(std::size_t levels);

  std::size_t levels() const { return levels_; }
  TransitionRates& at(std::size_t m, std::size_t n);
  const TransitionRates& at(std::size_t m, std::size_t n) const;
  /// All (m, n) pairs with m < n, ordered lexicographically.
  std::vector<std::pair<std::size_t, std::size_t>> transitions() const;

  /// Throws DynamicsError on a negative or non-finite rate.
  void validate() const;

 private:
  std::size_t index(std::size_t m, std::size_t n) const;
  std::size_t levels_;
  std::vector<TransitionRates> rates_;
};

/// -i[H, .] written as i(rho H - H rho).
Liouvillian hamiltonian_liouvillian(const ComplexMatrix& hamiltonian);

/// D[O] rho = O rho O^dag - {O^dag O, rho}/2 as a superoperator.
ComplexMatrix dissipator(const ComplexMatrix& jump);

/// i[rho, H] + p_A (tau_A (x) Tr_A rho - rho) + p_B (Tr_B rho (x) tau_B - rho).
Liouvillian reset_liouvillian(const ComplexMatrix& hamiltonian, const BipartiteShape& shape,
                              const ComplexMatrix& tau_a, const ComplexMatrix& tau_b, double p_a, double p_b);

/// Reset machine at the given bath temperatures and rates.
Liouvillian reset_liouvillian(const MachineSpec& spec, const BathSpec& bath_a, const BathSpec& bath_b);

/// i[rho, H] plus local dissipators on each subsystem built from `rates_a`
/// (acting as O (x) 1) and `rates_b` (acting as 1 (x) O).
Liouvillian lindblad_liouvillian(const ComplexMatrix& hamiltonian, const BipartiteShape& shape,
                                 const LindbladRates& rates_a, const LindbladRates& rates_b);

struct SteadyState {
  ComplexMatrix rho;
  double residual = 0.0;       // ||L vec rho||_2
  double min_eigenvalue = 0.0;  // before clipping
  NullVector kernel;           // vector field holds the raw kernel vector
};

inline constexpr double kNegativeEigenvalueTolerance = 1e-9;

/// Kernel of L turned into a density operator: Hermitian part, unit trace,
/// eigenvalues in [-1e-9, 0) clipped to zero and renormalised.
/// Throws KernelError (propagated) or UnphysicalStateError.
SteadyState steady_state(const Liouvillian& liouvillian, double relative_tolerance = kDefaultKernelTolerance);

/// Fixed-step classical fourth-order Runge-Kutta from rho0 to time t.
/// Requires dt * ||L|| <= 0.1; the step is shortened so that t is hit exactly.
/// Throws IntegrationError when the trace drifts by more than 1e-6.
ComplexMatrix propagate(const Liouvillian& liouvillian, const ComplexMatrix& rho0, double t, double dt);

/// Upper bound on the spectral norm: sqrt(||L||_1 ||L||_inf).
double norm_bound(const Liouvillian& liouvillian);

/// Smallest |Re lambda| over nonzero eigenvalues of L (|lambda| above
/// `relative_tolerance * ||L||`).
double slowest_decay_rate(const Liouvillian& liouvillian, double relative_tolerance = 1e-9);

/// max over the operator basis |E_rc> of |Tr L(E_rc)|.
double trace_defect(const Liouvillian& liouvillian);

/// max over the operator basis of ||L(E^dag) - L(E)^dag||.
double hermiticity_defect(const Liouvillian& liouvillian);

}  // namespace thermoent
