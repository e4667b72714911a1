#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "thermoent/linalg.hpp"

namespace thermoent {

class FilterError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Levels kept by the local projectors Pi_A and Pi_B.
struct FilterSpec {
  std::vector<std::size_t> kept_a;
  std::vector<std::size_t> kept_b;

  /// Pi_A = |0><0| + |1><1|, Pi_B = |1><1| + |2><2| on two qutrits.
  static FilterSpec qutrit();
  /// Pi_A = 1 - |d><d|, Pi_B = 1 - |0><0| on two (d+1)-level systems.
  static FilterSpec qudit(std::size_t d);

  BipartiteShape reduced_shape() const { return {kept_a.size(), kept_b.size()}; }
  /// Throws FilterError unless both sets are non-empty proper subsets of
  /// distinct, in-range levels.
  void validate(const BipartiteShape& shape) const;
};

inline constexpr double kMinSuccessProbability = 1e-14;

struct FilterOutcome {
  ComplexMatrix state;    // reduced basis, unit trace
  double p_suc = 0.0;
  BipartiteShape shape;   // reduced shape
};

/// (Pi_A (x) Pi_B) rho (Pi_A (x) Pi_B) / p_suc re-indexed onto the kept levels
/// (A slow, B fast, both in the order given by the spec).
FilterOutcome apply_filter(const ComplexMatrix& rho, const BipartiteShape& shape, const FilterSpec& filter);

/// Sum of |negative eigenvalues| of the B-side partial transpose.
/// Eigenvalues within 1e-12 of zero do not count.
double negativity(const ComplexMatrix& rho, const BipartiteShape& shape);
double negativity(const ComplexMatrix& rho, const BipartiteShape& shape, Side transposed);

inline constexpr double kNegativityFloor = 1e-12;

/// Maximal CHSH value of a two-qubit state, 2 sqrt(t1 + t2) with t1, t2 the
/// two largest eigenvalues of T^T T, T_ij = Tr[rho sigma_i (x) sigma_j].
double chsh_max(const ComplexMatrix& rho);

/// <psi|rho|psi> with psi normalised first.
double fidelity_target(const ComplexMatrix& rho, const ComplexVector& psi);

struct EntanglementReport {
  double negativity = 0.0;
  double chsh = 0.0;  // 0 unless the state is two-qubit
  double fidelity_target = 0.0;
  double concurrence_lower_bound = 0.0;
};

EntanglementReport entanglement_report(const ComplexMatrix& rho, const BipartiteShape& shape,
                                       const ComplexVector& target);

}  // namespace thermoent
