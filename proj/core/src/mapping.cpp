#include "thermoent/mapping.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace thermoent {

LindbladRates reset_to_lindblad(double p, std::span<const double> populations) {
  if (populations.size() != 3) throw MappingError("reset_to_lindblad: mapping is defined for qutrits only");
  if (!(p >= 0.0) || !std::isfinite(p)) throw MappingError("reset_to_lindblad: rate must be non-negative");
  for (double t : populations) {
    if (!(t >= 0.0)) throw MappingError("reset_to_lindblad: populations must be non-negative");
  }
  const double total = std::accumulate(populations.begin(), populations.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-12) throw MappingError("reset_to_lindblad: populations must sum to 1");
  for (double t : populations) {
    if (t > kMaxMappableGroundPopulation + 1e-15) {
      throw MappingError("reset_to_lindblad: population " + std::to_string(t) +
                         " > 2/3 would need a negative dephasing rate");
    }
  }

  const double t0 = populations[0], t1 = populations[1], t2 = populations[2];
  LindbladRates rates(3);
  rates.at(0, 1) = {p * t1, p * t0, p * (2.0 - 3.0 * t2) / 9.0};
  rates.at(0, 2) = {p * t2, p * t0, p * (2.0 - 3.0 * t1) / 9.0};
  rates.at(1, 2) = {p * t2, p * t1, p * (2.0 - 3.0 * t0) / 9.0};
  return rates;
}

double bose_einstein(double gap, Temperature temperature) {
  if (!(gap > 0.0)) throw MappingError("bose_einstein: energy gap must be positive");
  if (temperature.is_zero()) return 0.0;
  if (temperature.is_infinite()) return std::numeric_limits<double>::infinity();
  return 1.0 / std::expm1(gap / temperature.value());
}

double coupling_from_reset(double p, double tau_n, double gap, Temperature temperature) {
  if (temperature.is_zero() || temperature.is_infinite()) {
    throw MappingError("coupling_from_reset: singular at T = 0 and T = inf; use the direct rates");
  }
  return p * tau_n / bose_einstein(gap, temperature);
}

LindbladRates bosonic_rates(const EnergyLadder& ladder, Temperature temperature,
                            const std::function<double(std::size_t, std::size_t)>& coupling, double dephasing) {
  if (temperature.is_infinite()) throw MappingError("bosonic_rates: infinite temperature has no finite rates");
  LindbladRates rates(ladder.levels());
  for (const auto& [m, n] : rates.transitions()) {
    const double gamma = coupling(m, n);
    const double occupation = bose_einstein(ladder.gap(m, n), temperature);
    rates.at(m, n) = {gamma * occupation, gamma * (1.0 + occupation), dephasing};
  }
  rates.validate();
  return rates;
}

Liouvillian mapped_lindblad_liouvillian(const MachineSpec& spec, const BathSpec& bath_a, const BathSpec& bath_b) {
  if (spec.kind != MachineKind::Qutrit) throw MappingError("mapped_lindblad_liouvillian: qutrit machines only");
  bath_a.validate();
  bath_b.validate();
  const auto tau_a = thermal_populations(spec.ladder_a(), bath_a.temperature);
  const auto tau_b = thermal_populations(spec.ladder_b(), bath_b.temperature);
  return lindblad_liouvillian(total_hamiltonian(spec), spec.shape(), reset_to_lindblad(bath_a.reset_rate, tau_a),
                              reset_to_lindblad(bath_b.reset_rate, tau_b));
}

std::vector<ComplexMatrix> hermitian_basis(std::size_t n) {
  using Index = Eigen::Index;
  std::vector<ComplexMatrix> basis;
  basis.reserve(n * n);
  for (std::size_t m = 0; m < n; ++m) {
    ComplexMatrix e = ComplexMatrix::Zero(Index(n), Index(n));
    e(Index(m), Index(m)) = 1.0;
    basis.push_back(std::move(e));
  }
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t k = m + 1; k < n; ++k) {
      ComplexMatrix x = ComplexMatrix::Zero(Index(n), Index(n));
      x(Index(m), Index(k)) = 1.0;
      x(Index(k), Index(m)) = 1.0;
      ComplexMatrix y = ComplexMatrix::Zero(Index(n), Index(n));
      y(Index(m), Index(k)) = Complex(0.0, 1.0);
      y(Index(k), Index(m)) = Complex(0.0, -1.0);
      basis.push_back(std::move(x));
      basis.push_back(std::move(y));
    }
  }
  return basis;
}

double generator_discrepancy(const Liouvillian& l1, const Liouvillian& l2) {
  if (l1.hilbert_dim != l2.hilbert_dim) throw DimensionError("generator_discrepancy: dimension mismatch");
  double worst = 0.0;
  for (const ComplexMatrix& e : hermitian_basis(l1.hilbert_dim)) {
    worst = std::max(worst, (l1.apply(e) - l2.apply(e)).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace thermoent
