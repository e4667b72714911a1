#include "thermoent/analytic.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace thermoent {

namespace {

using Index = Eigen::Index;

void require_rates(double p_a, double p_b, const char* what) {
  if (!(p_a > 0.0) || !(p_b > 0.0)) throw AnalyticError(std::string(what) + ": rates must be positive");
}

// Maps a matrix given in the published (reversed) qubit basis to the natural
// filter basis.
ComplexMatrix reverse_basis(const ComplexMatrix& m) { return m.reverse(); }

double sq(double x) { return x * x; }

std::vector<double> default_gaps(std::vector<double> gaps, std::size_t d) {
  if (gaps.empty()) gaps.assign(d, 1.0);
  return gaps;
}

}  // namespace

MachineSpec qutrit_family_machine(CouplingFamily family, double g, double theta, double epsilon) {
  if (family == CouplingFamily::Equal) return MachineSpec::qutrit(epsilon, g, g, g);
  return MachineSpec::qutrit(epsilon, g * std::cos(theta), g * std::sin(theta), 0.0);
}

FilteredQutritClosedForm theta_filtered_entries(double g, double theta, double p_a, double p_b) {
  require_rates(p_a, p_b, "theta_filtered_entries");
  const double g2 = g * g;
  const double c2t = std::cos(2.0 * theta);
  const double c4t = std::cos(4.0 * theta);
  const double cos_sq = sq(std::cos(theta));
  const double sin_sq = sq(std::sin(theta));
  const double s = p_a + p_b;

  const double den = (2 * p_a + 3 * p_b) * (-g2 * p_a * c4t + g2 * (p_a + 6 * p_b) + 6 * p_b * s * s);
  FilteredQutritClosedForm f;
  f.r1 = 2 * p_a * cos_sq * (-g2 * p_a * c2t + g2 * (p_a + 3 * p_b) + 3 * p_b * s * s) / den;
  f.r2 = 2 * sin_sq * (p_a + 3 * p_b) * (g2 * p_a * c2t + g2 * (p_a + 3 * p_b) + 3 * p_b * s * s) / den;
  f.r3 = 2 * cos_sq * (p_a + 3 * p_b) * (-g2 * p_a * c2t + g2 * (p_a + 3 * p_b) + 3 * p_b * s * s) / den;
  f.t = 3 * p_b * std::sin(2 * theta) * (g2 * (p_a + 3 * p_b) + 3 * p_b * s * s) / den;
  return f;
}

ComplexMatrix equal_coupling_filtered_state(double p_a, double p_b) {
  require_rates(p_a, p_b, "equal_coupling_filtered_state");
  const double den = 4 * p_a + 6 * p_b;
  ComplexMatrix rho = ComplexMatrix::Zero(4, 4);
  rho(0, 0) = p_a / den;
  rho(1, 1) = (p_a + 3 * p_b) / den;
  rho(2, 2) = (p_a + 3 * p_b) / den;
  rho(3, 3) = p_a / den;
  rho(1, 2) = 3 * p_b / den;
  rho(2, 1) = 3 * p_b / den;
  return rho;
}

ComplexMatrix theta_filtered_state(double g, double theta, double p_a, double p_b) {
  const FilteredQutritClosedForm f = theta_filtered_entries(g, theta, p_a, p_b);
  ComplexMatrix published = ComplexMatrix::Zero(4, 4);
  published(0, 0) = f.r1;
  published(1, 1) = f.r2;
  published(2, 2) = f.r3;
  published(3, 3) = f.r4();
  published(1, 2) = f.t;
  published(2, 1) = f.t;
  return reverse_basis(published);
}

ComplexMatrix theta_filtered_state_first_order(double mu, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  ComplexMatrix published = ComplexMatrix::Zero(4, 4);
  published(0, 0) = mu * c * c / 3.0;
  published(1, 1) = (1.0 - mu / 3.0) * s * s;
  published(2, 2) = (1.0 - mu / 3.0) * c * c;
  published(3, 3) = mu * s * s / 3.0;
  published(1, 2) = (1.0 - 2.0 * mu / 3.0) * c * s;
  published(2, 1) = published(1, 2);
  return reverse_basis(published);
}

ComplexMatrix filtered_qutrit_state(CouplingFamily family, double g, double theta, double p_a, double p_b) {
  if (family == CouplingFamily::Equal) return equal_coupling_filtered_state(p_a, p_b);
  return theta_filtered_state(g, theta, p_a, p_b);
}

double qutrit_psuc(CouplingFamily family, double g, double theta, double p_a, double p_b) {
  require_rates(p_a, p_b, "qutrit_psuc");
  const double g2 = g * g;
  const double s = p_a + p_b;
  if (family == CouplingFamily::Equal) {
    return 4 * g2 * p_a * (2 * p_a + 3 * p_b) /
           (9 * (2 * g2 * p_a * p_a + 9 * g2 * p_a * p_b + 4 * g2 * p_b * p_b + p_a * p_b * s * s));
  }
  const double g4 = g2 * g2;
  const double c4t = std::cos(4 * theta);
  const double A = g4 * p_a * c4t * (p_a + p_b) * (p_a + 2 * p_b);
  const double B = g4 * (std::pow(p_a, 3) + 11 * p_a * p_a * p_b + 26 * p_a * p_b * p_b + 12 * std::pow(p_b, 3));
  const double C = 2 * g2 * p_b * s * s * (4 * p_a * p_a + 15 * p_a * p_b + 6 * p_b * p_b);
  const double D = 6 * p_a * p_b * p_b * std::pow(s, 4);
  const double num = 2 * g2 * p_a * (2 * p_a + 3 * p_b) * (g2 * p_a * c4t - g2 * (p_a + 6 * p_b) - 6 * p_b * s * s);
  return num / (9 * A - 9 * (B + C + D));
}

double psuc_small_ratio_limit(double p_a, double p_b) {
  require_rates(p_a, p_b, "psuc_small_ratio_limit");
  return p_a / (3.0 * p_b);
}

double psuc_small_coupling_limit(double g, double p_a, double p_b) {
  require_rates(p_a, p_b, "psuc_small_coupling_limit");
  return 2 * (2 * p_a + 3 * p_b) * g * g / (9 * p_b * sq(p_a + p_b));
}

QuditSteadyClosedForm qudit_coefficients(std::size_t d, double g, double p_a, double p_b) {
  if (d < 2) throw AnalyticError("qudit_coefficients: d must be at least 2");
  require_rates(p_a, p_b, "qudit_coefficients");
  const double dd = static_cast<double>(d);
  const double s = p_a + p_b;
  QuditSteadyClosedForm f;
  f.d = d;
  f.g = g;
  f.p_a = p_a;
  f.p_b = p_b;
  f.c1 = (dd + 1) * p_a * p_b * s * s + 2 * g * g * (sq(dd + 1) * p_b * p_b + 2 * dd * (dd + 1) * p_a * p_b);
  f.c2 = p_a * ((dd + 1) * p_b * s * s + 2 * (dd + 1) * g * g * dd * p_b);
  f.c3 = Complex(0.0, (dd + 1) * g * p_a * p_b * s);
  f.normalizer = sq(dd + 1) * (p_a * p_b * s * s + 2 * g * g * (p_a * p_a + 2 * dd * p_a * p_b + dd * p_b * p_b));
  return f;
}

ComplexMatrix qudit_steady_state(std::size_t d, double g, double p_a, double p_b) {
  return qudit_steady_state(qudit_coefficients(d, g, p_a, p_b));
}

ComplexMatrix qudit_steady_state(const QuditSteadyClosedForm& f) {
  const std::size_t d = f.d;
  const std::size_t levels = d + 1;
  const double dd = static_cast<double>(d);
  const double g = f.g, p_a = f.p_a, p_b = f.p_b;
  const auto at = [levels](std::size_t a, std::size_t b) { return static_cast<Index>(a * levels + b); };
  const auto n = static_cast<Index>(levels * levels);
  ComplexMatrix rho = ComplexMatrix::Zero(n, n);

  for (std::size_t k = 0; k <= d; ++k) {
    for (std::size_t l = 0; l <= d; ++l) rho(at(k, l), at(k, l)) += 2 * g * g * p_a * p_a;
  }
  for (std::size_t k = 0; k < d; ++k) rho(at(k, 0), at(k, 0)) += f.c1;
  rho(at(d, 0), at(d, 0)) += f.c2;
  const double manifold = 2 * (dd + 1) * g * g * p_a * p_b;
  for (std::size_t k = 0; k < d; ++k) rho(at(k, d - k), at(k, d - k)) += manifold;
  for (std::size_t k = 0; k < d; ++k) {
    rho(at(d, 0), at(k, d - k)) += f.c3;
    rho(at(k, d - k), at(d, 0)) += std::conj(f.c3);
  }
  for (std::size_t k = 1; k + 1 <= d; ++k) {
    for (std::size_t l = 1; l <= d - k; ++l) {
      const Index row = at(k + l - 1, d - k - l + 1);
      const Index col = at(k - 1, d - k + 1);
      rho(row, col) += manifold;
      rho(col, row) += manifold;
    }
  }
  return rho / f.normalizer;
}

double success_probability_by_levels(std::size_t n, double g, double p_a, double p_b) {
  if (n < 3) throw AnalyticError("success_probability_by_levels: need at least three levels");
  require_rates(p_a, p_b, "success_probability_by_levels");
  const double d = static_cast<double>(n);
  const double xi = 2 * (d - 1) * p_a * p_b + (d - 1) * p_b * p_b + p_a * p_a;
  return (d - 1) * g * g * p_a * ((d - 1) * p_a + d * p_b) /
         (d * d * (g * g * xi + p_a * p_b * sq(p_a + p_b)));
}

double qudit_psuc(std::size_t d, double g, double p_a, double p_b) {
  return success_probability_by_levels(d + 1, g, p_a, p_b);
}

MachineSpec qudit_psuc_machine(std::size_t d, double g, std::vector<double> gaps) {
  return MachineSpec::qudit(default_gaps(std::move(gaps), d), std::vector<double>(d, g / std::sqrt(2.0)));
}

ComplexVector maximally_entangled_target(std::size_t d) {
  if (d < 2) throw AnalyticError("maximally_entangled_target: d must be at least 2");
  const auto n = static_cast<Index>(d * d);
  ComplexVector psi = ComplexVector::Zero(n);
  for (std::size_t k = 0; k < d; ++k) psi(static_cast<Index>(k * d + (d - k - 1))) = 1.0 / std::sqrt(double(d));
  return psi;
}

SchmidtTarget::SchmidtTarget(std::vector<double> coefficients) : coefficients_(std::move(coefficients)) {
  if (coefficients_.size() < 2) throw AnalyticError("SchmidtTarget: need at least two coefficients");
  double norm_sq = 0.0;
  for (double c : coefficients_) {
    if (!(c >= 0.0)) throw AnalyticError("SchmidtTarget: coefficients must be non-negative");
    norm_sq += c * c;
  }
  if (std::abs(norm_sq - 1.0) > 1e-12) throw AnalyticError("SchmidtTarget: coefficients are not normalised");
}

MachineSpec schmidt_machine(const SchmidtTarget& target, double g, std::vector<double> gaps) {
  const std::size_t d = target.dimension();
  std::vector<double> couplings;
  couplings.reserve(d);
  for (double lambda : target.coefficients()) couplings.push_back(g * lambda);
  return MachineSpec::qudit(default_gaps(std::move(gaps), d), std::move(couplings));
}

ComplexVector schmidt_target_state(const SchmidtTarget& target) {
  const std::size_t d = target.dimension();
  ComplexVector psi = ComplexVector::Zero(static_cast<Index>(d * d));
  for (std::size_t k = 0; k < d; ++k) psi(static_cast<Index>(k * d + (d - k - 1))) = target.coefficients()[k];
  return psi;
}

ComplexVector theta_target_state(double theta) {
  ComplexVector psi = ComplexVector::Zero(4);
  psi(1) = std::cos(theta);
  psi(2) = std::sin(theta);
  return psi;
}

}  // namespace thermoent
