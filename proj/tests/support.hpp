#pragma once

#include <cmath>
#include <random>

#include "thermoent/linalg.hpp"

namespace testing_support {

using thermoent::Complex;
using thermoent::ComplexMatrix;
using thermoent::ComplexVector;

inline ComplexMatrix random_matrix(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> z;
  ComplexMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = Complex(z(rng), z(rng));
  }
  return m;
}

inline ComplexMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
  const ComplexMatrix g = random_matrix(n, rng);
  return 0.5 * (g + g.adjoint());
}

// Ginibre ensemble: G G^dag / Tr.
inline ComplexMatrix random_density(std::size_t n, std::mt19937_64& rng) {
  const ComplexMatrix g = random_matrix(n, rng);
  ComplexMatrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

inline ComplexMatrix pauli(int k) {
  ComplexMatrix s = ComplexMatrix::Zero(2, 2);
  if (k == 0) s << 1, 0, 0, 1;
  if (k == 1) s << 0, 1, 1, 0;
  if (k == 2) s << 0, Complex(0, -1), Complex(0, 1), 0;
  if (k == 3) s << 1, 0, 0, -1;
  return s;
}

inline ComplexVector bell_phi_plus() {
  ComplexVector v = ComplexVector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return v;
}

inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

// Kernel of a trace-preserving generator by replacing one row with the trace
// functional and solving with full-pivot LU. Used as an independent check of
// the SVD-based solver.
inline ComplexMatrix lu_steady_state(const ComplexMatrix& l, std::size_t n) {
  ComplexMatrix a = l;
  ComplexVector rhs = ComplexVector::Zero(a.rows());
  a.row(0).setZero();
  for (std::size_t k = 0; k < n; ++k) a(0, static_cast<Eigen::Index>(k * n + k)) = 1.0;
  rhs(0) = 1.0;
  const ComplexVector v = a.fullPivLu().solve(rhs);
  ComplexMatrix rho(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t r = 0; r < n; ++r) rho(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v(static_cast<Eigen::Index>(c * n + r));
  }
  return 0.5 * (rho + rho.adjoint());
}

}  // namespace testing_support
