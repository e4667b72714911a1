#include "thermoent/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

namespace thermoent {

namespace {

using Index = Eigen::Index;

ComplexMatrix identity(std::size_t n) {
  return ComplexMatrix::Identity(static_cast<Index>(n), static_cast<Index>(n));
}

// Column-stacked position of matrix entry (r, c) in an n x n matrix.
Index vec_index(std::size_t r, std::size_t c, std::size_t n) { return static_cast<Index>(c * n + r); }

void require_state_shape(const ComplexMatrix& m, std::size_t n, const char* what) {
  if (static_cast<std::size_t>(m.rows()) != n || static_cast<std::size_t>(m.cols()) != n) {
    throw DimensionError(std::string(what) + ": expected " + std::to_string(n) + "x" + std::to_string(n) +
                         " matrix");
  }
}

// Adds p * (tau_A (x) Tr_A rho) to the generator.
void add_reset_a(ComplexMatrix& l, const BipartiteShape& shape, const ComplexMatrix& tau, double p) {
  const std::size_t da = shape.dim_a, db = shape.dim_b, n = shape.size();
  for (std::size_t i = 0; i < da; ++i) {
    for (std::size_t k = 0; k < da; ++k) {
      const Complex t = tau(static_cast<Index>(i), static_cast<Index>(k));
      if (t == Complex(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < db; ++j) {
        for (std::size_t q = 0; q < db; ++q) {
          const Index out = vec_index(i * db + j, k * db + q, n);
          for (std::size_t m = 0; m < da; ++m) l(out, vec_index(m * db + j, m * db + q, n)) += p * t;
        }
      }
    }
  }
}

// Adds p * (Tr_B rho (x) tau_B) to the generator.
void add_reset_b(ComplexMatrix& l, const BipartiteShape& shape, const ComplexMatrix& tau, double p) {
  const std::size_t da = shape.dim_a, db = shape.dim_b, n = shape.size();
  for (std::size_t j = 0; j < db; ++j) {
    for (std::size_t q = 0; q < db; ++q) {
      const Complex t = tau(static_cast<Index>(j), static_cast<Index>(q));
      if (t == Complex(0.0, 0.0)) continue;
      for (std::size_t i = 0; i < da; ++i) {
        for (std::size_t k = 0; k < da; ++k) {
          const Index out = vec_index(i * db + j, k * db + q, n);
          for (std::size_t m = 0; m < db; ++m) l(out, vec_index(i * db + m, k * db + m, n)) += p * t;
        }
      }
    }
  }
}

void require_density_like(const ComplexMatrix& tau, std::size_t dim, const char* what) {
  if (static_cast<std::size_t>(tau.rows()) != dim || tau.rows() != tau.cols()) {
    throw DimensionError(std::string(what) + ": thermal state has wrong dimension");
  }
  if (std::abs(tau.trace() - Complex(1.0, 0.0)) > 1e-12) {
    throw DynamicsError(std::string(what) + ": thermal state must have unit trace");
  }
}

ComplexMatrix level_operator(std::size_t levels, std::size_t row, std::size_t col) {
  ComplexMatrix op = ComplexMatrix::Zero(static_cast<Index>(levels), static_cast<Index>(levels));
  op(static_cast<Index>(row), static_cast<Index>(col)) = 1.0;
  return op;
}

void add_local_dissipators(ComplexMatrix& l, const LindbladRates& rates, std::size_t other, Side side) {
  const std::size_t levels = rates.levels();
  const auto embed = [&](const ComplexMatrix& op) {
    return side == Side::A ? kron(op, identity(other)) : kron(identity(other), op);
  };
  for (const auto& [m, n] : rates.transitions()) {
    const TransitionRates& r = rates.at(m, n);
    if (r.up != 0.0) l += r.up * dissipator(embed(level_operator(levels, n, m)));
    if (r.down != 0.0) l += r.down * dissipator(embed(level_operator(levels, m, n)));
    if (r.dephasing != 0.0) {
      ComplexMatrix z = level_operator(levels, m, m) - level_operator(levels, n, n);
      l += r.dephasing * dissipator(embed(z));
    }
  }
}

}  // namespace

ComplexMatrix Liouvillian::apply(const ComplexMatrix& rho) const {
  require_state_shape(rho, hilbert_dim, "Liouvillian::apply");
  return unvec(matrix * vec(rho), hilbert_dim);
}

LindbladRates::LindbladRates(std::size_t levels) : levels_(levels), rates_(levels * (levels - 1) / 2) {
  if (levels < 2) throw DynamicsError("LindbladRates: need at least two levels");
}

std::size_t LindbladRates::index(std::size_t m, std::size_t n) const {
  if (!(m < n && n < levels_)) {
    throw DynamicsError("LindbladRates: transition (" + std::to_string(m) + "," + std::to_string(n) +
                        ") is not an ordered pair of levels");
  }
  // Row-major position of (m, n) in the strict upper triangle.
  return m * levels_ - m * (m + 1) / 2 + (n - m - 1);
}

TransitionRates& LindbladRates::at(std::size_t m, std::size_t n) { return rates_[index(m, n)]; }

const TransitionRates& LindbladRates::at(std::size_t m, std::size_t n) const { return rates_[index(m, n)]; }

std::vector<std::pair<std::size_t, std::size_t>> LindbladRates::transitions() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  out.reserve(rates_.size());
  for (std::size_t m = 0; m < levels_; ++m) {
    for (std::size_t n = m + 1; n < levels_; ++n) out.emplace_back(m, n);
  }
  return out;
}

void LindbladRates::validate() const {
  for (const auto& [m, n] : transitions()) {
    const TransitionRates& r = at(m, n);
    for (double v : {r.up, r.down, r.dephasing}) {
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw DynamicsError("negative or non-finite Lindblad rate on transition " + std::to_string(m) +
                            std::to_string(n));
      }
    }
  }
}

Liouvillian hamiltonian_liouvillian(const ComplexMatrix& hamiltonian) {
  if (hamiltonian.rows() != hamiltonian.cols()) throw DimensionError("hamiltonian_liouvillian: H not square");
  const auto n = static_cast<std::size_t>(hamiltonian.rows());
  const Complex i(0.0, 1.0);
  ComplexMatrix l = i * (kron(hamiltonian.transpose(), identity(n)) - kron(identity(n), hamiltonian));
  return {std::move(l), n};
}

ComplexMatrix dissipator(const ComplexMatrix& jump) {
  if (jump.rows() != jump.cols()) throw DimensionError("dissipator: jump operator not square");
  const auto n = static_cast<std::size_t>(jump.rows());
  const ComplexMatrix odo = jump.adjoint() * jump;
  return kron(jump.conjugate(), jump) - 0.5 * kron(identity(n), odo) - 0.5 * kron(odo.transpose(), identity(n));
}

Liouvillian reset_liouvillian(const ComplexMatrix& hamiltonian, const BipartiteShape& shape,
                              const ComplexMatrix& tau_a, const ComplexMatrix& tau_b, double p_a, double p_b) {
  if (static_cast<std::size_t>(hamiltonian.rows()) != shape.size()) {
    throw DimensionError("reset_liouvillian: Hamiltonian does not match the bipartite shape");
  }
  require_density_like(tau_a, shape.dim_a, "reset_liouvillian");
  require_density_like(tau_b, shape.dim_b, "reset_liouvillian");
  if (!(p_a >= 0.0) || !(p_b >= 0.0)) throw DynamicsError("reset_liouvillian: rates must be non-negative");

  Liouvillian l = hamiltonian_liouvillian(hamiltonian);
  const std::size_t n2 = shape.size() * shape.size();
  if (p_a != 0.0) add_reset_a(l.matrix, shape, tau_a, p_a);
  if (p_b != 0.0) add_reset_b(l.matrix, shape, tau_b, p_b);
  for (std::size_t k = 0; k < n2; ++k) l.matrix(static_cast<Index>(k), static_cast<Index>(k)) -= (p_a + p_b);
  return l;
}

Liouvillian reset_liouvillian(const MachineSpec& spec, const BathSpec& bath_a, const BathSpec& bath_b) {
  bath_a.validate();
  bath_b.validate();
  const ComplexMatrix tau_a = thermal_state(spec.ladder_a(), bath_a.temperature);
  const ComplexMatrix tau_b = thermal_state(spec.ladder_b(), bath_b.temperature);
  return reset_liouvillian(total_hamiltonian(spec), spec.shape(), tau_a, tau_b, bath_a.reset_rate,
                           bath_b.reset_rate);
}

Liouvillian lindblad_liouvillian(const ComplexMatrix& hamiltonian, const BipartiteShape& shape,
                                 const LindbladRates& rates_a, const LindbladRates& rates_b) {
  if (static_cast<std::size_t>(hamiltonian.rows()) != shape.size()) {
    throw DimensionError("lindblad_liouvillian: Hamiltonian does not match the bipartite shape");
  }
  if (rates_a.levels() != shape.dim_a || rates_b.levels() != shape.dim_b) {
    throw DimensionError("lindblad_liouvillian: rate tables do not match the bipartite shape");
  }
  rates_a.validate();
  rates_b.validate();
  Liouvillian l = hamiltonian_liouvillian(hamiltonian);
  add_local_dissipators(l.matrix, rates_a, shape.dim_b, Side::A);
  add_local_dissipators(l.matrix, rates_b, shape.dim_a, Side::B);
  return l;
}

SteadyState steady_state(const Liouvillian& liouvillian, double relative_tolerance) {
  SteadyState out;
  out.kernel = null_vector(liouvillian.matrix, relative_tolerance);
  const std::size_t n = liouvillian.hilbert_dim;
  ComplexMatrix rho = unvec(out.kernel.vector, n);
  const Complex tr = rho.trace();
  // A unit-norm vectorised state has |trace| >= 1.
  if (std::abs(tr) < 0.5) throw UnphysicalStateError("steady_state: kernel vector has (near) zero trace");
  rho /= tr;
  const double anti = 0.5 * (rho - rho.adjoint()).norm();
  if (anti > 1e-9) {
    throw UnphysicalStateError("steady_state: kernel is not Hermitian (residue " + std::to_string(anti) + ")");
  }
  rho = (0.5 * (rho + rho.adjoint())).eval();

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(rho);
  out.min_eigenvalue = eig.eigenvalues().minCoeff();
  if (out.min_eigenvalue < -kNegativeEigenvalueTolerance) {
    throw UnphysicalStateError("steady_state: eigenvalue " + std::to_string(out.min_eigenvalue) +
                               " below tolerance");
  }
  if (out.min_eigenvalue < 0.0) {
    const RealVector clipped = eig.eigenvalues().cwiseMax(0.0);
    rho = eig.eigenvectors() * clipped.asDiagonal() * eig.eigenvectors().adjoint();
    rho /= rho.trace().real();
    rho = (0.5 * (rho + rho.adjoint())).eval();
  }
  out.residual = (liouvillian.matrix * vec(rho)).norm();
  out.rho = std::move(rho);
  return out;
}

double norm_bound(const Liouvillian& liouvillian) {
  const ComplexMatrix& l = liouvillian.matrix;
  const double one = l.cwiseAbs().colwise().sum().maxCoeff();
  const double inf = l.cwiseAbs().rowwise().sum().maxCoeff();
  return std::sqrt(one * inf);
}

ComplexMatrix propagate(const Liouvillian& liouvillian, const ComplexMatrix& rho0, double t, double dt) {
  const std::size_t n = liouvillian.hilbert_dim;
  require_state_shape(rho0, n, "propagate");
  if (!(t >= 0.0) || !(dt > 0.0)) throw IntegrationError("propagate: need t >= 0 and dt > 0");
  const double norm = norm_bound(liouvillian);
  if (dt * norm > 0.1) {
    throw IntegrationError("propagate: dt * ||L|| = " + std::to_string(dt * norm) + " exceeds 0.1");
  }
  if (t == 0.0) return rho0;

  const auto steps = static_cast<long long>(std::ceil(t / dt));
  const double h = t / static_cast<double>(steps);

  // One classical RK4 step of a linear system is v -> (sum_{k<=4} (hL)^k / k!) v.
  const ComplexMatrix hl = h * liouvillian.matrix;
  const auto dim = hl.rows();
  ComplexMatrix step = ComplexMatrix::Identity(dim, dim);
  ComplexMatrix term = ComplexMatrix::Identity(dim, dim);
  for (int k = 1; k <= 4; ++k) {
    term = (hl * term) / static_cast<double>(k);
    step += term;
  }

  ComplexVector v = vec(rho0);
  const auto trace_of = [n](const ComplexVector& x) {
    Complex tr(0.0, 0.0);
    for (std::size_t k = 0; k < n; ++k) tr += x(static_cast<Index>(k * n + k));
    return tr;
  };
  const Complex tr0 = trace_of(v);
  ComplexVector next(v.size());
  for (long long s = 0; s < steps; ++s) {
    next.noalias() = step * v;
    v.swap(next);
    if ((s & 63) == 0 || s + 1 == steps) {
      const double drift = std::abs(trace_of(v) - tr0);
      if (!(drift <= 1e-6)) {
        throw IntegrationError("propagate: trace drift " + std::to_string(drift) + " after " +
                               std::to_string(s + 1) + " steps");
      }
    }
  }
  return unvec(v, n);
}

double slowest_decay_rate(const Liouvillian& liouvillian, double relative_tolerance) {
  const ComplexMatrix& l = liouvillian.matrix;
  const double cutoff = relative_tolerance * norm_bound(liouvillian);
  double slowest = std::numeric_limits<double>::infinity();
  for (const auto& idx : sparsity_blocks(l)) {
    const auto k = static_cast<Index>(idx.size());
    ComplexMatrix sub(k, k);
    for (Index r = 0; r < k; ++r) {
      for (Index c = 0; c < k; ++c) sub(r, c) = l(static_cast<Index>(idx[r]), static_cast<Index>(idx[c]));
    }
    Eigen::ComplexEigenSolver<ComplexMatrix> eig(sub, false);
    for (Index i = 0; i < k; ++i) {
      const Complex lambda = eig.eigenvalues()(i);
      if (std::abs(lambda) > cutoff) slowest = std::min(slowest, std::abs(lambda.real()));
    }
  }
  return slowest;
}

double trace_defect(const Liouvillian& liouvillian) {
  const std::size_t n = liouvillian.hilbert_dim;
  double worst = 0.0;
  for (Index c = 0; c < liouvillian.matrix.cols(); ++c) {
    Complex tr(0.0, 0.0);
    for (std::size_t k = 0; k < n; ++k) tr += liouvillian.matrix(static_cast<Index>(k * n + k), c);
    worst = std::max(worst, std::abs(tr));
  }
  return worst;
}

double hermiticity_defect(const Liouvillian& liouvillian) {
  const std::size_t n = liouvillian.hilbert_dim;
  double worst = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const ComplexMatrix e = level_operator(n, r, c);
      const ComplexMatrix lhs = liouvillian.apply(e.adjoint());
      const ComplexMatrix rhs = liouvillian.apply(e).adjoint();
      worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

}  // namespace thermoent
