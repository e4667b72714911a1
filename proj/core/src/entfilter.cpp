#include "thermoent/entfilter.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace thermoent {

namespace {

using Index = Eigen::Index;

std::array<ComplexMatrix, 3> pauli() {
  ComplexMatrix x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << 0, Complex(0, -1), Complex(0, 1), 0;
  z << 1, 0, 0, -1;
  return {x, y, z};
}

void validate_levels(const std::vector<std::size_t>& kept, std::size_t dim, const char* side) {
  if (kept.empty() || kept.size() >= dim) {
    throw FilterError(std::string("filter: kept set of ") + side + " must be a non-empty proper subset");
  }
  for (std::size_t i = 0; i < kept.size(); ++i) {
    if (kept[i] >= dim) throw FilterError(std::string("filter: level out of range on ") + side);
    for (std::size_t j = 0; j < i; ++j) {
      if (kept[i] == kept[j]) throw FilterError(std::string("filter: repeated level on ") + side);
    }
  }
}

}  // namespace

FilterSpec FilterSpec::qutrit() { return {{0, 1}, {1, 2}}; }

FilterSpec FilterSpec::qudit(std::size_t d) {
  if (d < 2) throw FilterError("FilterSpec::qudit: d must be at least 2");
  FilterSpec f;
  for (std::size_t k = 0; k < d; ++k) {
    f.kept_a.push_back(k);
    f.kept_b.push_back(k + 1);
  }
  return f;
}

void FilterSpec::validate(const BipartiteShape& shape) const {
  validate_levels(kept_a, shape.dim_a, "A");
  validate_levels(kept_b, shape.dim_b, "B");
}

FilterOutcome apply_filter(const ComplexMatrix& rho, const BipartiteShape& shape, const FilterSpec& filter) {
  if (static_cast<std::size_t>(rho.rows()) != shape.size() || rho.rows() != rho.cols()) {
    throw DimensionError("apply_filter: state does not match the bipartite shape");
  }
  filter.validate(shape);
  const BipartiteShape reduced = filter.reduced_shape();
  std::vector<Index> index;
  index.reserve(reduced.size());
  for (std::size_t a : filter.kept_a) {
    for (std::size_t b : filter.kept_b) index.push_back(static_cast<Index>(a * shape.dim_b + b));
  }
  const auto n = static_cast<Index>(index.size());
  ComplexMatrix out(n, n);
  for (Index r = 0; r < n; ++r) {
    for (Index c = 0; c < n; ++c) out(r, c) = rho(index[r], index[c]);
  }
  const double p = out.trace().real();
  if (!(p > kMinSuccessProbability)) {
    throw FilterError("apply_filter: success probability " + std::to_string(p) + " is too small");
  }
  return {out / p, std::min(p, 1.0), reduced};
}

double negativity(const ComplexMatrix& rho, const BipartiteShape& shape) { return negativity(rho, shape, Side::B); }

double negativity(const ComplexMatrix& rho, const BipartiteShape& shape, Side transposed) {
  const HermitianEigen eig = eig_hermitian(partial_transpose(rho, shape, transposed));
  double sum = 0.0;
  for (Index i = 0; i < eig.values.size(); ++i) {
    if (eig.values(i) < -kNegativityFloor) sum -= eig.values(i);
  }
  return sum;
}

double chsh_max(const ComplexMatrix& rho) {
  if (rho.rows() != 4 || rho.cols() != 4) throw DimensionError("chsh_max: needs a two-qubit state");
  const auto s = pauli();
  Eigen::Matrix3d t;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) t(i, j) = (rho * kron(s[i], s[j])).trace().real();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(t.transpose() * t);
  const Eigen::Vector3d v = eig.eigenvalues();  // ascending
  return 2.0 * std::sqrt(std::max(0.0, v(1) + v(2)));
}

double fidelity_target(const ComplexMatrix& rho, const ComplexVector& psi) {
  if (rho.rows() != psi.size() || rho.cols() != psi.size()) {
    throw DimensionError("fidelity_target: dimension mismatch");
  }
  const double norm = psi.norm();
  if (!(norm > 0.0)) throw DimensionError("fidelity_target: zero target vector");
  const ComplexVector u = psi / norm;
  return std::clamp((u.adjoint() * rho * u)(0, 0).real(), 0.0, 1.0);
}

EntanglementReport entanglement_report(const ComplexMatrix& rho, const BipartiteShape& shape,
                                       const ComplexVector& target) {
  EntanglementReport r;
  r.negativity = negativity(rho, shape);
  if (shape.dim_a == 2 && shape.dim_b == 2) r.chsh = chsh_max(rho);
  r.fidelity_target = fidelity_target(rho, target);
  r.concurrence_lower_bound = 2.0 * r.negativity;
  return r;
}

}  // namespace thermoent
