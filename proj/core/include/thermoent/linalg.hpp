#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace thermoent {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Which tensor factor an operation acts on.
enum class Side { A, B };

/// Split of a square matrix's index space into A (slow index) and B (fast
/// index): basis |i>_A |j>_B sits at row i * dim_b + j.
struct BipartiteShape {
  std::size_t dim_a = 2;
  std::size_t dim_b = 2;

  std::size_t size() const { return dim_a * dim_b; }
  std::size_t dim(Side side) const { return side == Side::A ? dim_a : dim_b; }
  bool operator==(const BipartiteShape&) const = default;
};

class LinalgError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public LinalgError {
 public:
  using LinalgError::LinalgError;
};

class NotHermitianError : public LinalgError {
 public:
  using LinalgError::LinalgError;
};

/// Raised by null_vector when the kernel is not one-dimensional.
class KernelError : public LinalgError {
 public:
  enum class Kind { Empty, Degenerate };

  KernelError(Kind kind, std::size_t dimension, const std::string& what)
      : LinalgError(what), kind_(kind), dimension_(dimension) {}

  Kind kind() const { return kind_; }
  std::size_t dimension() const { return dimension_; }

 private:
  Kind kind_;
  std::size_t dimension_;
};

class NonFiniteError : public LinalgError {
 public:
  using LinalgError::LinalgError;
};

inline constexpr double kDefaultKernelTolerance = 1e-9;
inline constexpr double kHermitianTolerance = 1e-10;

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Traces out the factor named by `over`; the result lives on the other one.
ComplexMatrix partial_trace(const ComplexMatrix& m, const BipartiteShape& shape, Side over);

ComplexMatrix partial_transpose(const ComplexMatrix& m, const BipartiteShape& shape, Side side);

struct HermitianEigen {
  RealVector values;      // descending
  ComplexMatrix vectors;  // columns match `values`
};

/// Rejects inputs whose anti-Hermitian part exceeds 1e-10 relative
/// (Frobenius). The Hermitian part is what gets diagonalised.
HermitianEigen eig_hermitian(const ComplexMatrix& m);

bool is_hermitian(const ComplexMatrix& m, double relative_tolerance = kHermitianTolerance);

/// Kernel vector of a square matrix together with the singular-value data
/// used to decide that the kernel is one-dimensional.
struct NullVector {
  ComplexVector vector;       // unit 2-norm
  double sigma_max = 0.0;     // largest singular value of the whole matrix
  double sigma_kernel = 0.0;  // singular value attached to `vector`
  double sigma_gap = 0.0;     // smallest singular value above the threshold
  std::size_t block_count = 0;
  std::size_t largest_block = 0;
};

/// Finds the one-dimensional kernel of `m`. Singular values at or below
/// `relative_tolerance * sigma_max` count as zero. Throws KernelError when the
/// count is 0 (Kind::Empty) or at least 2 (Kind::Degenerate).
///
/// The matrix is first permuted into the connected components of its
/// sparsity pattern; each block is decomposed separately with a
/// singular-value decomposition. Block structure is read from exact zeros, so
/// the result is the same as a full decomposition up to rounding.
NullVector null_vector(const ComplexMatrix& m, double relative_tolerance = kDefaultKernelTolerance);

/// Index sets of the connected components of the undirected graph with an
/// edge (i, j) whenever m(i, j) or m(j, i) is nonzero. Components are sorted
/// by their smallest index; indices inside a component ascend.
std::vector<std::vector<std::size_t>> sparsity_blocks(const ComplexMatrix& m);

bool all_finite(const ComplexMatrix& m);

/// Column-stacking vectorisation: vec(A X B) = (B^T kron A) vec(X).
ComplexVector vec(const ComplexMatrix& m);
ComplexMatrix unvec(const ComplexVector& v, std::size_t rows);

ComplexMatrix projector(const ComplexVector& psi);

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace thermoent
