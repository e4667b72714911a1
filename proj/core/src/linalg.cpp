#include "thermoent/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace thermoent {

namespace {

extern "C" void zgesvd_(const char* jobu, const char* jobvt, const int* m, const int* n, Complex* a, const int* lda,
                        double* s, Complex* u, const int* ldu, Complex* vt, const int* ldvt, Complex* work,
                        const int* lwork, double* rwork, int* info, std::size_t jobu_len, std::size_t jobvt_len);

// Singular values (descending) and right singular vectors of a square matrix.
void square_svd(ComplexMatrix a, RealVector& singular, ComplexMatrix& v) {
  const int n = static_cast<int>(a.rows());
  ComplexMatrix vt(n, n);
  singular.resize(n);
  std::vector<double> rwork(static_cast<std::size_t>(5 * n));
  Complex query;
  int lwork = -1, info = 0, one = 1;
  zgesvd_("N", "A", &n, &n, a.data(), &n, singular.data(), nullptr, &one, vt.data(), &n, &query, &lwork,
          rwork.data(), &info, 1, 1);
  lwork = static_cast<int>(query.real());
  std::vector<Complex> work(static_cast<std::size_t>(lwork));
  zgesvd_("N", "A", &n, &n, a.data(), &n, singular.data(), nullptr, &one, vt.data(), &n, work.data(), &lwork,
          rwork.data(), &info, 1, 1);
  if (info != 0) throw LinalgError("null_vector: singular value decomposition did not converge");
  v = vt.adjoint();
}

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw DimensionError(std::string(what) + ": matrix is " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ", expected square");
  }
}

void require_shape(const ComplexMatrix& m, const BipartiteShape& shape, const char* what) {
  require_square(m, what);
  if (shape.dim_a < 1 || shape.dim_b < 1 || static_cast<std::size_t>(m.rows()) != shape.size()) {
    throw DimensionError(std::string(what) + ": matrix dimension " + std::to_string(m.rows()) +
                         " does not match bipartite shape " + std::to_string(shape.dim_a) + "x" +
                         std::to_string(shape.dim_b));
  }
}

// Union-find with path halving.
struct DisjointSets {
  std::vector<std::size_t> parent;

  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) std::swap(a, b);
    parent[a] = b;
  }
};

}  // namespace

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const BipartiteShape& shape, Side over) {
  require_shape(m, shape, "partial_trace");
  const auto da = static_cast<Eigen::Index>(shape.dim_a);
  const auto db = static_cast<Eigen::Index>(shape.dim_b);
  if (over == Side::A) {
    ComplexMatrix out = ComplexMatrix::Zero(db, db);
    for (Eigen::Index i = 0; i < da; ++i) out += m.block(i * db, i * db, db, db);
    return out;
  }
  ComplexMatrix out(da, da);
  for (Eigen::Index i = 0; i < da; ++i) {
    for (Eigen::Index k = 0; k < da; ++k) out(i, k) = m.block(i * db, k * db, db, db).trace();
  }
  return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, const BipartiteShape& shape, Side side) {
  require_shape(m, shape, "partial_transpose");
  const auto da = static_cast<Eigen::Index>(shape.dim_a);
  const auto db = static_cast<Eigen::Index>(shape.dim_b);
  ComplexMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < da; ++i) {
    for (Eigen::Index k = 0; k < da; ++k) {
      if (side == Side::B) {
        out.block(i * db, k * db, db, db) = m.block(i * db, k * db, db, db).transpose();
      } else {
        out.block(i * db, k * db, db, db) = m.block(k * db, i * db, db, db);
      }
    }
  }
  return out;
}

bool is_hermitian(const ComplexMatrix& m, double relative_tolerance) {
  if (m.rows() != m.cols()) return false;
  const double norm = m.norm();
  if (norm == 0.0) return true;
  return (m - m.adjoint()).norm() <= relative_tolerance * norm;
}

HermitianEigen eig_hermitian(const ComplexMatrix& m) {
  require_square(m, "eig_hermitian");
  if (!all_finite(m)) throw NonFiniteError("eig_hermitian: non-finite entry");
  if (!is_hermitian(m)) throw NotHermitianError("eig_hermitian: input is not Hermitian");
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) throw LinalgError("eig_hermitian: decomposition failed");
  HermitianEigen out;
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

std::vector<std::vector<std::size_t>> sparsity_blocks(const ComplexMatrix& m) {
  require_square(m, "sparsity_blocks");
  const auto n = static_cast<std::size_t>(m.rows());
  DisjointSets sets(n);
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (i != j && m(i, j) != Complex(0.0, 0.0)) {
        sets.unite(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      }
    }
  }
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<std::ptrdiff_t> slot(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = sets.find(i);
    if (slot[root] < 0) {
      slot[root] = static_cast<std::ptrdiff_t>(blocks.size());
      blocks.emplace_back();
    }
    blocks[static_cast<std::size_t>(slot[root])].push_back(i);
  }
  return blocks;
}

NullVector null_vector(const ComplexMatrix& m, double relative_tolerance) {
  require_square(m, "null_vector");
  if (m.rows() == 0) throw DimensionError("null_vector: empty matrix");
  if (!all_finite(m)) throw NonFiniteError("null_vector: non-finite entry");
  if (!(relative_tolerance > 0.0)) throw LinalgError("null_vector: tolerance must be positive");

  struct BlockSolve {
    std::vector<std::size_t> indices;
    RealVector singular;  // descending
    ComplexMatrix v;
  };

  const auto blocks = sparsity_blocks(m);
  std::vector<BlockSolve> solves;
  solves.reserve(blocks.size());
  double sigma_max = 0.0;
  std::size_t largest = 0;
  for (const auto& idx : blocks) {
    const auto k = static_cast<Eigen::Index>(idx.size());
    largest = std::max(largest, idx.size());
    ComplexMatrix sub(k, k);
    for (Eigen::Index r = 0; r < k; ++r) {
      for (Eigen::Index c = 0; c < k; ++c) sub(r, c) = m(idx[r], idx[c]);
    }
    BlockSolve solve{idx, {}, {}};
    if (k == 1) {
      solve.singular = RealVector::Constant(1, std::abs(sub(0, 0)));
      solve.v = ComplexMatrix::Identity(1, 1);
    } else {
      square_svd(std::move(sub), solve.singular, solve.v);
    }
    sigma_max = std::max(sigma_max, solve.singular(0));
    solves.push_back(std::move(solve));
  }

  const double threshold = relative_tolerance * sigma_max;
  std::size_t kernel_dim = 0;
  double sigma_gap = std::numeric_limits<double>::infinity();
  const BlockSolve* kernel_block = nullptr;
  Eigen::Index kernel_col = 0;
  double sigma_kernel = 0.0;
  for (const auto& solve : solves) {
    for (Eigen::Index i = 0; i < solve.singular.size(); ++i) {
      const double s = solve.singular(i);
      if (s <= threshold) {
        ++kernel_dim;
        kernel_block = &solve;
        kernel_col = i;
        sigma_kernel = s;
      } else {
        sigma_gap = std::min(sigma_gap, s);
      }
    }
  }

  if (kernel_dim == 0) {
    throw KernelError(KernelError::Kind::Empty, 0,
                      "null_vector: no singular value below tolerance (smallest is " +
                          std::to_string(sigma_gap) + ", threshold " + std::to_string(threshold) + ")");
  }
  if (kernel_dim > 1) {
    throw KernelError(KernelError::Kind::Degenerate, kernel_dim,
                      "null_vector: kernel is " + std::to_string(kernel_dim) + "-dimensional");
  }

  NullVector out;
  out.vector = ComplexVector::Zero(m.rows());
  for (std::size_t r = 0; r < kernel_block->indices.size(); ++r) {
    out.vector(static_cast<Eigen::Index>(kernel_block->indices[r])) =
        kernel_block->v(static_cast<Eigen::Index>(r), kernel_col);
  }
  out.vector.normalize();
  out.sigma_max = sigma_max;
  out.sigma_kernel = sigma_kernel;
  out.sigma_gap = sigma_gap;
  out.block_count = blocks.size();
  out.largest_block = largest;
  return out;
}

bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    }
  }
  return true;
}

ComplexVector vec(const ComplexMatrix& m) {
  return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

ComplexMatrix unvec(const ComplexVector& v, std::size_t rows) {
  const auto r = static_cast<Eigen::Index>(rows);
  if (r == 0 || v.size() % r != 0) throw DimensionError("unvec: length is not a multiple of rows");
  return Eigen::Map<const ComplexMatrix>(v.data(), r, v.size() / r);
}

ComplexMatrix projector(const ComplexVector& psi) { return psi * psi.adjoint(); }

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("trace_distance: shape mismatch");
  const ComplexMatrix diff = a - b;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (diff + diff.adjoint()), Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

}  // namespace thermoent
