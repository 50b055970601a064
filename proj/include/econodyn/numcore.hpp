#pragma once

// Shared numerical primitives: trapezoidal grids, quadrature, dense solves,
// matrix norms and spectra. Everything here is templated on the scalar type
// and accepts arbitrary Eigen expressions.

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "econodyn/error.hpp"

namespace econodyn {

using Eigen::Index;

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Outcome of an iterative solve.
struct SolverReport {
  std::size_t iterations = 0;
  double final_residual = 0.0;
  bool converged = false;
  std::vector<std::string> warnings;
  // Per-iteration residual (successive change or equation residual,
  // whichever the solver documents as its stopping metric).
  std::vector<double> history;
};

/// Ordered nodes on a closed interval together with composite trapezoidal
/// weights.
template <typename Scalar>
class BasicGrid {
 public:
  using Vector = VectorX<Scalar>;

  /// Builds trapezoidal weights for the given strictly increasing nodes.
  explicit BasicGrid(Vector nodes) : nodes_(std::move(nodes)) {
    if (nodes_.size() < 2) {
      throw Error(Errc::invalid_argument, "grid needs at least 2 nodes");
    }
    for (Index i = 0; i < nodes_.size(); ++i) {
      if (!std::isfinite(static_cast<double>(nodes_[i]))) {
        throw Error(Errc::invalid_argument, "grid nodes must be finite");
      }
      if (i > 0 && !(nodes_[i] > nodes_[i - 1])) {
        throw Error(Errc::invalid_argument, "grid nodes must be strictly increasing");
      }
    }
    const Index last = nodes_.size() - 1;
    weights_.resize(nodes_.size());
    weights_[0] = (nodes_[1] - nodes_[0]) / Scalar(2);
    weights_[last] = (nodes_[last] - nodes_[last - 1]) / Scalar(2);
    for (Index i = 1; i < last; ++i) {
      weights_[i] = (nodes_[i + 1] - nodes_[i - 1]) / Scalar(2);
    }
  }

  Scalar lower() const { return nodes_[0]; }
  Scalar upper() const { return nodes_[nodes_.size() - 1]; }
  Index size() const { return nodes_.size(); }
  Index segments() const { return nodes_.size() - 1; }
  const Vector& nodes() const { return nodes_; }
  const Vector& weights() const { return weights_; }
  Scalar node(Index i) const { return nodes_[i]; }
  Scalar weight(Index i) const { return weights_[i]; }

  /// Half of the spacing to the left (resp. right) neighbour; zero at the
  /// interval ends. These sum to weight(i).
  Scalar left_half(Index i) const {
    return i == 0 ? Scalar(0) : (nodes_[i] - nodes_[i - 1]) / Scalar(2);
  }
  Scalar right_half(Index i) const {
    return i == size() - 1 ? Scalar(0) : (nodes_[i + 1] - nodes_[i]) / Scalar(2);
  }

  /// Trapezoidal weight of node j in the rule for [lower, node(i)], j <= i.
  Scalar partial_weight(Index i, Index j) const {
    if (j > i || i == 0) return Scalar(0);
    if (j == i) return left_half(i);
    if (j == 0) return right_half(0);
    return weights_[j];
  }

 private:
  Vector nodes_;
  Vector weights_;
};

using Grid = BasicGrid<double>;

template <typename Scalar>
BasicGrid<Scalar> make_uniform_grid(Scalar lower, Scalar upper, Index segments) {
  if (!std::isfinite(static_cast<double>(lower)) || !std::isfinite(static_cast<double>(upper))) {
    throw Error(Errc::invalid_argument, "grid bounds must be finite");
  }
  if (!(upper > lower)) {
    throw Error(Errc::invalid_argument, "grid upper bound must exceed lower bound");
  }
  if (segments < 1) {
    throw Error(Errc::invalid_argument, "grid needs at least one segment");
  }
  VectorX<Scalar> nodes(segments + 1);
  const Scalar step = (upper - lower) / Scalar(segments);
  for (Index i = 0; i < segments; ++i) nodes[i] = lower + Scalar(i) * step;
  nodes[segments] = upper;
  return BasicGrid<Scalar>(std::move(nodes));
}

/// Trapezoidal quadrature of nodal samples.
template <typename Derived, typename Scalar>
typename Derived::Scalar quad(const Eigen::MatrixBase<Derived>& samples,
                              const BasicGrid<Scalar>& grid) {
  if (samples.size() != grid.size()) {
    throw Error(Errc::invalid_argument, "sample count " + std::to_string(samples.size()) +
                                            " does not match grid size " +
                                            std::to_string(grid.size()));
  }
  return grid.weights().dot(samples.derived().reshaped());
}

/// Maximum absolute row sum.
template <typename Derived>
typename Derived::RealScalar inf_norm(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0;
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

/// Solves M x = rhs by partially pivoted LU. Throws singular-matrix when a
/// pivot falls below 1e-14 * ||M||_inf.
template <typename DerivedM, typename DerivedR>
VectorX<typename DerivedM::Scalar> solve_dense(const Eigen::MatrixBase<DerivedM>& m,
                                               const Eigen::MatrixBase<DerivedR>& rhs) {
  using Scalar = typename DerivedM::Scalar;
  if (m.rows() != m.cols()) {
    throw Error(Errc::invalid_argument, "matrix must be square");
  }
  if (rhs.size() != m.rows()) {
    throw Error(Errc::invalid_argument, "right-hand side length mismatch");
  }
  if (!m.allFinite() || !rhs.allFinite()) {
    throw Error(Errc::invalid_argument, "matrix and right-hand side must be finite");
  }
  if (m.rows() == 0) return VectorX<Scalar>();
  const MatrixX<Scalar> dense = m;
  const Eigen::PartialPivLU<MatrixX<Scalar>> lu(dense);
  const auto threshold = Scalar(1e-14) * inf_norm(dense);
  const auto pivots = lu.matrixLU().diagonal().cwiseAbs();
  if (!(pivots.minCoeff() > threshold)) {
    throw Error(Errc::singular_matrix, "pivot below 1e-14 * ||M||_inf");
  }
  return lu.solve(VectorX<Scalar>(rhs.derived().reshaped()));
}

/// All eigenvalues of a real square matrix.
template <typename Derived>
VectorX<std::complex<typename Derived::Scalar>> eigenvalues(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() != m.cols()) {
    throw Error(Errc::invalid_argument, "matrix must be square");
  }
  if (m.rows() == 0) return {};
  Eigen::EigenSolver<MatrixX<Scalar>> solver(MatrixX<Scalar>(m), /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw Error(Errc::no_convergence, "eigenvalue iteration failed");
  }
  return solver.eigenvalues();
}

}  // namespace econodyn
