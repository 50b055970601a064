#pragma once

// Fredholm integral equations of the second kind,
//
//   Phi(t) = lambda * int_{lower}^{upper} K(t, h) Phi(h) dh + Q(t),
//
// solved by the Nystrom method on trapezoidal grids, together with discrete
// resolvents, characteristic numbers and the block map that fuses an
// n-component system on [0,1] into one equation on [0,n].

#include <complex>
#include <cstddef>
#include <vector>

#include "econodyn/numcore.hpp"
#include "econodyn/volterra.hpp"

namespace econodyn {

/// Kernel that may jump across the diagonal h = t. `below` is evaluated for
/// h <= t (so the diagonal value is the lower-side limit K(t, t-)); `above`
/// for h > t. An empty `above` means the kernel is continuous.
struct Kernel {
  KernelFn below;
  KernelFn above;

  Kernel() = default;
  Kernel(KernelFn continuous) : below(std::move(continuous)) {}  // NOLINT(google-explicit-constructor)
  Kernel(KernelFn lower_branch, KernelFn upper_branch)
      : below(std::move(lower_branch)), above(std::move(upper_branch)) {}

  double operator()(double t, double h) const {
    return (h > t && above) ? above(t, h) : below(t, h);
  }
  double upper_limit(double t) const { return above ? above(t, t) : below(t, t); }
  bool jumps_at_diagonal() const { return static_cast<bool>(above); }
  explicit operator bool() const { return static_cast<bool>(below); }
};

struct FredholmProblem {
  double lower = 0.0;
  double upper = 1.0;
  Kernel kernel;
  ScalarFn free_term;
  double lambda = 1.0;
};

/// Nodes, quadrature weights and kernel matrix of a Nystrom discretization.
/// At coincident nodes of a kernel that jumps across the diagonal, the entry
/// blends both one-sided limits with the neighbouring half-interval weights,
/// which is the trapezoidal rule applied separately on [lower, t] and [t, upper].
/// Stacked discretizations repeat the node coordinates at block seams.
struct NystromDiscretization {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
  Eigen::MatrixXd kernel;

  Index size() const { return nodes.size(); }
  Eigen::MatrixXd weighted_kernel() const { return kernel * weights.asDiagonal(); }
};

NystromDiscretization discretize(const Kernel& kernel, const Grid& grid);

struct FredholmSolution {
  Eigen::VectorXd samples;
  SolverReport report;
};

/// Solves (I - lambda K W) Phi = Q. Throws characteristic-lambda when the
/// condition estimate of I - lambda K W exceeds min(1e10, h^-2), h being the
/// largest quadrature weight.
FredholmSolution nystrom_solve(const NystromDiscretization& disc, double lambda,
                               const Eigen::Ref<const Eigen::VectorXd>& free_values);
FredholmSolution nystrom_solve(const FredholmProblem& problem, const Grid& grid);

/// Reciprocals of the nonzero eigenvalues of K W, ordered by increasing
/// magnitude; at most `count` are returned.
Eigen::VectorXcd characteristic_numbers(const NystromDiscretization& disc, std::size_t count);
Eigen::VectorXcd characteristic_numbers(const Kernel& kernel, const Grid& grid, std::size_t count);

/// Discrete resolvent R(t_i, h_j, lambda): Phi = Q + lambda * sum_j w_j R_ij Q_j.
/// The table is read-only after construction and may be shared across threads.
struct DiscreteResolvent {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
  double lambda = 0.0;
  Eigen::MatrixXd table;

  Eigen::VectorXd apply(const Eigen::Ref<const Eigen::VectorXd>& free_values) const;
};

DiscreteResolvent build_resolvent(const NystromDiscretization& disc, double lambda);
DiscreteResolvent build_resolvent(const Kernel& kernel, double lambda, const Grid& grid);

struct NeumannResolvent {
  DiscreteResolvent resolvent;
  SolverReport report;
};

/// Resolvent by summing the Neumann series sum_m (lambda K W)^m K. Only
/// meaningful when lambda K W is contractive; report.converged says whether
/// the series settled to `tol` relative.
NeumannResolvent neumann_resolvent(const NystromDiscretization& disc, double lambda,
                                   double tol = 1e-13, std::size_t max_terms = 10000);

/// An n-component system on [0,1] fused into a single equation on [0,n]:
/// Phi(t) = phi_i(t - i + 1), Q(t) = q_i(t - i + 1),
/// K(t, h) = k_ij(t - i + 1, h - j + 1) for t in block i, h in block j.
struct StackedProblem {
  std::size_t blocks = 0;
  std::vector<std::vector<Kernel>> block_kernels;
  std::vector<ScalarFn> block_free_terms;
  FredholmProblem problem;

  /// 0-based block containing global coordinate t; blocks are [i, i+1) with
  /// the last one closed.
  std::size_t block_of(double t) const;
};

StackedProblem stack_system(std::vector<std::vector<Kernel>> blocks,
                            std::vector<ScalarFn> free_terms, double lambda);

/// Composite trapezoidal discretization of a stacked problem: each unit block
/// receives its own copy of `unit_grid`, so block seams carry two nodes.
NystromDiscretization discretize(const StackedProblem& stacked, const Grid& unit_grid);
Eigen::VectorXd sample_free_term(const StackedProblem& stacked, const Grid& unit_grid);
FredholmSolution nystrom_solve(const StackedProblem& stacked, const Grid& unit_grid);

/// Splits stacked nodal values into a (unit nodes) x (blocks) matrix.
Eigen::MatrixXd unstack(const Eigen::Ref<const Eigen::VectorXd>& samples, std::size_t blocks);

}  // namespace econodyn
