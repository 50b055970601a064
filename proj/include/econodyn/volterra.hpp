#pragma once

// Volterra integral equations of the second kind,
//
//   phi(t) = lambda * int_{lower}^{t} k(t, h) phi(h) dh + q(t),
//
// discretized with the trapezoidal rule on a Grid.

#include <functional>
#include <vector>

#include "econodyn/numcore.hpp"

namespace econodyn {

using KernelFn = std::function<double(double t, double h)>;
using ScalarFn = std::function<double(double t)>;

struct VolterraProblem {
  double lower = 0.0;
  KernelFn kernel;  // only evaluated for h <= t
  ScalarFn free_term;
  double lambda = 1.0;
};

/// n coupled equations phi_i = lambda * sum_j int k_ij phi_j + q_i.
/// An empty kernel entry stands for k_ij == 0.
struct VolterraSystem {
  double lower = 0.0;
  std::vector<std::vector<KernelFn>> kernels;
  std::vector<ScalarFn> free_terms;
  double lambda = 1.0;

  std::size_t size() const { return free_terms.size(); }
};

struct VolterraSolution {
  Eigen::VectorXd samples;
  SolverReport report;
};

struct VolterraSystemSolution {
  Eigen::MatrixXd samples;  // nodes x components
  SolverReport report;
};

inline constexpr double kDefaultTolerance = 1e-10;
inline constexpr std::size_t kDefaultMaxIterations = 10000;

/// Successive approximations from phi_0 = 0. Stops once the max-node change
/// of an iterate is <= tol; otherwise returns with converged = false.
VolterraSolution solve_picard(const VolterraProblem& problem, const Grid& grid,
                              double tol = kDefaultTolerance,
                              std::size_t max_iter = kDefaultMaxIterations);

/// Direct node-by-node solve of the same trapezoidal discretization.
/// Throws degenerate-step when 1 - lambda * w_ii * k(t_i, t_i) vanishes.
Eigen::VectorXd solve_marching(const VolterraProblem& problem, const Grid& grid);

VolterraSystemSolution solve_system_picard(const VolterraSystem& system, const Grid& grid,
                                           double tol = kDefaultTolerance,
                                           std::size_t max_iter = kDefaultMaxIterations);

/// Integrates (t_i - h) * phi(h) over [lower, t_i] at every node with the
/// trapezoidal rule; the building block of second-derivative reconstructions.
Eigen::VectorXd integrate_twice(const Eigen::Ref<const Eigen::VectorXd>& phi, const Grid& grid);

}  // namespace econodyn
