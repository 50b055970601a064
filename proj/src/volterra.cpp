#include "econodyn/volterra.hpp"

#include <algorithm>
#include <cmath>

namespace econodyn {
namespace {

void require_matching_lower(double lower, const Grid& grid) {
  if (std::abs(grid.lower() - lower) > 1e-12 * std::max(1.0, std::abs(lower))) {
    throw Error(Errc::invalid_argument, "grid must start at the problem's lower limit");
  }
}

void require_tolerance(double tol) {
  if (!(tol > 0.0)) throw Error(Errc::invalid_argument, "tolerance must be positive");
}

// Lower-triangular block of the discrete operator: lambda * W(a, b) * k(t_a, t_b).
void fill_block(Eigen::Ref<Eigen::MatrixXd> block, const KernelFn& kernel, double lambda,
                const Grid& grid) {
  const Index n = grid.size();
  for (Index a = 0; a < n; ++a) {
    const double t = grid.node(a);
    for (Index b = 0; b <= a; ++b) {
      const double w = grid.partial_weight(a, b);
      if (w == 0.0) continue;
      block(a, b) = lambda * w * kernel(t, grid.node(b));
    }
  }
}

Eigen::VectorXd sample(const ScalarFn& f, const Grid& grid) {
  Eigen::VectorXd out(grid.size());
  for (Index i = 0; i < grid.size(); ++i) out[i] = f(grid.node(i));
  return out;
}

SolverReport iterate(const Eigen::MatrixXd& op, const Eigen::VectorXd& q, Eigen::VectorXd& phi,
                     double tol, std::size_t max_iter) {
  SolverReport report;
  phi = Eigen::VectorXd::Zero(q.size());
  for (std::size_t s = 1; s <= max_iter; ++s) {
    Eigen::VectorXd next = op * phi + q;
    const double change = (next - phi).lpNorm<Eigen::Infinity>();
    phi.swap(next);
    report.iterations = s;
    report.final_residual = change;
    report.history.push_back(change);
    if (!std::isfinite(change)) {
      report.warnings.push_back("iterate became non-finite");
      return report;
    }
    if (change <= tol) {
      report.converged = true;
      return report;
    }
  }
  report.warnings.push_back("maximum iteration count reached");
  return report;
}

}  // namespace

VolterraSolution solve_picard(const VolterraProblem& problem, const Grid& grid, double tol,
                              std::size_t max_iter) {
  require_matching_lower(problem.lower, grid);
  require_tolerance(tol);
  Eigen::MatrixXd op = Eigen::MatrixXd::Zero(grid.size(), grid.size());
  if (problem.kernel) fill_block(op, problem.kernel, problem.lambda, grid);
  VolterraSolution out;
  out.report = iterate(op, sample(problem.free_term, grid), out.samples, tol, max_iter);
  return out;
}

Eigen::VectorXd solve_marching(const VolterraProblem& problem, const Grid& grid) {
  require_matching_lower(problem.lower, grid);
  const Index n = grid.size();
  Eigen::VectorXd phi(n);
  for (Index i = 0; i < n; ++i) {
    const double t = grid.node(i);
    double rhs = problem.free_term(t);
    double diagonal = 1.0;
    if (problem.kernel) {
      for (Index j = 0; j < i; ++j) {
        rhs += problem.lambda * grid.partial_weight(i, j) * problem.kernel(t, grid.node(j)) * phi[j];
      }
      diagonal -= problem.lambda * grid.partial_weight(i, i) * problem.kernel(t, t);
    }
    if (std::abs(diagonal) < 1e-14) {
      throw Error(Errc::degenerate_step,
                  "vanishing diagonal factor at node " + std::to_string(i));
    }
    phi[i] = rhs / diagonal;
  }
  return phi;
}

VolterraSystemSolution solve_system_picard(const VolterraSystem& system, const Grid& grid,
                                           double tol, std::size_t max_iter) {
  require_matching_lower(system.lower, grid);
  require_tolerance(tol);
  const auto n = static_cast<Index>(system.size());
  if (n == 0) throw Error(Errc::invalid_argument, "empty system");
  if (static_cast<Index>(system.kernels.size()) != n) {
    throw Error(Errc::invalid_argument, "kernel table must be n x n");
  }
  for (const auto& row : system.kernels) {
    if (static_cast<Index>(row.size()) != n) {
      throw Error(Errc::invalid_argument, "kernel table must be n x n");
    }
  }

  const Index m = grid.size();
  Eigen::MatrixXd op = Eigen::MatrixXd::Zero(n * m, n * m);
  Eigen::VectorXd q(n * m);
  for (Index i = 0; i < n; ++i) {
    q.segment(i * m, m) = sample(system.free_terms[i], grid);
    for (Index j = 0; j < n; ++j) {
      const auto& kernel = system.kernels[i][j];
      if (kernel) fill_block(op.block(i * m, j * m, m, m), kernel, system.lambda, grid);
    }
  }

  Eigen::VectorXd phi;
  VolterraSystemSolution out;
  out.report = iterate(op, q, phi, tol, max_iter);
  out.samples = phi.reshaped(m, n);
  return out;
}

Eigen::VectorXd integrate_twice(const Eigen::Ref<const Eigen::VectorXd>& phi, const Grid& grid) {
  if (phi.size() != grid.size()) {
    throw Error(Errc::invalid_argument, "sample count does not match grid size");
  }
  Eigen::VectorXd out(grid.size());
  for (Index i = 0; i < grid.size(); ++i) {
    const double t = grid.node(i);
    double sum = 0.0;
    for (Index j = 0; j < i; ++j) sum += grid.partial_weight(i, j) * (t - grid.node(j)) * phi[j];
    out[i] = sum;
  }
  return out;
}

}  // namespace econodyn
