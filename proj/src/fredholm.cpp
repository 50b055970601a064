#include "econodyn/fredholm.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace econodyn {
namespace {

constexpr double kMaxCondition = 1e10;

// Largest condition number still treated as solvable: 1e10, lowered to h^-2
// once trapezoidal characteristic numbers carry an O(h^2) error of their own.
double condition_limit(const NystromDiscretization& disc) {
  const double h = disc.weights.size() ? disc.weights.maxCoeff() : 1.0;
  return std::min(kMaxCondition, 1.0 / (h * h));
}

// Kernel values at every (node, node) pair of `grid`.
void fill_kernel_block(Eigen::Ref<Eigen::MatrixXd> block, const Kernel& kernel, const Grid& grid,
                       bool diagonal_block) {
  const Index n = grid.size();
  for (Index a = 0; a < n; ++a) {
    const double t = grid.node(a);
    for (Index b = 0; b < n; ++b) {
      if (diagonal_block && a == b && kernel.jumps_at_diagonal()) {
        const double left = grid.left_half(a);
        const double right = grid.right_half(a);
        block(a, b) = (left * kernel.below(t, t) + right * kernel.upper_limit(t)) / (left + right);
      } else {
        block(a, b) = kernel(t, grid.node(b));
      }
    }
  }
}

Eigen::MatrixXd discrete_operator(const NystromDiscretization& disc, double lambda) {
  Eigen::MatrixXd op = -lambda * disc.weighted_kernel();
  op.diagonal().array() += 1.0;
  return op;
}

Eigen::PartialPivLU<Eigen::MatrixXd> factor_checked(const Eigen::MatrixXd& op, double lambda,
                                                    double limit) {
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(op);
  const double rcond = lu.rcond();
  if (!(rcond * limit >= 1.0)) {
    throw Error(Errc::characteristic_lambda,
                "lambda = " + std::to_string(lambda) +
                    " is numerically characteristic (condition estimate " +
                    std::to_string(rcond > 0 ? 1.0 / rcond : INFINITY) + ")");
  }
  return lu;
}

}  // namespace

NystromDiscretization discretize(const Kernel& kernel, const Grid& grid) {
  NystromDiscretization disc;
  disc.nodes = grid.nodes();
  disc.weights = grid.weights();
  disc.kernel = Eigen::MatrixXd::Zero(grid.size(), grid.size());
  if (kernel) fill_kernel_block(disc.kernel, kernel, grid, true);
  return disc;
}

FredholmSolution nystrom_solve(const NystromDiscretization& disc, double lambda,
                               const Eigen::Ref<const Eigen::VectorXd>& free_values) {
  if (free_values.size() != disc.size()) {
    throw Error(Errc::invalid_argument, "free term sample count does not match discretization");
  }
  const Eigen::MatrixXd op = discrete_operator(disc, lambda);
  const auto lu = factor_checked(op, lambda, condition_limit(disc));

  FredholmSolution out;
  out.samples = lu.solve(free_values);
  const double scale = std::max(free_values.lpNorm<Eigen::Infinity>(), 1e-300);
  const double residual = (op * out.samples - free_values).lpNorm<Eigen::Infinity>();
  out.report.iterations = 1;
  out.report.final_residual = free_values.isZero(0.0) ? residual : residual / scale;
  out.report.converged = true;
  out.report.history.push_back(out.report.final_residual);
  if (out.report.final_residual > 1e-10) {
    out.report.warnings.push_back("discrete residual above 1e-10 relative");
  }
  return out;
}

FredholmSolution nystrom_solve(const FredholmProblem& problem, const Grid& grid) {
  if (!(problem.upper > problem.lower)) {
    throw Error(Errc::invalid_argument, "Fredholm interval must have upper > lower");
  }
  if (std::abs(grid.lower() - problem.lower) > 1e-12 * std::max(1.0, std::abs(problem.lower)) ||
      std::abs(grid.upper() - problem.upper) > 1e-12 * std::max(1.0, std::abs(problem.upper))) {
    throw Error(Errc::invalid_argument, "grid must span the problem interval");
  }
  const auto disc = discretize(problem.kernel, grid);
  Eigen::VectorXd q(grid.size());
  for (Index i = 0; i < grid.size(); ++i) q[i] = problem.free_term(grid.node(i));
  return nystrom_solve(disc, problem.lambda, q);
}

Eigen::VectorXcd characteristic_numbers(const NystromDiscretization& disc, std::size_t count) {
  if (count < 1) throw Error(Errc::invalid_argument, "count must be at least 1");
  const Eigen::MatrixXd weighted = disc.weighted_kernel();
  const Eigen::VectorXcd mu = eigenvalues(weighted);
  const double scale = mu.size() ? mu.cwiseAbs().maxCoeff() : 0.0;
  if (!(scale > 0.0)) return {};

  std::vector<std::complex<double>> numbers;
  for (Index i = 0; i < mu.size(); ++i) {
    if (std::abs(mu[i]) > 1e-12 * scale) numbers.push_back(1.0 / mu[i]);
  }
  std::sort(numbers.begin(), numbers.end(), [](const auto& x, const auto& y) {
    const double ax = std::abs(x), ay = std::abs(y);
    if (ax != ay) return ax < ay;
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() > y.imag();
  });
  numbers.resize(std::min(numbers.size(), count));
  return Eigen::Map<Eigen::VectorXcd>(numbers.data(), static_cast<Index>(numbers.size()));
}

Eigen::VectorXcd characteristic_numbers(const Kernel& kernel, const Grid& grid, std::size_t count) {
  return characteristic_numbers(discretize(kernel, grid), count);
}

Eigen::VectorXd DiscreteResolvent::apply(const Eigen::Ref<const Eigen::VectorXd>& free_values) const {
  if (free_values.size() != table.cols()) {
    throw Error(Errc::invalid_argument, "free term sample count does not match resolvent");
  }
  return free_values + lambda * (table * weights.cwiseProduct(free_values));
}

DiscreteResolvent build_resolvent(const NystromDiscretization& disc, double lambda) {
  const auto lu = factor_checked(discrete_operator(disc, lambda), lambda, condition_limit(disc));
  DiscreteResolvent r;
  r.nodes = disc.nodes;
  r.weights = disc.weights;
  r.lambda = lambda;
  r.table = lu.solve(disc.kernel);
  return r;
}

DiscreteResolvent build_resolvent(const Kernel& kernel, double lambda, const Grid& grid) {
  return build_resolvent(discretize(kernel, grid), lambda);
}

NeumannResolvent neumann_resolvent(const NystromDiscretization& disc, double lambda, double tol,
                                   std::size_t max_terms) {
  const Eigen::MatrixXd step = lambda * disc.weighted_kernel();
  NeumannResolvent out;
  out.resolvent.nodes = disc.nodes;
  out.resolvent.weights = disc.weights;
  out.resolvent.lambda = lambda;
  out.resolvent.table = disc.kernel;

  Eigen::MatrixXd term = disc.kernel;
  for (std::size_t m = 1; m <= max_terms; ++m) {
    term = step * term;
    out.resolvent.table += term;
    const double size = term.lpNorm<Eigen::Infinity>();
    const double total = out.resolvent.table.lpNorm<Eigen::Infinity>();
    out.report.iterations = m;
    out.report.final_residual = total > 0 ? size / total : size;
    out.report.history.push_back(out.report.final_residual);
    if (!std::isfinite(total)) break;
    if (out.report.final_residual <= tol) {
      out.report.converged = true;
      return out;
    }
  }
  out.report.warnings.push_back("Neumann series did not settle; lambda K W is not contractive");
  return out;
}

std::size_t StackedProblem::block_of(double t) const {
  if (!(t > 0.0)) return 0;
  const auto i = static_cast<std::size_t>(std::floor(t));
  return std::min(i, blocks - 1);
}

StackedProblem stack_system(std::vector<std::vector<Kernel>> blocks,
                            std::vector<ScalarFn> free_terms, double lambda) {
  const std::size_t n = free_terms.size();
  if (n == 0) throw Error(Errc::invalid_argument, "empty system");
  if (blocks.size() != n ||
      std::any_of(blocks.begin(), blocks.end(), [n](const auto& row) { return row.size() != n; })) {
    throw Error(Errc::invalid_argument, "kernel table must be n x n");
  }

  StackedProblem stacked;
  stacked.blocks = n;
  stacked.block_kernels = std::move(blocks);
  stacked.block_free_terms = std::move(free_terms);

  // The closures share the tables through a snapshot so the returned
  // FredholmProblem stays valid independently of `stacked`'s lifetime.
  auto kernels = std::make_shared<const std::vector<std::vector<Kernel>>>(stacked.block_kernels);
  auto terms = std::make_shared<const std::vector<ScalarFn>>(stacked.block_free_terms);
  auto block = [n](double x) {
    if (!(x > 0.0)) return std::size_t{0};
    return std::min(static_cast<std::size_t>(std::floor(x)), n - 1);
  };

  stacked.problem.lower = 0.0;
  stacked.problem.upper = static_cast<double>(n);
  stacked.problem.lambda = lambda;
  stacked.problem.kernel = Kernel([kernels, block](double t, double h) {
    const std::size_t i = block(t), j = block(h);
    const auto& k = (*kernels)[i][j];
    return k ? k(t - static_cast<double>(i), h - static_cast<double>(j)) : 0.0;
  });
  stacked.problem.free_term = [terms, block](double t) {
    const std::size_t i = block(t);
    return (*terms)[i](t - static_cast<double>(i));
  };
  return stacked;
}

NystromDiscretization discretize(const StackedProblem& stacked, const Grid& unit_grid) {
  const auto n = static_cast<Index>(stacked.blocks);
  const Index m = unit_grid.size();
  NystromDiscretization disc;
  disc.nodes.resize(n * m);
  disc.weights.resize(n * m);
  disc.kernel = Eigen::MatrixXd::Zero(n * m, n * m);
  for (Index i = 0; i < n; ++i) {
    disc.nodes.segment(i * m, m) = unit_grid.nodes().array() + static_cast<double>(i);
    disc.weights.segment(i * m, m) = unit_grid.weights();
    for (Index j = 0; j < n; ++j) {
      const auto& k = stacked.block_kernels[i][j];
      if (k) fill_kernel_block(disc.kernel.block(i * m, j * m, m, m), k, unit_grid, i == j);
    }
  }
  return disc;
}

Eigen::VectorXd sample_free_term(const StackedProblem& stacked, const Grid& unit_grid) {
  const Index m = unit_grid.size();
  Eigen::VectorXd q(static_cast<Index>(stacked.blocks) * m);
  for (std::size_t i = 0; i < stacked.blocks; ++i) {
    for (Index a = 0; a < m; ++a) {
      q[static_cast<Index>(i) * m + a] = stacked.block_free_terms[i](unit_grid.node(a));
    }
  }
  return q;
}

FredholmSolution nystrom_solve(const StackedProblem& stacked, const Grid& unit_grid) {
  return nystrom_solve(discretize(stacked, unit_grid), stacked.problem.lambda,
                       sample_free_term(stacked, unit_grid));
}

Eigen::MatrixXd unstack(const Eigen::Ref<const Eigen::VectorXd>& samples, std::size_t blocks) {
  const auto n = static_cast<Index>(blocks);
  if (n == 0 || samples.size() % n != 0) {
    throw Error(Errc::invalid_argument, "sample count is not a multiple of the block count");
  }
  return samples.reshaped(samples.size() / n, n);
}

}  // namespace econodyn
