#include "econodyn/balance.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace econodyn::balance {
namespace {

using SharedSystem = std::shared_ptr<const System>;

void require_size(const Eigen::VectorXd& v, std::size_t n, const char* name) {
  if (static_cast<std::size_t>(v.size()) != n) {
    throw Error(Errc::invalid_argument, std::string(name) + " must have one entry per participant");
  }
}

void require_square(const Eigen::MatrixXd& A, const Eigen::VectorXd& c) {
  if (A.rows() != A.cols() || A.rows() != c.size()) {
    throw Error(Errc::invalid_argument, "A must be n x n and c of length n");
  }
}

double coeff(const CoeffFn& f, double t) { return f ? f(t) : 0.0; }

// Free terms of the forecast system, before the factor lambda = 2.
std::vector<ScalarFn> forecast_free_terms(const SharedSystem& sys, const Eigen::VectorXd& p,
                                          const Eigen::VectorXd& r,
                                          const std::vector<CoeffFn>& dc = {}) {
  const std::size_t n = sys->size();
  std::vector<ScalarFn> terms(n);
  for (std::size_t i = 0; i < n; ++i) {
    CoeffFn extra = i < dc.size() ? dc[i] : CoeffFn{};
    terms[i] = [sys, p, r, i, extra](double t) {
      double sum = 0.0;
      for (std::size_t j = 0; j < sys->size(); ++j) {
        const auto jj = static_cast<Index>(j);
        sum += coeff(sys->A[i][j], t) * ((r[jj] - p[jj]) * t + p[jj]);
      }
      const auto ii = static_cast<Index>(i);
      sum += coeff(sys->c[i], t) + coeff(extra, t) - (r[ii] - p[ii]) * (1.0 + t) - p[ii];
      return kTaylorParameter * sum;
    };
  }
  return terms;
}

std::vector<std::vector<Kernel>> forecast_kernels(const SharedSystem& sys) {
  const std::size_t n = sys->size();
  std::vector<std::vector<Kernel>> kernels(n, std::vector<Kernel>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) {
        kernels[i][j] = Kernel([sys, i, j](double t, double h) {
          return coeff(sys->A[i][j], t) * green(t, h);
        });
      } else {
        kernels[i][i] = Kernel(
            [sys, i](double t, double h) {
              return (coeff(sys->A[i][i], t) - 1.0) * h * (t - 1.0) - h;
            },
            [sys, i](double t, double h) {
              return (coeff(sys->A[i][i], t) - 1.0) * t * (h - 1.0) - (h - 1.0);
            });
      }
    }
  }
  return kernels;
}

Trajectory reconstruct_forecast(const Eigen::VectorXd& samples, const ForecastData& data,
                                const Grid& grid, std::size_t n) {
  const Eigen::MatrixXd phi = unstack(samples, n);
  const Index m = grid.size();
  Trajectory out;
  out.t = grid.nodes();
  out.phi = phi;
  out.x.resize(m, static_cast<Index>(n));
  Eigen::MatrixXd weighted_green(m, m);
  for (Index a = 0; a < m; ++a) {
    for (Index b = 0; b < m; ++b) {
      weighted_green(a, b) = grid.weight(b) * green(grid.node(a), grid.node(b));
    }
  }
  const Eigen::MatrixXd integral = weighted_green * phi;
  for (Index a = 0; a < m; ++a) {
    const double t = grid.node(a);
    for (Index i = 0; i < static_cast<Index>(n); ++i) {
      out.x(a, i) = data.p[i] * (1.0 - t) + data.r[i] * t + integral(a, i);
    }
  }
  return out;
}

void require_unit_grid(const Grid& grid) {
  if (std::abs(grid.lower()) > 1e-15 || std::abs(grid.upper() - 1.0) > 1e-15) {
    throw Error(Errc::invalid_argument, "balance dynamics use a grid on [0, 1]");
  }
}

}  // namespace

Eigen::MatrixXd System::A_at(double t) const {
  const auto n = static_cast<Index>(size());
  Eigen::MatrixXd out(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) out(i, j) = coeff(A[i][j], t);
  return out;
}

Eigen::VectorXd System::c_at(double t) const {
  const auto n = static_cast<Index>(size());
  Eigen::VectorXd out(n);
  for (Index i = 0; i < n; ++i) out[i] = coeff(c[i], t);
  return out;
}

System System::constant(const Eigen::MatrixXd& A, const Eigen::VectorXd& c, double step_length) {
  require_square(A, c);
  System sys;
  sys.step_length = step_length;
  const Index n = A.rows();
  sys.A.assign(n, std::vector<CoeffFn>(n));
  sys.c.resize(n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const double value = A(i, j);
      sys.A[i][j] = [value](double) { return value; };
    }
    const double value = c[i];
    sys.c[i] = [value](double) { return value; };
  }
  return sys;
}

void validate(const System& system) {
  const std::size_t n = system.size();
  if (n == 0) throw Error(Errc::invalid_argument, "system needs at least one participant");
  if (system.A.size() != n ||
      std::any_of(system.A.begin(), system.A.end(), [n](const auto& row) { return row.size() != n; })) {
    throw Error(Errc::invalid_argument, "A must be n x n");
  }
  if (!(system.step_length > 0.0) || !std::isfinite(system.step_length)) {
    throw Error(Errc::invalid_argument, "step_length must be positive");
  }
}

StaticSolution static_solve_contractive(const Eigen::MatrixXd& A, const Eigen::VectorXd& c,
                                        double tol, std::size_t max_iter) {
  require_square(A, c);
  const double norm = inf_norm(A);
  if (!(norm < 1.0)) {
    throw Error(Errc::not_contractive, "||A||_inf = " + std::to_string(norm) + " is not below 1");
  }
  StaticSolution out;
  out.x = Eigen::VectorXd::Zero(c.size());
  for (std::size_t s = 1; s <= max_iter; ++s) {
    Eigen::VectorXd next = A * out.x + c;
    const double change = (next - out.x).lpNorm<Eigen::Infinity>();
    out.x.swap(next);
    out.report.iterations = s;
    out.report.final_residual = change;
    out.report.history.push_back(change);
    if (change <= tol) {
      out.report.converged = true;
      return out;
    }
  }
  out.report.warnings.push_back("maximum iteration count reached");
  return out;
}

double default_relaxation(const Eigen::MatrixXd& A) {
  const Eigen::MatrixXd B = Eigen::MatrixXd::Identity(A.rows(), A.cols()) - A;
  const double norm = inf_norm(B.transpose() * B);
  if (!(norm > 0.0)) throw Error(Errc::invalid_argument, "B'B vanishes");
  return 1.0 / norm;
}

StaticSolution static_solve_general(const Eigen::MatrixXd& A, const Eigen::VectorXd& c, double tol,
                                    std::size_t max_iter, std::optional<double> relaxation) {
  require_square(A, c);
  const Eigen::MatrixXd B = Eigen::MatrixXd::Identity(A.rows(), A.cols()) - A;
  const double alpha = relaxation.value_or(default_relaxation(A));
  const double limit = 2.0 / (B.transpose() * B).operatorNorm();
  if (!(alpha > 0.0) || !(alpha < limit)) {
    throw Error(Errc::invalid_argument, "relaxation must lie in (0, 2/||B'B||)");
  }
  const Eigen::MatrixXd step = Eigen::MatrixXd::Identity(A.rows(), A.cols()) -
                               alpha * B.transpose() * B;
  const Eigen::VectorXd shift = alpha * B.transpose() * c;
  const double scale = std::max(1.0, c.lpNorm<Eigen::Infinity>());

  StaticSolution out;
  out.x = Eigen::VectorXd::Zero(c.size());
  for (std::size_t s = 1; s <= max_iter; ++s) {
    out.x = step * out.x + shift;
    const double residual = (B * out.x - c).lpNorm<Eigen::Infinity>();
    out.report.iterations = s;
    out.report.final_residual = residual;
    out.report.history.push_back(residual);
    if (residual <= tol * scale) {
      out.report.converged = true;
      return out;
    }
  }
  out.report.warnings.push_back("maximum iteration count reached; B may be singular");
  return out;
}

VolterraSystem build_cauchy_volterra(const System& system, const CauchyData& data) {
  validate(system);
  const std::size_t n = system.size();
  require_size(data.p, n, "p");
  require_size(data.pp, n, "pp");
  auto sys = std::make_shared<const System>(system);

  VolterraSystem out;
  out.lower = 0.0;
  out.lambda = kTaylorParameter;
  out.kernels.assign(n, std::vector<KernelFn>(n));
  out.free_terms.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) {
        out.kernels[i][j] = [sys, i, j](double t, double h) {
          return coeff(sys->A[i][j], t) * (t - h);
        };
      } else {
        out.kernels[i][i] = [sys, i](double t, double h) {
          return (coeff(sys->A[i][i], t) - 1.0) * (t - h) - 1.0;
        };
      }
    }
    const Eigen::VectorXd p = data.p, pp = data.pp;
    out.free_terms[i] = [sys, p, pp, i](double t) {
      double sum = 0.0;
      for (std::size_t j = 0; j < sys->size(); ++j) {
        const auto jj = static_cast<Index>(j);
        sum += coeff(sys->A[i][j], t) * (pp[jj] * t + p[jj]);
      }
      const auto ii = static_cast<Index>(i);
      sum += coeff(sys->c[i], t) - pp[ii] * (1.0 + t) - p[ii];
      return kTaylorParameter * sum;
    };
  }
  return out;
}

Trajectory simulate_cauchy(const System& system, const CauchyData& data, const Grid& grid,
                           double tol, std::size_t max_iter) {
  require_unit_grid(grid);
  auto solution = solve_system_picard(build_cauchy_volterra(system, data), grid, tol, max_iter);
  const auto n = static_cast<Index>(system.size());
  Trajectory out;
  out.t = grid.nodes();
  out.x.resize(grid.size(), n);
  for (Index i = 0; i < n; ++i) {
    out.x.col(i) = integrate_twice(solution.samples.col(i), grid).array() +
                   data.pp[i] * out.t.array() + data.p[i];
    out.x(0, i) = data.p[i];
  }
  out.phi = std::move(solution.samples);
  out.report = std::move(solution.report);
  return out;
}

double green(double t, double h) { return h <= t ? h * (t - 1.0) : t * (h - 1.0); }

double green_slope(double t, double h) { return h <= t ? h : h - 1.0; }

StackedProblem build_forecast_fredholm(const System& system, const ForecastData& data) {
  validate(system);
  const std::size_t n = system.size();
  require_size(data.p, n, "p");
  require_size(data.r, n, "r");
  auto sys = std::make_shared<const System>(system);
  return stack_system(forecast_kernels(sys), forecast_free_terms(sys, data.p, data.r),
                      kTaylorParameter);
}

Trajectory forecast(const System& system, const ForecastData& data, const Grid& unit_grid) {
  require_unit_grid(unit_grid);
  const auto stacked = build_forecast_fredholm(system, data);
  auto solution = nystrom_solve(stacked, unit_grid);
  auto out = reconstruct_forecast(solution.samples, data, unit_grid, system.size());
  out.report = std::move(solution.report);
  return out;
}

std::vector<Trajectory> variational_sweep(const System& system, const ForecastData& base,
                                          const std::vector<Variant>& variants,
                                          const Grid& unit_grid) {
  require_unit_grid(unit_grid);
  if (variants.empty()) return {};
  const auto stacked = build_forecast_fredholm(system, base);
  const auto resolvent = build_resolvent(discretize(stacked, unit_grid), kTaylorParameter);

  const std::size_t n = system.size();
  auto sys = std::make_shared<const System>(system);
  std::vector<Trajectory> out;
  out.reserve(variants.size());
  for (const auto& variant : variants) {
    ForecastData data = base;
    if (variant.dr.size() != 0) {
      require_size(variant.dr, n, "variant r perturbation");
      data.r += variant.dr;
    }
    if (variant.dc.size() > n) {
      throw Error(Errc::invalid_argument, "variant c perturbation has too many entries");
    }
    StackedProblem perturbed = stacked;
    perturbed.block_free_terms = forecast_free_terms(sys, data.p, data.r, variant.dc);
    const Eigen::VectorXd q = sample_free_term(perturbed, unit_grid);
    auto trajectory = reconstruct_forecast(resolvent.apply(q), data, unit_grid, n);
    trajectory.report.iterations = 1;
    trajectory.report.converged = true;
    out.push_back(std::move(trajectory));
  }
  return out;
}

CriticalityReport criticality_check(const System& system, const Grid& unit_grid,
                                    std::size_t count) {
  validate(system);
  require_unit_grid(unit_grid);
  if (count < 1) throw Error(Errc::invalid_argument, "count must be at least 1");
  auto sys = std::make_shared<const System>(system);
  const std::size_t n = system.size();
  std::vector<ScalarFn> zero_terms(n, [](double) { return 0.0; });
  const auto stacked = stack_system(forecast_kernels(sys), zero_terms, kTaylorParameter);
  const auto disc = discretize(stacked, unit_grid);
  const auto numbers = characteristic_numbers(disc, static_cast<std::size_t>(disc.size()));

  CriticalityReport report;
  for (Index i = 0; i < numbers.size(); ++i) {
    report.entries.push_back({numbers[i], std::abs(numbers[i] - kTaylorParameter) / kTaylorParameter});
  }
  std::stable_sort(report.entries.begin(), report.entries.end(),
                   [](const auto& x, const auto& y) { return x.gap < y.gap; });
  if (report.entries.size() > count) report.entries.resize(count);
  if (report.entries.size() < count) {
    report.messages.push_back("only " + std::to_string(report.entries.size()) +
                              " characteristic numbers exist on this grid");
  }
  report.min_gap = report.entries.empty() ? INFINITY : report.entries.front().gap;
  report.warning = report.min_gap < kCriticalGap;
  if (report.warning) {
    report.messages.push_back("a characteristic number lies within 5% of lambda = 2");
  }
  return report;
}

double equation_residual(const System& system, const Trajectory& trajectory) {
  const auto& t = trajectory.t;
  const auto& x = trajectory.x;
  double worst = 0.0;
  for (Index a = 2; a + 2 < t.size(); ++a) {
    const double h = t[a + 1] - t[a];
    const Eigen::MatrixXd A = system.A_at(t[a]);
    const Eigen::VectorXd c = system.c_at(t[a]);
    const Eigen::VectorXd here = x.row(a).transpose();
    const Eigen::VectorXd coupling = A * here + c;
    for (Index i = 0; i < x.cols(); ++i) {
      const double d2 = (-x(a + 2, i) + 16.0 * x(a + 1, i) - 30.0 * x(a, i) +
                         16.0 * x(a - 1, i) - x(a - 2, i)) /
                        (12.0 * h * h);
      const double d1 = (-x(a + 2, i) + 8.0 * x(a + 1, i) - 8.0 * x(a - 1, i) + x(a - 2, i)) /
                        (12.0 * h);
      worst = std::max(worst, std::abs(d2 + 2.0 * d1 + 2.0 * x(a, i) - 2.0 * coupling[i]));
    }
  }
  return worst;
}

}  // namespace econodyn::balance
