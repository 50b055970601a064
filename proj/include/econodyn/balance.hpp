#pragma once

// Price-balance dynamics. The static balance x = A x + c acquires time
// dependence through a one-step lag; keeping three Taylor terms gives
//
//   x_i'' + 2 x_i' + 2 x_i = 2 sum_j a_ij(t) x_j + 2 c_i(t),   t in [0, 1].
//
// With Cauchy data this becomes a coupled Volterra system for phi_i = x_i'';
// with boundary data x(0) = p, x(1) = r it becomes a Fredholm system, which
// is stacked into one equation on [0, n]. Both carry the factored parameter
// lambda = 2 that comes from the truncation order.

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "econodyn/fredholm.hpp"
#include "econodyn/numcore.hpp"
#include "econodyn/volterra.hpp"

namespace econodyn::balance {

using CoeffFn = std::function<double(double t)>;

/// Factored parameter of the integral forms; fixed by the Taylor order.
inline constexpr double kTaylorParameter = 2.0;

struct System {
  std::vector<std::vector<CoeffFn>> A;  // a_ij(t), dimensionless shares
  std::vector<CoeffFn> c;               // c_i(t), money
  double step_length = 1.0;             // time represented by one dimensionless unit

  std::size_t size() const { return c.size(); }
  Eigen::MatrixXd A_at(double t) const;
  Eigen::VectorXd c_at(double t) const;

  static System constant(const Eigen::MatrixXd& A, const Eigen::VectorXd& c,
                         double step_length = 1.0);
};

void validate(const System& system);

struct CauchyData {
  Eigen::VectorXd p;   // x_i(0)
  Eigen::VectorXd pp;  // x_i'(0)
};

struct ForecastData {
  Eigen::VectorXd p;  // x_i(0)
  Eigen::VectorXd r;  // x_i(1)
};

struct StaticSolution {
  Eigen::VectorXd x;
  SolverReport report;
};

/// x_{s+1} = A x_s + c from x_0 = 0. Throws not-contractive unless
/// ||A||_inf < 1. report.history holds ||x_{s+1} - x_s||_inf.
StaticSolution static_solve_contractive(const Eigen::MatrixXd& A, const Eigen::VectorXd& c,
                                        double tol = 1e-12, std::size_t max_iter = 100000);

/// 1 / ||B' B||_inf with B = I - A.
double default_relaxation(const Eigen::MatrixXd& A);

/// Relaxed normal-equations iteration x_{s+1} = x_s - alpha B'(B x_s - c) for
/// B x = c, B = I - A, from x_0 = 0. Stops once ||B x - c||_inf <= tol
/// * max(1, ||c||_inf); history holds that residual.
StaticSolution static_solve_general(const Eigen::MatrixXd& A, const Eigen::VectorXd& c,
                                    double tol = 1e-12, std::size_t max_iter = 1000000,
                                    std::optional<double> relaxation = std::nullopt);

struct Trajectory {
  Eigen::VectorXd t;
  Eigen::MatrixXd x;    // nodes x participants
  Eigen::MatrixXd phi;  // x'' at the nodes
  SolverReport report;
};

/// Coupled Volterra system for phi_i = x_i'' on [0, 1] with lambda = 2:
/// k_ij = a_ij(t)(t - h) for j != i, k_ii = (a_ii(t) - 1)(t - h) - 1, and
/// q_i = 2 [sum_j a_ij(t)(p'_j t + p_j) + c_i(t) - p'_i(1 + t) - p_i].
VolterraSystem build_cauchy_volterra(const System& system, const CauchyData& data);

Trajectory simulate_cauchy(const System& system, const CauchyData& data, const Grid& grid,
                           double tol = kDefaultTolerance,
                           std::size_t max_iter = kDefaultMaxIterations);

/// Green kernel of d^2/dt^2 with x(0) = x(1) = 0 on [0,1]^2, and its
/// t-derivative. The derivative jumps by -1 across h = t.
double green(double t, double h);
double green_slope(double t, double h);

/// Stacked Fredholm problem on [0, n], lambda = 2:
/// k_ij = a_ij(t) G(t, h) for j != i, k_ii = (a_ii(t) - 1) G(t, h) - H(t, h),
/// q_i = 2 [sum_j a_ij(t)((r_j - p_j) t + p_j) + c_i(t) - (r_i - p_i)(1 + t) - p_i].
StackedProblem build_forecast_fredholm(const System& system, const ForecastData& data);

/// Boundary-value forecast: x_i(0) = p_i and x_i(1) = r_i hold exactly.
/// Throws characteristic-lambda when lambda = 2 is numerically characteristic.
Trajectory forecast(const System& system, const ForecastData& data, const Grid& unit_grid);

/// Perturbation of the base forecast data; empty dc entries mean zero.
struct Variant {
  std::vector<CoeffFn> dc;
  Eigen::VectorXd dr;
};

/// Solves every variant through one shared resolvent of the forecast kernel.
std::vector<Trajectory> variational_sweep(const System& system, const ForecastData& base,
                                          const std::vector<Variant>& variants,
                                          const Grid& unit_grid);

struct CharacteristicGap {
  std::complex<double> number;
  double gap = 0.0;  // |number - 2| / 2
};

struct CriticalityReport {
  std::vector<CharacteristicGap> entries;  // sorted by gap
  double min_gap = 0.0;
  bool warning = false;                    // min_gap < 0.05
  std::vector<std::string> messages;
};

inline constexpr double kCriticalGap = 0.05;

CriticalityReport criticality_check(const System& system, const Grid& unit_grid, std::size_t count);

/// Max over interior nodes and participants of the balance ODE residual,
/// with five-point centered differences on a uniform grid.
double equation_residual(const System& system, const Trajectory& trajectory);

}  // namespace econodyn::balance
