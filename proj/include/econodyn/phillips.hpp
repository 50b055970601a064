#pragma once

// Phillips' multiplier-accelerator model. The classical form is a
// constant-coefficient second-order ODE; the corrected form has coefficients
// decaying like 1/(1 + k t). In dimensionless time tau = 1 + k t it reads
//
//   Y'' + (alpha + beta/tau) Y' + (gamma/tau) Y = 0,  tau >= 1,
//
// with alpha = m l / k, beta = 2 - n l, gamma = 2 m l / k, and is solved
// through a Volterra equation for Y''.

#include "econodyn/numcore.hpp"
#include "econodyn/volterra.hpp"

namespace econodyn::phillips {

struct Params {
  double k = 0.0;    // reaction rate, 1/time
  double n = 0.0;    // accelerator coefficient, time
  double m = 0.0;    // multiplier share, 0 < m < 1
  double l = 0.0;    // demand-adjustment rate, 1/time
  double Y1 = 0.0;   // Y at tau = 1
  double Y1p = 0.0;  // dY/dtau at tau = 1
};

void validate(const Params& p);

struct Coefficients {
  double a = 0.0;
  double b = 0.0;
};

struct Dimensionless {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

/// a = k + m l - n k l, b = m k l.
Coefficients classical_coeffs(const Params& p);

/// Solution of Y'' + a Y' + b Y = 0 with Y(0) = Y0, Y'(0) = Y0p (dimensional t).
double classical_solution(const Params& p, double Y0, double Y0p, double t);

/// a(t) = m l + (2k - n k l)/(1 + k t), b(t) = 2 m k l/(1 + k t).
Coefficients corrected_coeffs(const Params& p, double t);

Dimensionless dimensionless_coeffs(const Params& p);

/// Volterra problem for phi = Y'' on tau >= 1, lambda = 1.
VolterraProblem build_volterra(const Params& p);

struct Trajectory {
  Eigen::VectorXd tau;
  Eigen::VectorXd income;  // Y(tau)
  Eigen::VectorXd second_derivative;  // phi = Y''
  SolverReport report;
};

/// Solves the corrected model on a grid starting at tau = 1 and rebuilds
/// Y(tau) = int_1^tau (tau - eta) phi(eta) d eta + (tau - 1) Y1p + Y1.
Trajectory corrected_income(const Params& p, const Grid& grid, double tol = kDefaultTolerance,
                            std::size_t max_iter = kDefaultMaxIterations);

/// Max over interior nodes of |Y'' + (alpha + beta/tau) Y' + (gamma/tau) Y|
/// with five-point centered differences on a uniform grid. The three-point
/// stencil reproduces the trapezoidal scheme exactly and only sees roundoff.
double equation_residual(const Params& p, const Trajectory& trajectory);

}  // namespace econodyn::phillips
