#include "econodyn/phillips.hpp"

#include <algorithm>
#include <cmath>

namespace econodyn::phillips {
namespace {

void require(bool ok, const char* field, const char* rule) {
  if (!ok) throw Error(Errc::invalid_parameters, std::string(field) + ": " + rule);
}

}  // namespace

void validate(const Params& p) {
  require(std::isfinite(p.k) && p.k > 0.0, "k", "must be positive");
  require(std::isfinite(p.n) && p.n > 0.0, "n", "must be positive");
  require(std::isfinite(p.m) && p.m > 0.0 && p.m < 1.0, "m", "must satisfy 0 < m < 1");
  require(std::isfinite(p.l) && p.l > 0.0, "l", "must be positive");
  require(std::isfinite(p.Y1), "Y1", "must be finite");
  require(std::isfinite(p.Y1p), "Y1p", "must be finite");
}

Coefficients classical_coeffs(const Params& p) {
  return {p.k + p.m * p.l - p.n * p.k * p.l, p.m * p.k * p.l};
}

double classical_solution(const Params& p, double Y0, double Y0p, double t) {
  if (!(t >= 0.0)) throw Error(Errc::invalid_argument, "time must be non-negative");
  const auto [a, b] = classical_coeffs(p);
  const double disc = a * a - 4.0 * b;
  const double scale = std::max(a * a, 4.0 * std::abs(b));
  const double sigma = -a / 2.0;

  if (std::abs(disc) <= 1e-12 * scale) {
    // repeated root
    return (Y0 + (Y0p - sigma * Y0) * t) * std::exp(sigma * t);
  }
  if (disc > 0.0) {
    const double root = std::sqrt(disc) / 2.0;
    const double r1 = sigma + root, r2 = sigma - root;
    const double c1 = (Y0p - r2 * Y0) / (r1 - r2);
    const double c2 = Y0 - c1;
    return c1 * std::exp(r1 * t) + c2 * std::exp(r2 * t);
  }
  const double omega = std::sqrt(-disc) / 2.0;
  return std::exp(sigma * t) *
         (Y0 * std::cos(omega * t) + (Y0p - sigma * Y0) / omega * std::sin(omega * t));
}

Coefficients corrected_coeffs(const Params& p, double t) {
  if (!(t >= 0.0)) throw Error(Errc::invalid_argument, "time must be non-negative");
  const double decay = 1.0 + p.k * t;
  return {p.m * p.l + (2.0 * p.k - p.n * p.k * p.l) / decay, 2.0 * p.m * p.k * p.l / decay};
}

Dimensionless dimensionless_coeffs(const Params& p) {
  return {p.m * p.l / p.k, 2.0 - p.n * p.l, 2.0 * p.m * p.l / p.k};
}

VolterraProblem build_volterra(const Params& p) {
  const auto [alpha, beta, gamma] = dimensionless_coeffs(p);
  const double y1 = p.Y1, y1p = p.Y1p;
  VolterraProblem problem;
  problem.lower = 1.0;
  problem.lambda = 1.0;
  problem.kernel = [=](double tau, double eta) {
    return -(alpha + beta / tau + gamma * (tau - eta) / tau);
  };
  problem.free_term = [=](double tau) {
    return -(alpha + beta / tau) * y1p - gamma / tau * ((tau - 1.0) * y1p + y1);
  };
  return problem;
}

Trajectory corrected_income(const Params& p, const Grid& grid, double tol, std::size_t max_iter) {
  validate(p);
  if (std::abs(grid.lower() - 1.0) > 1e-12) {
    throw Error(Errc::invalid_argument, "grid must start at tau = 1");
  }
  auto solution = solve_picard(build_volterra(p), grid, tol, max_iter);
  Trajectory out;
  out.tau = grid.nodes();
  out.income = integrate_twice(solution.samples, grid).array() +
               (out.tau.array() - 1.0) * p.Y1p + p.Y1;
  out.income[0] = p.Y1;
  out.second_derivative = std::move(solution.samples);
  out.report = std::move(solution.report);
  return out;
}

double equation_residual(const Params& p, const Trajectory& trajectory) {
  const auto [alpha, beta, gamma] = dimensionless_coeffs(p);
  const auto& tau = trajectory.tau;
  const auto& y = trajectory.income;
  double worst = 0.0;
  for (Index i = 2; i + 2 < tau.size(); ++i) {
    const double h = tau[i + 1] - tau[i];
    const double d2 =
        (-y[i + 2] + 16.0 * y[i + 1] - 30.0 * y[i] + 16.0 * y[i - 1] - y[i - 2]) / (12.0 * h * h);
    const double d1 = (-y[i + 2] + 8.0 * y[i + 1] - 8.0 * y[i - 1] + y[i - 2]) / (12.0 * h);
    worst = std::max(worst, std::abs(d2 + (alpha + beta / tau[i]) * d1 + gamma / tau[i] * y[i]));
  }
  return worst;
}

}  // namespace econodyn::phillips
