#pragma once

// Harrod's growth model in three renditions: the classical exponential
// solution, the corrected rational-growth solution with a finite forecast
// horizon, and the discrete geometric-progression solution.

#include <cstddef>
#include <string>
#include <vector>

namespace econodyn::harrod {

struct Params {
  double m = 0.0;   // share of income saved, 0 < m <= 1
  double n = 0.0;   // capital/income ratio, n > 0
  double Y0 = 0.0;  // initial income flow intensity
  double K0 = 0.0;  // initial capital

  double growth_rate() const { return m / n; }  // s = a = m / n
};

/// Throws invalid-parameters naming the first violated invariant.
void validate(const Params& p);

/// Y0 * exp(m t / n).
double income_exponential(const Params& p, double t);

/// Y0 / (1 - s t)^2 with s = m / n. Throws horizon-exceeded for t >= n / m.
double income_corrected(const Params& p, double t);

/// n / m. Throws undefined-horizon when m = 0.
double forecast_horizon(const Params& p);

/// Y_c0 (1 - a^(steps+1)) / (1 - a), Y_c0 = K0 / n.
double income_discrete(const Params& p, std::size_t steps);

/// Step-by-step capital recursion K_{i+1} = K0 + a K_i, reported as
/// Y_ci = K_i / n for i = 0..steps.
std::vector<double> income_discrete_recursion(const Params& p, std::size_t steps);

/// Ratio of the exponential discrete solution Y_c0 e^(a steps) to the
/// geometric one.
double exponential_discrepancy(const Params& p, std::size_t steps);

/// Warnings about inputs the discrete model reconciles (Y0 versus K0 / n).
std::vector<std::string> reconcile_warnings(const Params& p);

}  // namespace econodyn::harrod
