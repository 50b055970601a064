#include "econodyn/harrod.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "econodyn/error.hpp"

namespace econodyn::harrod {
namespace {

void require(bool ok, const char* field, const char* rule) {
  if (!ok) throw Error(Errc::invalid_parameters, std::string(field) + ": " + rule);
}

void require_geometric(const Params& p) {
  require(p.n > 0.0, "n", "must be positive");
  const double a = p.growth_rate();
  if (!(a < 1.0)) {
    throw Error(Errc::invalid_parameters, "a = m/n must be below 1 for the discrete model");
  }
}

}  // namespace

void validate(const Params& p) {
  require(std::isfinite(p.m) && p.m > 0.0 && p.m <= 1.0, "m", "must satisfy 0 < m <= 1");
  require(std::isfinite(p.n) && p.n > 0.0, "n", "must be positive");
  require(std::isfinite(p.Y0) && p.Y0 > 0.0, "Y0", "must be positive");
  require(std::isfinite(p.K0) && p.K0 >= 0.0, "K0", "must be non-negative");
  require(p.growth_rate() < 1.0, "n", "must exceed m (a = m/n < 1)");
}

double income_exponential(const Params& p, double t) {
  if (!(t >= 0.0)) throw Error(Errc::invalid_argument, "time must be non-negative");
  return p.Y0 * std::exp(p.m * t / p.n);
}

double income_corrected(const Params& p, double t) {
  if (!(t >= 0.0)) throw Error(Errc::invalid_argument, "time must be non-negative");
  if (p.m > 0.0 && t >= forecast_horizon(p)) {
    std::ostringstream msg;
    msg << "t = " << t << " is at or beyond the forecast horizon n/m = " << forecast_horizon(p);
    throw Error(Errc::horizon_exceeded, msg.str());
  }
  const double gap = 1.0 - p.growth_rate() * t;
  return p.Y0 / (gap * gap);
}

double forecast_horizon(const Params& p) {
  if (p.m == 0.0) throw Error(Errc::undefined_horizon, "m = 0 gives no finite horizon");
  return p.n / p.m;
}

double income_discrete(const Params& p, std::size_t steps) {
  require_geometric(p);
  const double a = p.growth_rate();
  const double y0 = p.K0 / p.n;
  return y0 * (1.0 - std::pow(a, static_cast<double>(steps) + 1.0)) / (1.0 - a);
}

std::vector<double> income_discrete_recursion(const Params& p, std::size_t steps) {
  require_geometric(p);
  const double a = p.growth_rate();
  std::vector<double> incomes;
  incomes.reserve(steps + 1);
  double capital = p.K0;
  for (std::size_t i = 0; i <= steps; ++i) {
    incomes.push_back(capital / p.n);
    capital = p.K0 + a * capital;
  }
  return incomes;
}

double exponential_discrepancy(const Params& p, std::size_t steps) {
  require_geometric(p);
  const double a = p.growth_rate();
  const double s = static_cast<double>(steps);
  return std::exp(a * s) * (1.0 - a) / (1.0 - std::pow(a, s + 1.0));
}

std::vector<std::string> reconcile_warnings(const Params& p) {
  std::vector<std::string> out;
  const double implied = p.K0 / p.n;
  if (std::abs(p.Y0 - implied) > 1e-12 * std::max(std::abs(p.Y0), std::abs(implied))) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "Y0 = " << p.Y0 << " differs from K0/n = " << implied
        << "; discrete results use K0/n";
    out.push_back(msg.str());
  }
  return out;
}

}  // namespace econodyn::harrod
