#include <cmath>
#include <functional>
#include <random>

#include "doctest.h"
#include "econodyn/error.hpp"
#include "econodyn/harrod.hpp"

using namespace econodyn;
using harrod::Params;

namespace {

Errc error_code(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an econodyn::Error");
  return Errc::invalid_argument;
}

// a = m / n with K0 = n so that Y_c0 = 1
Params geometric(double a) { return {a, 1.0, 1.0, 1.0}; }

}  // namespace

TEST_CASE("validate") {
  CHECK_NOTHROW(harrod::validate({0.3, 10, 1, 10}));
  CHECK_NOTHROW(harrod::validate({1.0, 2, 1, 0}));
  CHECK(error_code([] { harrod::validate({1.5, 10, 1, 10}); }) == Errc::invalid_parameters);
  CHECK(error_code([] { harrod::validate({0.0, 10, 1, 10}); }) == Errc::invalid_parameters);
  CHECK(error_code([] { harrod::validate({0.3, 0, 1, 10}); }) == Errc::invalid_parameters);
  CHECK(error_code([] { harrod::validate({0.3, 10, 0, 10}); }) == Errc::invalid_parameters);
  CHECK(error_code([] { harrod::validate({0.3, 10, 1, -1}); }) == Errc::invalid_parameters);
  CHECK(error_code([] { harrod::validate({0.9, 0.5, 1, 1}); }) == Errc::invalid_parameters);
  try {
    harrod::validate({1.5, 10, 1, 10});
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("m:") != std::string::npos);
  }
}

TEST_CASE("exponential income") {
  const Params p{0.3, 10, 1, 10};
  CHECK(harrod::income_exponential(p, 0) == 1.0);
  CHECK(harrod::income_exponential(p, 10) == doctest::Approx(1.349859).epsilon(1e-6));
  double previous = 0.0;
  for (double t = 0; t < 50; t += 0.5) {
    const double y = harrod::income_exponential(p, t);
    CHECK(y > previous);
    previous = y;
  }
}

TEST_CASE("corrected income and horizon") {
  const Params p{0.3, 10, 1, 10};
  CHECK(harrod::income_corrected(p, 0) == 1.0);
  CHECK(harrod::income_corrected(p, 10) == doctest::Approx(1.0 / 0.49).epsilon(1e-12));
  CHECK(harrod::forecast_horizon({0.5, 10, 1, 5}) == 20.0);
  CHECK(harrod::forecast_horizon({1.0, 1, 1, 1}) == 1.0);
  CHECK(error_code([] { harrod::income_corrected({0.5, 10, 1, 5}, 20); }) ==
        Errc::horizon_exceeded);
  CHECK(error_code([] { harrod::income_corrected({0.5, 10, 1, 5}, 25); }) ==
        Errc::horizon_exceeded);
  CHECK(std::isfinite(harrod::income_corrected(p, 0.999 * harrod::forecast_horizon(p))));
  CHECK(error_code([] { harrod::forecast_horizon({0.0, 10, 1, 5}); }) == Errc::undefined_horizon);
}

TEST_CASE("corrected over exponential ratio rises from 1 across the horizon") {
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> um(0.05, 1.0), un(1.0, 20.0);
  for (int trial = 0; trial < 50; ++trial) {
    const Params p{um(rng), un(rng), 2.0, 1.0};
    if (p.m / p.n >= 1.0) continue;
    const double horizon = harrod::forecast_horizon(p);
    double previous = 1.0;
    CHECK(harrod::income_corrected(p, 0) / harrod::income_exponential(p, 0) == 1.0);
    for (int k = 1; k < 200; ++k) {
      const double t = horizon * k / 200.0;
      const double ratio = harrod::income_corrected(p, t) / harrod::income_exponential(p, t);
      CHECK(ratio > previous);
      previous = ratio;
    }
  }
}

TEST_CASE("discrete income") {
  CHECK(harrod::income_discrete({0.3, 10, 1, 10}, 0) == doctest::Approx(1.0));
  CHECK(harrod::income_discrete(geometric(0.5), 2) == doctest::Approx(1.75).epsilon(1e-15));
  CHECK(error_code([] { harrod::income_discrete({1.0, 1.0, 1, 1}, 3); }) ==
        Errc::invalid_parameters);
  const auto steps = harrod::income_discrete_recursion(geometric(0.5), 2);
  REQUIRE(steps.size() == 3);
  CHECK(steps[0] == 1.0);
  CHECK(steps[1] == 1.5);
  CHECK(steps[2] == 1.75);
}

TEST_CASE("closed form matches the step recursion") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> ua(0.0, 0.999);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = geometric(ua(rng));
    const auto steps = harrod::income_discrete_recursion(p, 50);
    for (std::size_t s = 0; s <= 50; ++s) {
      const double closed = harrod::income_discrete(p, s);
      CHECK(std::abs(closed - steps[s]) <= 1e-12 * std::abs(steps[s]));
    }
  }
}

TEST_CASE("discrete income is bounded by and converges to the series limit") {
  for (double a : {0.1, 0.5, 0.9}) {
    const auto p = geometric(a);
    const double limit = 1.0 / (1.0 - a);
    for (std::size_t s = 0; s < 400; ++s) CHECK(harrod::income_discrete(p, s) <= limit);
    CHECK(harrod::income_discrete(p, 400) == doctest::Approx(limit).epsilon(1e-12));
  }
}

TEST_CASE("exponential discrepancy") {
  CHECK(harrod::exponential_discrepancy(geometric(0.4), 0) == doctest::Approx(1.0));
  const double expected = std::exp(2.0) * 0.9 / (1.0 - std::pow(0.1, 21));
  CHECK(harrod::exponential_discrepancy(geometric(0.1), 20) == doctest::Approx(expected));
  CHECK(harrod::exponential_discrepancy(geometric(0.1), 20) == doctest::Approx(6.6501).epsilon(1e-5));
  for (double a : {0.05, 0.3, 0.7, 0.95}) {
    double previous = 0.0;
    for (std::size_t s = 0; s <= 100; ++s) {
      const double r = harrod::exponential_discrepancy(geometric(a), s);
      CHECK(r > previous);
      previous = r;
    }
  }
}

TEST_CASE("reconcile warnings") {
  CHECK(harrod::reconcile_warnings({0.3, 10, 1, 10}).empty());
  const auto w = harrod::reconcile_warnings({0.3, 10, 2, 10});
  REQUIRE(w.size() == 1);
  CHECK(w[0].find("K0/n") != std::string::npos);
}
