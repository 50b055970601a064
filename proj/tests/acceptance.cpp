// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "econodyn/balance.hpp"
#include "econodyn/diagnostics.hpp"
#include "econodyn/fredholm.hpp"
#include "econodyn/harrod.hpp"
#include "econodyn/phillips.hpp"
#include "econodyn/volterra.hpp"

using namespace econodyn;
namespace fs = std::filesystem;

namespace {

struct Check {
  std::string what;
  bool pass;
};

std::string fmt(const char* format, double a, double b = 0.0) {
  char buffer[160];
  std::snprintf(buffer, sizeof buffer, format, a, b);
  return buffer;
}

int failures = 0;

void criterion(int id, const char* title, const std::function<std::vector<Check>()>& body) {
  std::vector<Check> checks;
  try {
    checks = body();
  } catch (const std::exception& e) {
    checks.push_back({std::string("unexpected exception: ") + e.what(), false});
  }
  bool pass = true;
  std::string detail;
  for (const auto& c : checks) {
    pass = pass && c.pass;
    if (!detail.empty()) detail += "; ";
    detail += (c.pass ? "" : "FAILED ") + c.what;
  }
  failures += pass ? 0 : 1;
  std::printf("[%s] %2d %s: %s\n", pass ? "PASS" : "FAIL", id, title, detail.c_str());
  std::fflush(stdout);
}

Eigen::MatrixXd constant_matrix(std::initializer_list<std::initializer_list<double>> rows) {
  Eigen::MatrixXd m(static_cast<Index>(rows.size()), static_cast<Index>(rows.begin()->size()));
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

double rk4_phillips(const phillips::Params& p, double tau_end, double step) {
  const auto d = phillips::dimensionless_coeffs(p);
  auto f = [&](double tau, std::array<double, 2> y) {
    return std::array<double, 2>{y[1], -(d.alpha + d.beta / tau) * y[1] - d.gamma / tau * y[0]};
  };
  const auto steps = static_cast<long>(std::llround((tau_end - 1.0) / step));
  const double h = (tau_end - 1.0) / static_cast<double>(steps);
  std::array<double, 2> y{p.Y1, p.Y1p};
  for (long s = 0; s < steps; ++s) {
    const double tau = 1.0 + static_cast<double>(s) * h;
    const auto k1 = f(tau, y);
    const auto k2 = f(tau + h / 2, {y[0] + h / 2 * k1[0], y[1] + h / 2 * k1[1]});
    const auto k3 = f(tau + h / 2, {y[0] + h / 2 * k2[0], y[1] + h / 2 * k2[1]});
    const auto k4 = f(tau + h, {y[0] + h * k3[0], y[1] + h * k3[1]});
    for (int c = 0; c < 2; ++c) y[c] += h / 6 * (k1[c] + 2 * k2[c] + 2 * k3[c] + k4[c]);
  }
  return y[0];
}

struct Polynomial {
  double c[3][3];
  double operator()(double t, double h) const {
    double sum = 0.0;
    for (int p = 0; p < 3; ++p)
      for (int q = 0; q < 3; ++q) sum += c[p][q] * std::pow(t, p) * std::pow(h, q);
    return sum;
  }
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(ECONODYN_CLI) + " " + args + " >/dev/null 2>&1";
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

}  // namespace

int main() {
  criterion(1, "Harrod divergence", [] {
    const harrod::Params p{0.3, 10, 1, 10};
    const double t = p.n / (2 * p.m);
    const double ratio = harrod::income_corrected(p, t) / harrod::income_exponential(p, t);
    const double err = std::abs(ratio - 4.0 / std::exp(0.5));
    bool raised = false;
    try {
      harrod::income_corrected(p, p.n / p.m);
    } catch (const Error& e) {
      raised = e.code() == Errc::horizon_exceeded;
    }
    return std::vector<Check>{{fmt("ratio at half-horizon %.12f, |err| %.1e <= 1e-12", ratio, err), err <= 1e-12},
                              {"horizon-exceeded raised at t = n/m", raised}};
  });

  criterion(2, "Discrete refutation", [] {
    const harrod::Params p{0.1, 1, 1, 1};
    const double ratio = harrod::exponential_discrepancy(p, 20);
    // oracle: Y_c0 e^(a n) over the geometric sum accumulated term by term
    double geometric = 0.0, term = 1.0;
    for (int i = 0; i <= 20; ++i, term *= 0.1) geometric += term;
    const double oracle = std::exp(0.1 * 20) / geometric;
    const double printed = std::exp(2.0) * 0.9 / (1.0 - std::pow(0.1, 21));
    const double err = std::max(std::abs(ratio - oracle), std::abs(ratio - printed));
    std::mt19937 rng(2718);
    std::uniform_real_distribution<double> ua(0.0, 0.999);
    std::uniform_int_distribution<int> us(0, 200);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const harrod::Params q{ua(rng), 1, 1, 1};
      const auto steps = static_cast<std::size_t>(us(rng));
      const double closed = harrod::income_discrete(q, steps);
      double capital = q.K0;
      for (std::size_t i = 0; i < steps; ++i) capital = q.K0 + q.m / q.n * capital;
      worst = std::max(worst, std::abs(closed - capital / q.n) / std::abs(capital / q.n));
    }
    return std::vector<Check>{
        {fmt("ratio %.7f vs e^2 0.9/(1 - 0.1^21) and summed oracle, |err| %.1e <= 1e-6", ratio, err),
         err <= 1e-6 && std::trunc(ratio * 1e4) == 66501.0},
        {fmt("recursion vs closed form, 1000 pairs, max rel %.1e <= 1e-12", worst), worst <= 1e-12}};
  });

  criterion(3, "Phillips corrected model", [] {
    const phillips::Params p{1.0, 1.0, 0.5, 1.0, 1.0, 0.0};
    std::vector<double> residuals;
    for (int segments : {100, 200, 400}) {
      const auto traj = phillips::corrected_income(p, make_uniform_grid(1.0, 3.0, segments), 1e-13);
      residuals.push_back(phillips::equation_residual(p, traj));
    }
    const double r1 = residuals[0] / residuals[1], r2 = residuals[1] / residuals[2];
    const auto g = make_uniform_grid(1.0, 3.0, 400);
    const auto traj = phillips::corrected_income(p, g, 1e-13);
    double worst = 0.0;
    for (Index i = 0; i < g.size(); i += 20) {
      worst = std::max(worst, std::abs(traj.income[i] - rk4_phillips(p, g.node(i), 1e-5)));
    }
    return std::vector<Check>{
        {fmt("residual ratios %.3f, %.3f in [3, 5]", r1, r2), r1 >= 3 && r1 <= 5 && r2 >= 3 && r2 <= 5},
        {fmt("max |Y - RK4(step 1e-5)| on [1, 3] = %.1e <= 1e-5", worst), worst <= 1e-5}};
  });

  criterion(4, "Volterra cross-validation", [] {
    const auto g = make_uniform_grid(0.0, 1.0, 1000);
    VolterraProblem expo{0.0, [](double, double) { return 1.0; }, [](double) { return 1.0; }, 1.0};
    const auto picard = solve_picard(expo, g, 1e-12);
    const auto march = solve_marching(expo, g);
    double worst = (picard.samples - march).lpNorm<Eigen::Infinity>();
    const double end = picard.samples[g.size() - 1];
    std::mt19937 rng(4);
    std::uniform_real_distribution<double> u(-1, 1);
    const auto coarse = make_uniform_grid(0.0, 1.0, 200);
    for (int k = 0; k < 5; ++k) {
      Polynomial kp{}, qp{};
      for (auto& row : kp.c)
        for (auto& v : row) v = u(rng);
      for (auto& row : qp.c)
        for (auto& v : row) v = u(rng);
      VolterraProblem prob{0.0, kp, [qp](double t) { return qp(t, t); }, 1.5 * u(rng)};
      const auto a = solve_picard(prob, coarse, 1e-12);
      worst = std::max(worst, (a.samples - solve_marching(prob, coarse)).lpNorm<Eigen::Infinity>());
    }
    return std::vector<Check>{
        {fmt("Picard vs marching, max diff %.1e <= 1e-6", worst), worst <= 1e-6},
        {fmt("phi(1) = %.8f vs e (|err| %.1e)", end, std::abs(end - std::exp(1.0))),
         std::abs(end - std::exp(1.0)) < 1e-4}};
  });

  criterion(5, "Balance Cauchy", [] {
    const auto zero = balance::System::constant(constant_matrix({{0.0}}), Eigen::VectorXd::Zero(1));
    const auto g = make_uniform_grid(0.0, 1.0, 200);
    double worst = 0.0;
    for (auto [p, pp] : {std::pair{1.0, 0.0}, std::pair{-0.5, 2.0}}) {
      const auto traj = balance::simulate_cauchy(zero, {Eigen::VectorXd::Constant(1, p),
                                                        Eigen::VectorXd::Constant(1, pp)},
                                                 g, 1e-14);
      for (Index a = 0; a < g.size(); ++a) {
        const double t = g.node(a);
        const double exact = std::exp(-t) * (p * std::cos(t) + (p + pp) * std::sin(t));
        worst = std::max(worst, std::abs(traj.x(a, 0) - exact));
      }
    }
    const auto A = constant_matrix({{0.2, 0.3, 0.1}, {0.1, 0.1, 0.4}, {0.3, 0.2, 0.2}});
    Eigen::VectorXd c(3);
    c << 1, 2, 0.5;
    const Eigen::VectorXd p = solve_dense((Eigen::MatrixXd::Identity(3, 3) - A).eval(), c);
    const auto eq = balance::simulate_cauchy(balance::System::constant(A, c),
                                             {p, Eigen::VectorXd::Zero(3)}, g);
    const double drift = (eq.x.rowwise() - p.transpose()).lpNorm<Eigen::Infinity>();

    balance::System sys;
    sys.A = {{[](double t) { return 0.2 + 0.3 * t; }, [](double t) { return 0.1 * std::cos(3 * t); }},
             {[](double t) { return 0.4 * t * t; }, [](double) { return -0.2; }}};
    sys.c = {[](double t) { return 1.0 + t; }, [](double t) { return std::sin(2 * t); }};
    Eigen::VectorXd p0(2), pp0(2);
    p0 << 1, 0.5;
    pp0 << -0.5, 1;
    std::vector<double> res;
    for (int segments : {100, 200, 400}) {
      res.push_back(balance::equation_residual(
          sys, balance::simulate_cauchy(sys, {p0, pp0}, make_uniform_grid(0.0, 1.0, segments), 1e-13)));
    }
    const double r1 = res[0] / res[1], r2 = res[1] / res[2];
    return std::vector<Check>{
        {fmt("n = 1 decoupled vs e^-t(p cos t + (p+p') sin t) on 200 segments, max err %.2e <= 1e-6",
             worst),
         worst <= 1e-6},
        {fmt("equilibrium drift %.1e <= 1e-8", drift), drift <= 1e-8},
        {fmt("residual ratios %.3f, %.3f in [3, 5]", r1, r2), r1 >= 3 && r1 <= 5 && r2 >= 3 && r2 <= 5}};
  });

  criterion(6, "Forecast BVP", [] {
    balance::System sys;
    sys.A = {{[](double t) { return 0.2 + 0.3 * t; }, [](double t) { return 0.1 * std::cos(3 * t); }},
             {[](double t) { return 0.4 * t * t; }, [](double) { return -0.2; }}};
    sys.c = {[](double t) { return 1.0 + t; }, [](double t) { return std::sin(2 * t); }};
    Eigen::VectorXd p(2), pp(2);
    p << 1, 0.5;
    pp << -0.5, 1;
    const auto g = make_uniform_grid(0.0, 1.0, 200);
    const auto cauchy = balance::simulate_cauchy(sys, {p, pp}, g, 1e-13);
    const Eigen::VectorXd r = cauchy.x.row(g.size() - 1).transpose();
    const auto fc = balance::forecast(sys, {p, r}, g);
    const double boundary = std::max((fc.x.row(0).transpose() - p).lpNorm<Eigen::Infinity>(),
                                     (fc.x.row(g.size() - 1).transpose() - r).lpNorm<Eigen::Infinity>());
    const double consistency = (fc.x - cauchy.x).lpNorm<Eigen::Infinity>();

    const auto A = constant_matrix({{0.2, 0.3}, {0.5, 0.1}});
    Eigen::VectorXd c(2);
    c << 1, 2;
    const Eigen::VectorXd eq = solve_dense((Eigen::MatrixXd::Identity(2, 2) - A).eval(), c);
    const auto flat = balance::forecast(balance::System::constant(A, c), {eq, eq}, g);
    const double drift = (flat.x.rowwise() - eq.transpose()).lpNorm<Eigen::Infinity>();
    return std::vector<Check>{
        {fmt("boundary deviation %.1e (exact)", boundary), boundary == 0.0},
        {fmt("Cauchy consistency on 200 segments, max diff %.1e <= 1e-5", consistency),
         consistency <= 1e-5},
        {fmt("equilibrium forecast drift %.1e <= 1e-8", drift), drift <= 1e-8}};
  });

  criterion(7, "Resolvent", [] {
    const Kernel k{[](double t, double h) { return t * h; }};
    const auto g = make_uniform_grid(0.0, 1.0, 200);
    const auto disc = discretize(k, g);
    const auto r = build_resolvent(disc, 1.0);
    double table_err = 0.0;
    for (Index i = 0; i < g.size(); ++i)
      for (Index j = 0; j < g.size(); ++j)
        table_err = std::max(table_err, std::abs(r.table(i, j) - 1.5 * g.node(i) * g.node(j)));
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-1, 1);
    double path_err = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const double a = u(rng), b = u(rng), c = u(rng);
      Eigen::VectorXd q(g.size());
      for (Index i = 0; i < g.size(); ++i) {
        const double t = g.node(i);
        q[i] = a + b * std::sin(4 * t) + c * std::exp(t);
      }
      path_err = std::max(path_err,
                          (r.apply(q) - nystrom_solve(disc, 1.0, q).samples).lpNorm<Eigen::Infinity>());
    }
    return std::vector<Check>{{fmt("max |R - 1.5 t h| = %.1e <= 1e-3", table_err), table_err <= 1e-3},
                              {fmt("resolvent vs direct on 20 free terms, max %.1e <= 1e-8", path_err),
                               path_err <= 1e-8}};
  });

  criterion(8, "Characteristic numbers", [] {
    const auto g = make_uniform_grid(0.0, 1.0, 200);
    const auto sep = characteristic_numbers(Kernel{[](double t, double h) { return t * h; }}, g, 1);
    const auto one = characteristic_numbers(Kernel{[](double, double) { return 1.0; }}, g, 1);
    const double e1 = std::abs(sep[0] - 3.0), e2 = std::abs(one[0] - 1.0);
    // warning iff gap < 5%, across a sweep of a through the critical value
    const auto coarse = make_uniform_grid(0.0, 1.0, 100);
    const double critical = (1 - M_PI * M_PI) / 2;
    bool consistent = true, saw_warning = false, saw_clear = false;
    for (double s = critical - 1.5; s <= critical + 1.5; s += 0.1) {
      const auto report = balance::criticality_check(
          balance::System::constant(constant_matrix({{s}}), Eigen::VectorXd::Zero(1)), coarse, 2);
      consistent = consistent && report.warning == (report.min_gap < 0.05);
      saw_warning = saw_warning || report.warning;
      saw_clear = saw_clear || !report.warning;
    }
    return std::vector<Check>{
        {fmt("K = t h: lambda_1 = %.6f (|err| %.1e <= 1e-3)", sep[0].real(), e1), e1 <= 1e-3},
        {fmt("K = 1: lambda_1 = %.6f (|err| %.1e <= 1e-3)", one[0].real(), e2), e2 <= 1e-3},
        {"warning fires iff min gap < 5% (both states reached)", consistent && saw_warning && saw_clear}};
  });

  criterion(9, "Static solvers", [] {
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> u(-1, 1);
    double worst_ratio_excess = -INFINITY;
    for (int trial = 0; trial < 20; ++trial) {
      const int n = 2 + trial % 5;
      Eigen::MatrixXd A = Eigen::MatrixXd::NullaryExpr(n, n, [&] { return u(rng); });
      A *= 0.9 / inf_norm(A);
      const Eigen::VectorXd c = Eigen::VectorXd::NullaryExpr(n, [&] { return u(rng); });
      const auto sol = balance::static_solve_contractive(A, c);
      const auto& h = sol.report.history;
      for (std::size_t s = 1; s < h.size(); ++s) {
        if (h[s - 1] > 1e-12) worst_ratio_excess = std::max(worst_ratio_excess, h[s] / h[s - 1] - inf_norm(A));
      }
    }
    double worst = 0.0;
    int non_contractive = 0, done = 0;
    while (done < 50) {
      const int n = 2 + done % 5;
      const Eigen::MatrixXd A = 1.5 * Eigen::MatrixXd::NullaryExpr(n, n, [&] { return u(rng); });
      const Eigen::MatrixXd B = Eigen::MatrixXd::Identity(n, n) - A;
      const Eigen::JacobiSVD<Eigen::MatrixXd> svd(B);
      if (svd.singularValues()(n - 1) < 1e-2 * svd.singularValues()(0)) continue;
      const Eigen::VectorXd c = Eigen::VectorXd::NullaryExpr(n, [&] { return u(rng); });
      const auto sol = balance::static_solve_general(A, c);
      worst = std::max(worst, (sol.x - solve_dense(B, c)).lpNorm<Eigen::Infinity>());
      non_contractive += inf_norm(A) >= 1.0;
      ++done;
    }
    return std::vector<Check>{
        {fmt("max(step ratio - ||A||_inf) = %.1e <= 0", worst_ratio_excess), worst_ratio_excess <= 1e-12},
        {fmt("general vs dense on 50 systems (%.0f non-contractive), max %.1e <= 1e-8",
             non_contractive, worst),
         worst <= 1e-8 && non_contractive > 0}};
  });

  criterion(10, "Diagnostics and determinism", [] {
    const auto g = make_uniform_grid(0.0, 1.0, 10);
    auto irreducible = [&](const Eigen::MatrixXd& A) {
      return diagnostics::check_perron_frobenius(
                 balance::System::constant(A, Eigen::VectorXd::Zero(A.rows())), g)
          .irreducible;
    };
    Eigen::MatrixXd cycle = Eigen::MatrixXd::Zero(3, 3);
    cycle(0, 1) = cycle(1, 2) = cycle(2, 0) = 0.3;
    const bool graphs = !irreducible(Eigen::MatrixXd::Identity(3, 3)) && irreducible(cycle) &&
                        irreducible(Eigen::MatrixXd::Constant(3, 3, 0.2));

    const auto dir = fs::temp_directory_path() / "econodyn-acceptance";
    fs::remove_all(dir);
    int scenarios = 0;
    bool identical = true;
    for (const auto& entry : fs::directory_iterator(ECONODYN_SCENARIOS)) {
      const auto name = entry.path().stem().string();
      const auto a = dir / (name + "-a"), b = dir / (name + "-b");
      const bool ran = run_cli("run " + entry.path().string() + " --out " + a.string()) == 0 &&
                       run_cli("run " + entry.path().string() + " --out " + b.string()) == 0;
      identical = identical && ran && slurp(a / "trajectory.csv") == slurp(b / "trajectory.csv") &&
                  slurp(a / "report.json") == slurp(b / "report.json") &&
                  !slurp(a / "report.json").empty();
      ++scenarios;
    }
    return std::vector<Check>{
        {"identity reducible, 3-cycle and all-positive irreducible", graphs},
        {fmt("%.0f scenarios byte-identical across two CLI runs", scenarios), identical && scenarios >= 6}};
  });

  std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
