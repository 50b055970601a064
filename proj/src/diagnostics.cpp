#include "econodyn/diagnostics.hpp"

#include <cmath>
#include <deque>
#include <sstream>

namespace econodyn::diagnostics {
namespace {

std::vector<bool> reachable(const std::vector<std::vector<bool>>& adjacency, bool reversed) {
  const std::size_t n = adjacency.size();
  std::vector<bool> seen(n, false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t w = 0; w < n; ++w) {
      // adjacency[i][j] is the edge j -> i
      const bool edge = reversed ? adjacency[v][w] : adjacency[w][v];
      if (edge && !seen[w]) {
        seen[w] = true;
        queue.push_back(w);
      }
    }
  }
  return seen;
}

bool all_of(const std::vector<bool>& flags) {
  for (bool f : flags)
    if (!f) return false;
  return true;
}

}  // namespace

Contractivity check_contractive(const balance::System& system, const Grid& grid) {
  Contractivity out;
  out.contractive = true;
  for (Index k = 0; k < grid.size(); ++k) {
    const double norm = inf_norm(system.A_at(grid.node(k)));
    out.norms.push_back(norm);
    out.contractive = out.contractive && norm < 1.0;
  }
  return out;
}

Invertibility check_invertibility(const balance::System& system, const Grid& grid,
                                  double cond_threshold) {
  if (!(cond_threshold > 1.0)) {
    throw Error(Errc::invalid_argument, "condition threshold must exceed 1");
  }
  Invertibility out;
  out.invertible_everywhere = true;
  out.well_conditioned = true;
  const auto n = static_cast<double>(system.size());
  for (Index k = 0; k < grid.size(); ++k) {
    const Eigen::MatrixXd A = system.A_at(grid.node(k));
    const double det = A.determinant();
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
    const auto& sv = svd.singularValues();
    const double smallest = sv[sv.size() - 1];
    const double condition = smallest > 0.0 ? sv[0] / smallest : INFINITY;
    out.dets.push_back(det);
    out.conditions.push_back(condition);
    const double scale = std::pow(inf_norm(A), n);
    out.invertible_everywhere = out.invertible_everywhere && std::abs(det) > 1e-12 * scale;
    out.well_conditioned = out.well_conditioned && condition < cond_threshold;
  }
  return out;
}

bool strongly_connected(const std::vector<std::vector<bool>>& adjacency) {
  if (adjacency.empty()) return false;
  return all_of(reachable(adjacency, false)) && all_of(reachable(adjacency, true));
}

PerronFrobenius check_perron_frobenius(const balance::System& system, const Grid& grid) {
  const std::size_t n = system.size();
  std::vector<std::vector<bool>> adjacency(n, std::vector<bool>(n, false));
  PerronFrobenius out;
  out.nonnegative = true;
  for (Index k = 0; k < grid.size(); ++k) {
    const Eigen::MatrixXd A = system.A_at(grid.node(k));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double a = A(static_cast<Index>(i), static_cast<Index>(j));
        if (a < 0.0) out.nonnegative = false;
        if (a > 0.0) adjacency[i][j] = true;
      }
    }
  }
  out.irreducible = strongly_connected(adjacency);
  return out;
}

HealthReport diagnose(const balance::System& system, const Grid& grid, double cond_threshold) {
  balance::validate(system);
  const auto contract = check_contractive(system, grid);
  const auto invert = check_invertibility(system, grid, cond_threshold);
  const auto pf = check_perron_frobenius(system, grid);

  HealthReport report;
  report.cond_threshold = cond_threshold;
  for (Index k = 0; k < grid.size(); ++k) {
    const auto u = static_cast<std::size_t>(k);
    report.records.push_back(
        {grid.node(k), contract.norms[u], invert.dets[u], invert.conditions[u]});
  }
  report.contractive = contract.contractive;
  report.invertible_everywhere = invert.invertible_everywhere;
  report.well_conditioned = invert.well_conditioned;
  report.nonnegative = pf.nonnegative;
  report.irreducible = pf.irreducible;

  if (!report.contractive) {
    report.messages.push_back("||A(t)||_inf >= 1 at some node; use the general static iteration");
  }
  if (!report.invertible_everywhere) report.messages.push_back("det A(t) vanishes at some node");
  if (!report.well_conditioned) {
    std::ostringstream msg;
    msg << "A(t) is ill-conditioned at some node (threshold " << cond_threshold << ")";
    report.messages.push_back(msg.str());
  }
  if (!report.nonnegative) report.messages.push_back("A(t) has negative entries");
  if (!report.irreducible) {
    report.messages.push_back("participant digraph is not strongly connected");
  }
  return report;
}

}  // namespace econodyn::diagnostics
