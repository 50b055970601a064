#pragma once

// Health checks on the coefficient matrix A(t) along a time grid:
// contractivity, invertibility and conditioning, and the Perron-Frobenius
// prerequisites (nonnegativity, irreducibility).

#include <string>
#include <vector>

#include "econodyn/balance.hpp"

namespace econodyn::diagnostics {

inline constexpr double kDefaultConditionThreshold = 1e8;

struct NodeRecord {
  double t = 0.0;
  double inf_norm = 0.0;
  double det = 0.0;
  double condition = 0.0;  // 2-norm condition number; +inf when singular
};

struct Contractivity {
  std::vector<double> norms;
  bool contractive = false;
};

struct Invertibility {
  std::vector<double> dets;
  std::vector<double> conditions;
  bool invertible_everywhere = false;
  bool well_conditioned = false;
};

struct PerronFrobenius {
  bool nonnegative = false;
  bool irreducible = false;
};

struct HealthReport {
  std::vector<NodeRecord> records;
  bool contractive = false;
  bool invertible_everywhere = false;
  bool well_conditioned = false;
  bool nonnegative = false;
  bool irreducible = false;
  double cond_threshold = kDefaultConditionThreshold;
  std::vector<std::string> messages;
};

Contractivity check_contractive(const balance::System& system, const Grid& grid);

/// |det A(t)| > 1e-12 * ||A(t)||_inf^n counts as invertible.
Invertibility check_invertibility(const balance::System& system, const Grid& grid,
                                  double cond_threshold = kDefaultConditionThreshold);

/// Edge j -> i whenever a_ij(t) > 0 at some node; irreducible iff that
/// digraph is strongly connected.
PerronFrobenius check_perron_frobenius(const balance::System& system, const Grid& grid);

/// Strong connectivity of the digraph with an edge j -> i for adjacency(i, j).
bool strongly_connected(const std::vector<std::vector<bool>>& adjacency);

HealthReport diagnose(const balance::System& system, const Grid& grid,
                      double cond_threshold = kDefaultConditionThreshold);

}  // namespace econodyn::diagnostics
