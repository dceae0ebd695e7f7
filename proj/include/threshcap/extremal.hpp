#pragma once

#include <threshcap/core.hpp>

#include <optional>
#include <vector>

namespace threshcap {

// An architecture together with its estimated capacity
// sum_k min(n_1..n_k) n_k n_{k+1}.
struct RankedArchitecture {
  Architecture arch;
  Int estimated;
};

// Result of a composition search: `best` repeats `ranking.front()`.
// `ranking` is ordered best-first under the search's objective with the
// deterministic tie-break (fewer layers, then lexicographically largest).
struct ExtremalSearch {
  RankedArchitecture best;
  std::vector<RankedArchitecture> ranking;
};

// The two-layer split (n, N-n) maximizing the estimated capacity
// n^2 (N-n); the exact integer argmax of the real optimum at n = 2N/3.
// The maximum value is 4N^3/27 at exact divisibility.
RankedArchitecture optimal_architecture_nodes(long long n_total);

// With the input layer pinned to n1: a three-layer (n1, a, N-n1-a) split
// around a = N/2 when n1 is below N/2, and the two-layer (n1, N-n1)
// otherwise. Exact integer argmax over the split point.
RankedArchitecture optimal_architecture_nodes_input(long long n_total,
                                                    long long n1);

enum class BudgetKind { nodes, connections };

// The estimated-capacity-minimizing architecture under a node or
// connection budget with the input layer pinned: the deepest chain
// (n1, 1, 1, ..., 1) the budget allows.
Architecture minimal_architecture(BudgetKind kind, long long budget,
                                  long long n1);

// Exhaustive search over all ordered compositions of n_total into at least
// two parts (optionally with the first part fixed), ranked by estimated
// capacity. `ranking_limit` = 0 keeps the full ranking, otherwise the top k.
// Guarded by a composition-count budget (n_total <= 30).
ExtremalSearch brute_force_extremal(long long n_total,
                                    std::optional<long long> fixed_n1,
                                    bool maximize,
                                    std::size_t ranking_limit = 0);

// Collapses layers 3..L into the input layer: (n1 + n3 + ... + nL, n2).
// The rewrite never decreases the estimated capacity (asserted).
Architecture move_nodes_rewrite(const Architecture& arch);

// Region-counting bound for a width-m single-hidden-layer network on R^n:
// the hyperplane arrangement of the hidden units cuts R^n into at most
// `regions` = sum_{k<=n} C(m,k) pieces, and the network function is
// determined by a threshold assignment over those regions, bounding the
// function count by `assignment_bound` = 2 sum_{k<=m} C(regions - 1, k).
struct RegionBound {
  Int regions;
  Int assignment_bound;
};

RegionBound shallow_region_bound(long long n, long long m);

// Both sides of (sum x_k)^2 >= 4 sum x_k x_{k+1} for positive entries;
// the inequality is asserted before returning.
struct QuadraticFormGap {
  Rat lhs;
  Rat rhs;
};

QuadraticFormGap quadratic_form_gap(const std::vector<Rat>& x);

}  // namespace threshcap
