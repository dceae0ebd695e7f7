#pragma once

// Capacity of finite point sets: exact counting of realizable dichotomies,
// closed-form lower/upper bounds, hierarchical decomposition certificates,
// product-set bounds, region counts, and VC dimension by coordinate
// projection.
//
// Counting convention: |T(S)| is the number of labelings of S realizable by
// an affine threshold unit. Capacity C(S) = log2 |T(S)|. Enumeration runs
// over the 2^(|S|-1) labelings with the first point labeled 1 (complement
// closure halves the space) and doubles the result.

#include <threshcap/separability.hpp>

#include <optional>

namespace threshcap {

struct CountOptions {
  int jobs = 0;                 // 0 = library default thread count
  std::size_t max_points = 24;  // refuse larger sets (budget "max-points")
};

// Parallel counting kernel: contiguous labeling-space chunks are explored
// with prefix pruning (restrictions of realizable labelings are realizable)
// and witness reuse; partial counts combine by addition, so the result is
// deterministic and independent of the thread count.
Int count_threshold_functions(const PointSet& s, const CountOptions& opt = {});

// Serial reference implementation: one separability decision per labeling,
// no pruning. Kept for testing and benchmarking against the kernel above.
Int count_threshold_functions_serial(const PointSet& s,
                                     const CountOptions& opt = {});

// All realizable labelings, deterministic order. The first half has point 0
// labeled 1 (depth-first discovery order); their complements follow.
std::vector<Labeling> enumerate_threshold_functions(const PointSet& s,
                                                    const CountOptions& opt = {});

// One bound with both count form (exact big integer, when the bound is
// integral) and log2 form. `statement` is a stable slug naming the fact the
// bound instantiates; `flags` carry caveats ("strict", "asymptotic", ...).
struct Bound {
  std::string name;
  std::string statement;
  bool is_upper = false;
  std::optional<Int> count;
  std::optional<double> bits;
  std::vector<std::string> flags;
};

struct CapacityReport {
  std::size_t set_size = 0;
  int dim = 0;
  bool boolean = false;
  std::optional<Int> exact_count;
  std::optional<double> exact_bits;
  std::vector<Bound> bounds;
};

// The closed-form bound family for one set; exact counting not included.
std::vector<Bound> set_capacity_bounds(const PointSet& s);

// Full report; runs the exact counter unless bounds_only.
CapacityReport set_capacity_report(const PointSet& s, bool bounds_only = false,
                                   const CountOptions& opt = {});

// Hierarchical decomposition of a Boolean set into totally separated pieces:
// repeatedly split off the smaller side of the most balanced coordinate
// split (ties: lowest coordinate index; equal sizes: the 0-side continues).
// Certifies |T(S)| >= 2 * prod (|V_i| + 1).
struct DecompositionLevel {
  int coord = 0;                        // 1-based split coordinate
  std::vector<std::size_t> v_indices;   // points split off at this level
  std::size_t u_size = 0;               // points continuing downward
};
struct DecompositionCertificate {
  std::vector<DecompositionLevel> levels;
  Int certified_count;
  double certified_bits = 0;
};
DecompositionCertificate hierarchical_lower_bound(const PointSet& s);

// Lower bounds for the p-fold direct sum U + U + ... + U. Requires the
// vectors (u, 1) to be linearly independent and |U| > 1, p > 1.
struct ProductBound {
  Int iterated_count;       // |T(U)| * |U|^((|U|-1) p (p-1) / 2)
  double iterated_bits = 0;
  double closed_form_bits = 0;  // p^2 |U| log2|U| / 8
};
ProductBound product_capacity_lower(const PointSet& u, long p);

// Rank of the rows (u_i, 1) over the rationals.
std::size_t affine_rank(const PointSet& u);

// Number of regions cut out of R^n by m hyperplanes in general position:
// through the origin (central = true) or affine (central = false).
Int region_count(long m, long n, bool central);

// VC dimension of a Boolean set by coordinate-projection shattering,
// searched largest-first.
int vc_dimension(const PointSet& s);

}  // namespace threshcap
