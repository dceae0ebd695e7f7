#pragma once

// Exact separability decisions: given a finite point set S and a labeling y,
// decide whether some affine threshold unit realizes y on S, and if so return
// a checkable witness.
//
// The decision reduces to feasibility of the strict-margin system
//   <a, x> + alpha >= +1 on positive points,
//   <a, x> + alpha <= -1 on negative points,
// which is equivalent to realizability under the h(0)=1 tie rule on a finite
// set. Feasibility is decided by an exact rational phase-1 simplex with
// Bland's rule, run on the Farkas-dual system; when that system is
// infeasible, its phase-1 dual multipliers yield the separating unit.

#include <threshcap/core.hpp>

#include <optional>

namespace threshcap {

// A separating unit together with its exact margins on the queried set
// (same order as the points). Invariants: margin >= 1 on positive-labeled
// points and <= -1 on negative-labeled ones; weights and bias are integers,
// gcd 1 unless a scale-up was needed to restore the margin rule on
// non-Boolean rational points.
struct SeparationWitness {
  ThresholdUnit unit;
  std::vector<Rat> margins;
};

struct SeparabilityResult {
  bool separable = false;
  std::optional<SeparationWitness> witness;
};

// Decides realizability of `labels` on `points`. Always verifies a returned
// witness against the margin invariants before returning it.
SeparabilityResult is_separable(const PointSet& points, const Labeling& labels);

// True iff the complement labeling is realizable exactly when `labels` is.
// (Always true; exposed for property tests.)
bool complement_closed(const PointSet& points, const Labeling& labels);

// Cross-check oracle for small Boolean sets (dim <= 3): exhaustive search
// over integer weights |a_i| <= weight_bound and half-integer biases
// |2*alpha| <= 2*n*weight_bound + 1. Complete for subsets of H^n at the
// default bounds (n <= 3); used by tests to validate the LP path.
bool brute_force_separable(const PointSet& points, const Labeling& labels,
                           long weight_bound = 4);

namespace detail {

// Feasibility of { lambda >= 0 : A lambda = b }, b >= 0 componentwise,
// via phase-1 simplex with Bland's rule (exact, always terminates).
// On infeasibility, `dual` satisfies dual^T A <= 0 and dual^T b > 0.
struct Phase1Result {
  bool feasible = false;
  std::vector<Rat> dual;
};
Phase1Result phase1(const std::vector<std::vector<Rat>>& a,
                    const std::vector<Rat>& b);

// is_separable on pre-built signed rows c_i = label_sign * (x_i, 1); used by
// the counting kernels to avoid rebuilding point data per labeling.
SeparabilityResult separable_rows(const std::vector<std::vector<Rat>>& rows);

}  // namespace detail

}  // namespace threshcap
