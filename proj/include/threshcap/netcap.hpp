#pragma once

#include <threshcap/setcap.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace threshcap {

// Budgets for exact architecture enumeration. Each guard is named so that a
// BudgetError can report exactly which limit refused the computation.
struct EnumBudget {
  long long max_depth = 4;                // number of layers L
  std::size_t max_set = 16;               // points in the input set
  std::size_t per_layer_functions = 512;  // distinct functions per stage/image
  std::uint64_t max_tuples = 1u << 22;    // unit tuples expanded per image
};

// A network input-output function on a fixed point set: entry i is the packed
// output code at point i (first output unit in the most significant bit).
using FunctionTable = std::vector<std::uint64_t>;

// Every function S -> H^{n_L} computable by the architecture, deduped by its
// table on S and sorted for determinism. Layer recursion dedups on induced
// stage functions, never on weight settings.
std::vector<FunctionTable> enumerate_network_functions(
    const Architecture& arch, const PointSet& s, const EnumBudget& budget = {});

// One term of the estimated-capacity sum: bottleneck * n_k * n_{k+1}, where
// the bottleneck is the running minimum of the first k layer sizes.
struct EstimatedTerm {
  std::size_t k = 0;  // 1-based layer index
  long long bottleneck = 0;
  Int value;
};

struct EstimatedCapacity {
  Int value;  // sum of the terms below
  std::vector<EstimatedTerm> terms;
};

// The cubic capacity formula: sum over k < L of min(n_1..n_k) n_k n_{k+1}.
EstimatedCapacity estimated_capacity(const Architecture& arch);

// A capacity bound for a network, measured in bits. `exact_bits` is present
// when the value is exactly rational; `count` when an exact function-count
// form exists (then bits == log2(count)). A bound whose hypotheses exclude
// the architecture keeps its flags but may omit the numeric fields.
struct NetworkBound {
  std::string name;
  std::string statement;
  bool is_upper = false;
  std::optional<Int> count;
  std::optional<Rat> exact_bits;
  std::optional<double> bits;
  std::vector<std::string> flags;
};

struct NetworkReport {
  std::vector<long long> sizes;
  std::optional<Int> exact_count;
  std::optional<double> exact_bits;
  std::vector<NetworkBound> bounds;
};

// Exact |T(n_1,...,n_L)| by enumeration over the full cube H^{n_1}, with all
// applicable formula bounds attached.
NetworkReport exact_network_capacity(const Architecture& arch,
                                     const EnumBudget& budget = {});

// Upper bounds. With `input_log_cardinality` = n set, reports the
// restricted-input bound n n_1 n_2 + sum_{k=2}^{L-1} min(n,n_2..n_k) n_k n_{k+1};
// otherwise the unrestricted sum (the estimated-capacity formula). Both hold
// with constant 1 when n_1..n_{L-1} >= 4 and are flagged outside that range.
// Architectures ending in a single output node also get the
// drop-the-output-node bound, valid up to an absolute constant.
NetworkReport network_upper_bounds(
    const Architecture& arch,
    std::optional<Rat> input_log_cardinality = std::nullopt);

// Lower bounds. Two-layer (n,m): the exact product |T(H^n)|^m (n <= 4) or
// m n(n-1)/2 bits. Three-layer (n,m,1): the multiplexing bound
// m * log2|T(H^{n - ceil(log2 m)})|, unavailable without selector room.
// Any depth: the estimated-capacity formula, up to an unspecified constant.
NetworkReport network_lower_bounds(const Architecture& arch);

// Capacity of a network whose inputs range over a Boolean set S: reduces to
// the full cube H^d via the VC dimension d of S (coordinate-projection
// shattering) and reports C(H^d, tail) exactly when enumerable, else its
// formula bounds. `sauer_shelah_floor` is the least d' with
// |S| <= sum_{k<=d'} binom(dim, k); it never exceeds the true d.
struct RestrictedReport {
  int vc_dim = 0;
  int sauer_shelah_floor = 0;
  NetworkReport reduction;
};

RestrictedReport restricted_capacity_bounds(const PointSet& s,
                                            const std::vector<long long>& tail,
                                            const EnumBudget& budget = {});

}  // namespace threshcap
