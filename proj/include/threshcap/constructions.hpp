#pragma once

#include <threshcap/core.hpp>

#include <optional>
#include <string>
#include <vector>

namespace threshcap {

// Size limits for constructions that verify themselves exhaustively.
// `verify_bits` caps the log2 of any enumerated verification domain;
// `max_outputs` caps the component count of a constructed map.
struct ConstructionCaps {
  int verify_bits = 16;
  int max_outputs = 256;
};

enum class LogicKind { AND, OR, NOT, IDENTITY };

// Unit that outputs 1 exactly when the input equals `theta` over the cube:
// weights 2 theta_i - 1, bias -(sum theta_i) + 1/2.
ThresholdUnit equality_indicator(const std::vector<Rat>& theta);

// Classical gate units. NOT and IDENTITY require fan_in = 1.
ThresholdUnit logic_unit(LogicKind kind, int fan_in);

// Unit computing u(x) AND (y == theta) on H^{n+q}: the inner expression of u
// is rescaled into [-1/2, 0] on its accepting class and below -1/2 on the
// rejecting class, then an equality indicator on y is added. Exhaustively
// verified against the defining conjunction before returning.
ThresholdUnit add_clause(const ThresholdUnit& u, const std::vector<Rat>& theta,
                         const ConstructionCaps& caps = {});

// The map H^k -> H^{2^k} sending the numeral x (big-endian) to the binary
// representation of 2^x: component j fires exactly when the input's numeral
// value is 2^k - j (1-based j). A bijection onto the canonical basis vectors.
ThresholdMap exponential_map(int k, const ConstructionCaps& caps = {});

// Integer block data balancing a cube-to-cube embedding: n0/k = m0/2^k with
// k in [2, n/2], n0 in [n/2, n], m0 in [m/8, m/2]. `x` estimates the real
// root of 2^x/x = m/(2n); all range checks are exact integer identities.
struct BalanceParameters {
  long long k = 0;
  long long n0 = 0;
  long long m0 = 0;
  Rat x;
};

BalanceParameters balance_parameters(long long n, long long m);

// An injective threshold map H^n -> H^m whose image has near-maximal
// capacity. Routes: an exact blockwise split when (n/k) 2^k = m has an
// integer solution; identity plus zero padding when m <= 4n; otherwise a
// balanced blockwise core extended by the identity and zero padding.
struct EnrichmentResult {
  ThresholdMap map;
  std::string route;  // "balanced-blockwise" | "identity" | "balanced-general"
  bool verified = false;  // exhaustive injectivity check ran and passed
  std::optional<BalanceParameters> balance;  // set on the general route
};

EnrichmentResult enrichment_map(long long n, long long m,
                                const ConstructionCaps& caps = {});

// Selector bookkeeping for routing m functions through one output:
// sigma[i] is the injective code of function i+1 in H^{m_minus}.
struct MultiplexPlan {
  long long m = 0;
  long long m_minus = 0;
  std::vector<Labeling> sigma;
};

// Network of shape (n + m_minus, m, 1) computing f_i(x) on input
// x (+) sigma(i), and 0 when the selector matches no code. Verified
// exhaustively over s (+) H^{m_minus} before returning.
struct MultiplexResult {
  LayeredNetwork network;
  MultiplexPlan plan;
};

MultiplexResult multiplex(const PointSet& s,
                          const std::vector<ThresholdUnit>& functions,
                          const ConstructionCaps& caps = {});

// Width accounting for one assembled stage, aligned with the target layer
// `index`: `cap` is 2 + 2(n_index + l_minus) + (nbar_index + l_minus); the
// assembly is asserted to stay within it. `six_n` = 6 n_index is reported
// for comparison (it dominates `cap` only for wide-enough layers).
struct StackLayerAccount {
  std::size_t index = 0;
  long long width = 0;
  long long cap = 0;
  long long six_n = 0;
};

struct StackPlan {
  long long l_minus = 0;
  std::vector<Labeling> eta;           // eta[k] = selector code of module k+1
  std::vector<long long> projections;  // input prefix width fed to module k+1
  std::vector<std::vector<long long>> module_shapes;
  std::vector<StackLayerAccount> widths;
};

// Chains M = L-3 single-output modules, module k of shape
// (min(n_1..n_k), n_{k+1}, n_{k+2}, 1) against a target profile
// (n_1,...,n_L): selector bits route the modules, identity units carry
// pass-through values, and an OR chain accumulates their outputs. The
// result computes module k's function on the input prefix whenever the
// selector equals eta(k), verified exhaustively before returning.
struct StackResult {
  LayeredNetwork network;
  StackPlan plan;
};

StackResult stack(const std::vector<LayeredNetwork>& modules,
                  const Architecture& target,
                  const ConstructionCaps& caps = {});

// Exhaustive comparison of a network against a reference truth table.
// On mismatch, `counterexample` holds the first differing input.
struct EquivalenceResult {
  bool equal = true;
  std::optional<std::vector<std::uint8_t>> counterexample;
};

EquivalenceResult verify_equivalence(const LayeredNetwork& net,
                                     const TruthTable& reference,
                                     const ConstructionCaps& caps = {});

}  // namespace threshcap
