#pragma once

// Basic objects: finite point sets, dichotomies, threshold units/maps,
// layered networks, architectures, and truth tables.
//
// Threshold convention used everywhere: h(t) = 1 iff t >= 0 (ties fire).
// This tie rule is fixed and not configurable.

#include <threshcap/rational.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace threshcap {

inline int heaviside(const Rat& t) { return t >= 0 ? 1 : 0; }

// A finite list of distinct points in R^dim. Order is part of the identity:
// enumerations, labelings and reports follow it.
struct PointSet {
  int dim = 0;
  std::vector<std::vector<Rat>> pts;

  std::size_t size() const { return pts.size(); }
  bool is_boolean() const;  // every coordinate in {0,1}

  // Throws InputError on dimension mismatch or duplicate points.
  void validate() const;

  // H^n = {0,1}^n in lexicographic order, coordinate 1 most significant:
  // H^2 reads 00, 01, 10, 11.
  static PointSet cube(int n);
};

// Returns true when S is exactly H^dim (as a set).
bool is_full_cube(const PointSet& s);

// All pairwise concatenations u+v, in (u-major, v-minor) lexicographic order
// of the operands' own orders.
PointSet direct_sum(const PointSet& u, const PointSet& v);

// A labeling of a point set: labels[i] in {0,1} labels pts[i].
using Labeling = std::vector<std::uint8_t>;

// f(x) = h(<weights, x> + bias).
struct ThresholdUnit {
  std::vector<Rat> weights;
  Rat bias;

  int in_dim() const { return static_cast<int>(weights.size()); }
  Rat margin(const std::vector<Rat>& x) const;
  int eval(const std::vector<Rat>& x) const { return heaviside(margin(x)); }
  int eval_bits(const std::vector<std::uint8_t>& x) const;
};

// A layer: m units on a common input dimension; maps R^n -> H^m.
struct ThresholdMap {
  std::vector<ThresholdUnit> units;

  int in_dim() const { return units.empty() ? 0 : units.front().in_dim(); }
  int out_dim() const { return static_cast<int>(units.size()); }
  void validate() const;  // nonempty, consistent in_dim
  std::vector<std::uint8_t> eval(const std::vector<Rat>& x) const;
  std::vector<std::uint8_t> eval_bits(const std::vector<std::uint8_t>& x) const;
};

// Composition of maps; architecture (n_1, ..., n_L, out) must chain.
struct LayeredNetwork {
  int in_dim = 0;
  std::vector<ThresholdMap> maps;

  void validate() const;
  // Layer sizes including the input layer: (in_dim, out_1, ..., out_k).
  std::vector<long long> architecture() const;
  std::vector<std::uint8_t> eval_bits(const std::vector<std::uint8_t>& x) const;
  std::vector<std::uint8_t> eval(const std::vector<Rat>& x) const;
};

// A size profile (n_1, ..., n_L). Node/connection/parameter counts follow
// the convention that every non-input node carries a bias.
struct Architecture {
  std::vector<long long> sizes;

  Architecture() = default;
  explicit Architecture(std::vector<long long> s) : sizes(std::move(s)) {}

  long long layers() const { return static_cast<long long>(sizes.size()); }
  long long nodes() const;        // N = sum n_k
  long long connections() const;  // W = sum n_k * n_{k+1}
  long long parameters() const;   // P = W + sum_{k>=2} n_k
  void validate() const;          // all sizes >= 1, at least one layer
  std::string str() const;        // "(n1,n2,...)"
};

// Truth table of a map H^n -> H^m, n <= 20, m <= 64. Row i holds the output
// on the i-th cube point (lexicographic input order, coordinate 1 most
// significant); within a row, unit 1 occupies the most significant of the
// m packed bits, so printing rows as m-bit binary strings reads left-to-right
// in unit order.
struct TruthTable {
  int n = 0;
  int m = 0;
  std::vector<std::uint64_t> rows;

  bool operator==(const TruthTable& other) const = default;
  std::string row_str(std::size_t i) const;
};

std::uint64_t pack_bits(const std::vector<std::uint8_t>& bits);
std::vector<std::uint8_t> unpack_bits(std::uint64_t value, int width);

// Big-endian binary code of `value` in `width` bits (coordinate 1 most
// significant). Throws InputError if it does not fit.
std::vector<std::uint8_t> code_of(std::uint64_t value, int width);

TruthTable truth_table(const LayeredNetwork& net);
TruthTable truth_table(const ThresholdMap& map);

}  // namespace threshcap
