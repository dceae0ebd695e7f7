#pragma once

// Degree-d polynomial threshold capacity by monomial lifting: a polynomial
// threshold function of degree d on S in R^n is an affine threshold function
// on the image of S under the map listing all monomials of degrees 1..d, so
// exact counting and the linear bound machinery apply after lifting.

#include <threshcap/netcap.hpp>
#include <threshcap/setcap.hpp>

namespace threshcap {

// Exponent vectors of the monomials of degrees 1..d in n variables, graded
// lexicographic (degree-major; within a degree, lexicographically descending
// exponents). Squares of Boolean coordinates are kept even though x^2 = x on
// {0,1}: the lift mirrors the full coefficient layout of a polynomial.
struct MonomialBasis {
  int n = 0;
  int d = 0;
  std::vector<std::vector<int>> monomials;  // length M(n,d) - 1, no constant

  std::size_t size() const { return monomials.size(); }
};

MonomialBasis monomial_basis(int n, int d);

// M(n,d) = sum_{k=0}^d binom(n+k-1, k): the number of coefficients of a
// degree-d polynomial in n variables, constant term included.
Int monomial_count(long long n, long long d);

// Image of S under the monomial map, in dimension M(n,d) - 1. The degree-1
// block makes the map injective, so |lift(S)| = |S| and distinctness
// survives the lift.
PointSet monomial_lift(const PointSet& s, int d);

struct PolyCaps {
  std::size_t max_lift_dim = 4096;  // refuse wider lifts ("max-lift-dim")
};

// Exact degree-d dichotomy count of S via the lift, with the degree-d bound
// chain attached: 2 sum_{k < M} binom(|S|-1, k), then (M-1) log2 |S|, then
// (2en/d)^d log2 |S|. The log-form bounds appear once the lift dimension
// reaches 4 (and at least two points); the last additionally needs d <= n.
CapacityReport poly_capacity(const PointSet& s, int d, bool bounds_only = false,
                             const CountOptions& opt = {},
                             const PolyCaps& caps = {});

// Two-sided estimate for a single-hidden-layer network of m degree-d gates
// on n inputs: m n^{d+1}/d! below (asymptotic), and above that same value
// plus min(m^{d+1}/d!, n (2em/d)^d), with both branches of the min reported
// alongside the combined bound. e enters through a rational interval, upper
// endpoint, keeping every upper bound a valid exact rational.
NetworkReport poly_network_bounds(long long n, long long m, long long d);

}  // namespace threshcap
