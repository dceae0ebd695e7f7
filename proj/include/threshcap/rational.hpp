#pragma once

// Exact arithmetic carriers: arbitrary-precision integers and rationals in
// canonical form (lowest terms, positive denominator).

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace threshcap {

using Int = mpz_class;
using Rat = mpq_class;

// Raised on malformed user input (files, flags, out-of-domain arguments).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a requested computation exceeds a configured budget.
// `budget` names the limit that was hit.
struct BudgetError : std::runtime_error {
  std::string budget;
  BudgetError(std::string budget_name, const std::string& what)
      : std::runtime_error(what), budget(std::move(budget_name)) {}
};

// Raised when an exhaustive correctness check fails.
struct VerificationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parses "p", "-p", or "p/q" (q > 0 after canonicalization). Throws InputError.
Rat parse_rat(const std::string& text);

// Serializes a rational as "p" or "p/q" in lowest terms, denominator positive.
std::string rat_str(const Rat& value);

// Exact binomial coefficient; zero when k > n.
Int binomial(unsigned long n, unsigned long k);

// log2 of a positive big integer, as a double.
double log2_int(const Int& value);

// 2^e for e >= 0.
Int pow2(unsigned long exponent);

// Exact integer power of a rational, e >= 0.
Rat pow_rat(const Rat& base, unsigned long exponent);

}  // namespace threshcap
