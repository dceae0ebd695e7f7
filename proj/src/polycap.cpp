#include <threshcap/polycap.hpp>

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace threshcap {

namespace {

Rat rational(long num, long den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// Rational interval containing e; bounds pick the endpoint that keeps them
// conservative for their direction.
const Rat kEulerHigh = rational(2718282, 1000000);

void exponents_of_degree(int n, int pos, int remaining, std::vector<int>& cur,
                         std::vector<std::vector<int>>& out) {
  if (pos == n - 1) {
    cur[pos] = remaining;
    out.push_back(cur);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    cur[pos] = e;
    exponents_of_degree(n, pos + 1, remaining - e, cur, out);
  }
}

Int factorial(unsigned long k) {
  Int f;
  mpz_fac_ui(f.get_mpz_t(), k);
  return f;
}

Rat ratio(Int num, const Int& den) {
  Rat r(std::move(num), den);
  r.canonicalize();
  return r;
}

// The three-term upper-bound chain for degree-d functions on m points in
// R^n, each term valid on its own once its hypotheses hold.
std::vector<Bound> poly_bound_chain(int n, int d, std::size_t m) {
  std::vector<Bound> bounds;
  const Int lift_dim = monomial_count(n, d) - 1;

  {
    Bound b;
    b.name = "poly-count-upper";
    b.statement = "lift-dichotomies-bounded-by-binomial-region-count";
    b.is_upper = true;
    // Terms with k > m - 1 vanish, so the sum is capped there.
    unsigned long top = static_cast<unsigned long>(m - 1);
    if (lift_dim < static_cast<long>(top)) top = lift_dim.get_ui();
    Int c = 0;
    for (unsigned long k = 0; k <= top; ++k)
      c += binomial(static_cast<unsigned long>(m - 1), k);
    c *= 2;
    b.bits = log2_int(c);
    b.count = std::move(c);
    bounds.push_back(std::move(b));
  }
  if (lift_dim >= 4 && m >= 2) {
    Bound b;
    b.name = "poly-log-upper-dimension";
    b.statement = "capacity-at-most-lift-dimension-times-log2-size";
    b.is_upper = true;
    Int c;
    mpz_ui_pow_ui(c.get_mpz_t(), static_cast<unsigned long>(m),
                  lift_dim.get_ui());
    b.bits = log2_int(c);
    b.count = std::move(c);
    bounds.push_back(std::move(b));

    if (d <= n) {
      Bound e;
      e.name = "poly-log-upper-entropy";
      e.statement = "capacity-at-most-(2en/d)^d-log2-size";
      e.is_upper = true;
      Rat base = Rat(2) * kEulerHigh * static_cast<long>(n);
      base /= static_cast<long>(d);
      Rat factor = pow_rat(base, static_cast<unsigned long>(d));
      e.bits = factor.get_d() * std::log2(static_cast<double>(m));
      bounds.push_back(std::move(e));
    }
  }
  return bounds;
}

}  // namespace

MonomialBasis monomial_basis(int n, int d) {
  if (n < 1) throw InputError("monomial basis requires n >= 1");
  if (d < 1) throw InputError("monomial basis requires degree >= 1");
  MonomialBasis basis;
  basis.n = n;
  basis.d = d;
  std::vector<int> cur(static_cast<std::size_t>(n), 0);
  for (int k = 1; k <= d; ++k)
    exponents_of_degree(n, 0, k, cur, basis.monomials);
  return basis;
}

Int monomial_count(long long n, long long d) {
  if (n < 1) throw InputError("monomial count requires n >= 1");
  if (d < 0) throw InputError("monomial count requires degree >= 0");
  Int total = 0;
  for (long long k = 0; k <= d; ++k)
    total += binomial(static_cast<unsigned long>(n + k - 1),
                      static_cast<unsigned long>(k));
  return total;
}

PointSet monomial_lift(const PointSet& s, int d) {
  s.validate();
  if (s.dim < 1) throw InputError("monomial lift requires dimension >= 1");
  MonomialBasis basis = monomial_basis(s.dim, d);
  PointSet lifted;
  lifted.dim = static_cast<int>(basis.size());
  lifted.pts.reserve(s.size());
  for (const auto& p : s.pts) {
    std::vector<Rat> row;
    row.reserve(basis.size());
    for (const auto& expo : basis.monomials) {
      Rat value = 1;
      for (int i = 0; i < s.dim; ++i)
        if (expo[i] > 0)
          value *= pow_rat(p[i], static_cast<unsigned long>(expo[i]));
      row.push_back(std::move(value));
    }
    lifted.pts.push_back(std::move(row));
  }
  return lifted;
}

CapacityReport poly_capacity(const PointSet& s, int d, bool bounds_only,
                             const CountOptions& opt, const PolyCaps& caps) {
  s.validate();
  if (s.size() == 0) throw InputError("empty point set");
  if (d < 1) throw InputError("polynomial capacity requires degree >= 1");
  const Int lift_dim = monomial_count(s.dim, d) - 1;
  if (lift_dim > static_cast<long>(caps.max_lift_dim))
    throw BudgetError("max-lift-dim",
                      "lift dimension " + lift_dim.get_str() + " exceeds cap " +
                          std::to_string(caps.max_lift_dim));
  CapacityReport rep;
  rep.set_size = s.size();
  rep.dim = s.dim;
  rep.boolean = s.is_boolean();
  rep.bounds = poly_bound_chain(s.dim, d, s.size());
  if (!bounds_only) {
    rep.exact_count = count_threshold_functions(monomial_lift(s, d), opt);
    rep.exact_bits = log2_int(*rep.exact_count);
  }
  return rep;
}

NetworkReport poly_network_bounds(long long n, long long m, long long d) {
  if (n < 1 || m < 1)
    throw InputError("polynomial network bounds require n >= 1 and m >= 1");
  if (d < 1) throw InputError("polynomial network bounds require degree >= 1");
  NetworkReport rep;
  rep.sizes = {n, m, 1};

  const Int d_fact = factorial(static_cast<unsigned long>(d));
  Int n_pow;
  mpz_ui_pow_ui(n_pow.get_mpz_t(), static_cast<unsigned long>(n),
                static_cast<unsigned long>(d + 1));
  const Rat hidden = ratio(Int(static_cast<long>(m)) * n_pow, d_fact);

  Int m_pow;
  mpz_ui_pow_ui(m_pow.get_mpz_t(), static_cast<unsigned long>(m),
                static_cast<unsigned long>(d + 1));
  const Rat output_factorial = ratio(std::move(m_pow), d_fact);

  Rat base = Rat(2) * kEulerHigh * static_cast<long>(m);
  base /= static_cast<long>(d);
  const Rat output_entropy =
      Rat(static_cast<long>(n)) * pow_rat(base, static_cast<unsigned long>(d));

  auto add = [&rep](std::string name, std::string statement, bool upper,
                    Rat bits_value, std::vector<std::string> flags) {
    NetworkBound b;
    b.name = std::move(name);
    b.statement = std::move(statement);
    b.is_upper = upper;
    b.bits = bits_value.get_d();
    b.exact_bits = std::move(bits_value);
    b.flags = std::move(flags);
    rep.bounds.push_back(std::move(b));
  };

  add("poly-lower-hidden-product", "hidden-gates-contribute-m-n^(d+1)/d!-bits",
      false, hidden, {"asymptotic"});
  add("poly-upper-unit-sum",
      "per-unit-sum-m-n^(d+1)/d!-plus-smaller-output-term", true,
      hidden + std::min(output_factorial, output_entropy), {});
  add("poly-upper-output-factorial",
      "output-gate-bounded-by-m^(d+1)/d!-bits", true,
      hidden + output_factorial, {"min-branch"});
  add("poly-upper-output-dimension",
      "output-gate-bounded-by-n-(2em/d)^d-bits-with-e-rounded-up", true,
      hidden + output_entropy, {"min-branch"});
  return rep;
}

}  // namespace threshcap
