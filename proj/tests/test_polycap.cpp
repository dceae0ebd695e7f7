#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <threshcap/polycap.hpp>
#include <threshcap/separability.hpp>

#include <algorithm>
#include <random>
#include <vector>

using namespace threshcap;

namespace {

PointSet subset_of_cube(int n, const std::vector<std::size_t>& indices) {
  PointSet cube = PointSet::cube(n);
  PointSet out;
  out.dim = n;
  for (std::size_t i : indices) out.pts.push_back(cube.pts[i]);
  return out;
}

const Bound* find_bound(const CapacityReport& rep, const std::string& name) {
  for (const auto& b : rep.bounds)
    if (b.name == name) return &b;
  return nullptr;
}

const NetworkBound* find_bound(const NetworkReport& rep,
                               const std::string& name) {
  for (const auto& b : rep.bounds)
    if (b.name == name) return &b;
  return nullptr;
}

}  // namespace

TEST_CASE("monomial counting and basis layout") {
  SUBCASE("pinned counts") {
    CHECK(monomial_count(2, 2) == 6);
    CHECK(monomial_count(3, 2) == 10);
    CHECK(monomial_count(3, 3) == 20);
    for (long long n = 1; n <= 6; ++n) {
      CHECK(monomial_count(n, 0) == 1);
      CHECK(monomial_count(n, 1) == static_cast<long>(n + 1));
    }
  }
  SUBCASE("two-variable quadratic basis is pinned") {
    MonomialBasis basis = monomial_basis(2, 2);
    std::vector<std::vector<int>> want = {
        {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
    CHECK(basis.monomials == want);
    CHECK(basis.size() == 5);
  }
  SUBCASE("basis size always matches the coefficient count") {
    for (int n = 1; n <= 4; ++n)
      for (int d = 1; d <= 4; ++d) {
        MonomialBasis basis = monomial_basis(n, d);
        CHECK(Int(static_cast<long>(basis.size())) + 1 ==
              monomial_count(n, d));
        // degree-1 block first: the unit exponent vectors in variable order
        for (int i = 0; i < n; ++i) {
          std::vector<int> unit(static_cast<std::size_t>(n), 0);
          unit[static_cast<std::size_t>(i)] = 1;
          CHECK(basis.monomials[static_cast<std::size_t>(i)] == unit);
        }
        // graded: degrees never decrease along the list
        int prev = 1;
        for (const auto& expo : basis.monomials) {
          int deg = 0;
          for (int e : expo) deg += e;
          CHECK(deg >= prev);
          CHECK(deg <= d);
          prev = deg;
        }
      }
  }
  SUBCASE("domain errors") {
    CHECK_THROWS_AS(monomial_basis(0, 1), InputError);
    CHECK_THROWS_AS(monomial_basis(2, 0), InputError);
    CHECK_THROWS_AS(monomial_count(0, 1), InputError);
    CHECK_THROWS_AS(monomial_count(3, -1), InputError);
  }
}

TEST_CASE("monomial lift") {
  SUBCASE("quadratic lift of the square, pinned coordinates") {
    PointSet lifted = monomial_lift(PointSet::cube(2), 2);
    CHECK(lifted.dim == 5);
    CHECK(lifted.size() == 4);
    // cube order 00, 01, 10, 11; basis order x1, x2, x1^2, x1x2, x2^2
    CHECK(lifted.pts[3] == std::vector<Rat>{1, 1, 1, 1, 1});
    CHECK(lifted.pts[2] == std::vector<Rat>{1, 0, 1, 0, 0});
    CHECK(lifted.pts[1] == std::vector<Rat>{0, 1, 0, 0, 1});
    CHECK(lifted.pts[0] == std::vector<Rat>{0, 0, 0, 0, 0});
    CHECK_NOTHROW(lifted.validate());
  }
  SUBCASE("degree one is the identity") {
    PointSet cube = PointSet::cube(3);
    CHECK(monomial_lift(cube, 1).pts == cube.pts);
    PointSet ragged;
    ragged.dim = 2;
    ragged.pts = {{Rat(1, 2), Rat(3)}, {Rat(-1), Rat(2, 5)}};
    CHECK(monomial_lift(ragged, 1).pts == ragged.pts);
  }
  SUBCASE("squares duplicate Boolean columns") {
    for (int n = 2; n <= 3; ++n) {
      PointSet lifted = monomial_lift(PointSet::cube(n), 2);
      MonomialBasis basis = monomial_basis(n, 2);
      for (int i = 0; i < n; ++i) {
        // find the x_i^2 column
        std::vector<int> square(static_cast<std::size_t>(n), 0);
        square[static_cast<std::size_t>(i)] = 2;
        auto it =
            std::find(basis.monomials.begin(), basis.monomials.end(), square);
        REQUIRE(it != basis.monomials.end());
        auto col = static_cast<std::size_t>(it - basis.monomials.begin());
        for (const auto& p : lifted.pts)
          CHECK(p[col] == p[static_cast<std::size_t>(i)]);
      }
    }
  }
  SUBCASE("rational points lift exactly") {
    PointSet s;
    s.dim = 1;
    s.pts = {{Rat(1, 2)}, {Rat(2)}, {Rat(-3, 4)}};
    PointSet lifted = monomial_lift(s, 3);
    CHECK(lifted.dim == 3);
    CHECK(lifted.pts[0] == std::vector<Rat>{Rat(1, 2), Rat(1, 4), Rat(1, 8)});
    CHECK(lifted.pts[1] == std::vector<Rat>{2, 4, 8});
    CHECK(lifted.pts[2] ==
          std::vector<Rat>{Rat(-3, 4), Rat(9, 16), Rat(-27, 64)});
  }
  SUBCASE("lift keeps cardinality on every small cube") {
    for (int n = 1; n <= 3; ++n)
      for (int d = 1; d <= 3; ++d) {
        PointSet lifted = monomial_lift(PointSet::cube(n), d);
        CHECK(lifted.size() == PointSet::cube(n).size());
        CHECK(Int(lifted.dim) + 1 == monomial_count(n, d));
        CHECK_NOTHROW(lifted.validate());
      }
  }
  SUBCASE("degree zero is refused") {
    CHECK_THROWS_AS(monomial_lift(PointSet::cube(2), 0), InputError);
  }
}

TEST_CASE("degree capacity via the lift") {
  SUBCASE("quadratic capacity of the square is all dichotomies") {
    CapacityReport rep = poly_capacity(PointSet::cube(2), 2);
    REQUIRE(rep.exact_count.has_value());
    CHECK(*rep.exact_count == 16);
    CHECK(*rep.exact_bits == doctest::Approx(4.0));
  }
  SUBCASE("parity needs the mixed monomial") {
    PointSet square = PointSet::cube(2);
    Labeling xorl = {0, 1, 1, 0};
    CHECK_FALSE(is_separable(square, xorl).separable);
    CHECK(is_separable(monomial_lift(square, 2), xorl).separable);
  }
  SUBCASE("degree one agrees with the affine count") {
    std::vector<PointSet> sets;
    sets.push_back(PointSet::cube(1));
    sets.push_back(PointSet::cube(2));
    sets.push_back(PointSet::cube(3));
    sets.push_back(subset_of_cube(3, {0, 3, 5, 6}));
    sets.push_back(subset_of_cube(4, {1, 2, 4, 8, 15}));
    PointSet ragged;
    ragged.dim = 2;
    ragged.pts = {{Rat(1, 2), Rat(0)}, {Rat(2), Rat(1)}, {Rat(0), Rat(3, 7)}};
    sets.push_back(ragged);
    for (const auto& s : sets) {
      CapacityReport rep = poly_capacity(s, 1);
      REQUIRE(rep.exact_count.has_value());
      CHECK(*rep.exact_count == count_threshold_functions(s));
    }
  }
  SUBCASE("degree at least n saturates Boolean sets") {
    CHECK(*poly_capacity(PointSet::cube(2), 2).exact_count == 16);
    CHECK(*poly_capacity(PointSet::cube(2), 3).exact_count == 16);
    CHECK(*poly_capacity(PointSet::cube(3), 3).exact_count == 256);
    PointSet part = subset_of_cube(3, {0, 2, 3, 5, 7});
    CHECK(*poly_capacity(part, 3).exact_count == 32);
  }
  SUBCASE("counts never decrease with the degree") {
    PointSet cube3 = PointSet::cube(3);
    Int c1 = *poly_capacity(cube3, 1).exact_count;
    Int c2 = *poly_capacity(cube3, 2).exact_count;
    Int c3 = *poly_capacity(cube3, 3).exact_count;
    CHECK(c1 == 104);
    CHECK(c1 <= c2);
    CHECK(c2 <= c3);
    CHECK(c3 == 256);

    std::mt19937 rng(20260816);
    for (int trial = 0; trial < 3; ++trial) {
      std::vector<std::size_t> all(16);
      for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
      std::shuffle(all.begin(), all.end(), rng);
      all.resize(6);
      std::sort(all.begin(), all.end());
      PointSet s = subset_of_cube(4, all);
      Int prev = 0;
      for (int d = 1; d <= 4; ++d) {
        Int cur = *poly_capacity(s, d).exact_count;
        CHECK(cur >= prev);
        prev = cur;
      }
      CHECK(prev == 64);  // saturation: degree matches the variable count
    }
  }
  SUBCASE("bound chain is present, ordered, and monotone") {
    for (int n = 2; n <= 4; ++n)
      for (int d = 2; d <= n; ++d) {
        PointSet s = PointSet::cube(n);
        CapacityReport rep = poly_capacity(s, d, true);
        CHECK_FALSE(rep.exact_count.has_value());
        const Bound* first = find_bound(rep, "poly-count-upper");
        const Bound* second = find_bound(rep, "poly-log-upper-dimension");
        const Bound* third = find_bound(rep, "poly-log-upper-entropy");
        REQUIRE(first != nullptr);
        REQUIRE(second != nullptr);
        REQUIRE(third != nullptr);
        REQUIRE(first->count.has_value());
        REQUIRE(second->count.has_value());
        CHECK(*first->count <= *second->count);
        // last chain step, checked rationally with e rounded down
        Rat e_low(2718281, 1000000);
        e_low.canonicalize();
        Rat factor = pow_rat(Rat(2) * e_low * n / d,
                             static_cast<unsigned long>(d));
        CHECK(monomial_count(n, d) - 1 <= factor);
      }
  }
  SUBCASE("exact count sits inside its own bounds") {
    for (int n = 2; n <= 3; ++n)
      for (int d = 1; d <= n; ++d) {
        CapacityReport rep = poly_capacity(PointSet::cube(n), d);
        REQUIRE(rep.exact_count.has_value());
        for (const auto& b : rep.bounds) {
          if (!b.count.has_value()) continue;
          if (b.is_upper)
            CHECK(*rep.exact_count <= *b.count);
          else
            CHECK(*rep.exact_count >= *b.count);
        }
      }
  }
  SUBCASE("entropy bound only below the variable count") {
    CapacityReport rep = poly_capacity(PointSet::cube(2), 4, true);
    CHECK(find_bound(rep, "poly-count-upper") != nullptr);
    CHECK(find_bound(rep, "poly-log-upper-dimension") != nullptr);
    CHECK(find_bound(rep, "poly-log-upper-entropy") == nullptr);
  }
  SUBCASE("lift cap refuses wide bases") {
    PolyCaps caps;
    caps.max_lift_dim = 4;
    try {
      poly_capacity(PointSet::cube(2), 2, false, {}, caps);
      FAIL("expected a budget refusal");
    } catch (const BudgetError& e) {
      CHECK(e.budget == "max-lift-dim");
    }
  }
  SUBCASE("report metadata reflects the input set") {
    PointSet s = subset_of_cube(3, {1, 2, 4});
    CapacityReport rep = poly_capacity(s, 2, true);
    CHECK(rep.set_size == 3);
    CHECK(rep.dim == 3);
    CHECK(rep.boolean);
    CHECK_THROWS_AS(poly_capacity(s, 0), InputError);
    PointSet empty;
    empty.dim = 2;
    CHECK_THROWS_AS(poly_capacity(empty, 2), InputError);
  }
}

TEST_CASE("single-hidden-layer degree bounds") {
  SUBCASE("degree one recovers the quadratic-in-n shape") {
    NetworkReport rep = poly_network_bounds(5, 3, 1);
    const NetworkBound* lower = find_bound(rep, "poly-lower-hidden-product");
    const NetworkBound* upper = find_bound(rep, "poly-upper-unit-sum");
    REQUIRE(lower != nullptr);
    REQUIRE(upper != nullptr);
    REQUIRE(lower->exact_bits.has_value());
    REQUIRE(upper->exact_bits.has_value());
    CHECK(*lower->exact_bits == Rat(75));  // m n^2 = 3 * 25
    CHECK(*upper->exact_bits == Rat(84));  // + min(m^2, n 2em) = + 9
    CHECK(std::count(lower->flags.begin(), lower->flags.end(), "asymptotic") ==
          1);
    CHECK(upper->flags.empty());
    CHECK(rep.sizes == std::vector<long long>{5, 3, 1});
  }
  SUBCASE("pinned quadratic example with both min branches") {
    NetworkReport rep = poly_network_bounds(4, 3, 2);
    const NetworkBound* lower = find_bound(rep, "poly-lower-hidden-product");
    const NetworkBound* upper = find_bound(rep, "poly-upper-unit-sum");
    const NetworkBound* fact = find_bound(rep, "poly-upper-output-factorial");
    const NetworkBound* dim = find_bound(rep, "poly-upper-output-dimension");
    REQUIRE(lower != nullptr);
    REQUIRE(upper != nullptr);
    REQUIRE(fact != nullptr);
    REQUIRE(dim != nullptr);
    CHECK(*lower->exact_bits == Rat(96));       // 3 * 4^3 / 2!
    CHECK(*fact->exact_bits == Rat(96) + Rat(27, 2));
    Rat e_high(2718282, 1000000);
    e_high.canonicalize();
    CHECK(*dim->exact_bits == Rat(96) + Rat(4) * pow_rat(Rat(3) * e_high, 2));
    CHECK(*upper->exact_bits == std::min(*fact->exact_bits, *dim->exact_bits));
    CHECK(*upper->exact_bits == Rat(219, 2));
    CHECK(std::count(fact->flags.begin(), fact->flags.end(), "min-branch") ==
          1);
    CHECK(std::count(dim->flags.begin(), dim->flags.end(), "min-branch") == 1);
  }
  SUBCASE("one hidden gate collapses toward a single-unit bound") {
    NetworkReport rep = poly_network_bounds(6, 1, 2);
    const NetworkBound* lower = find_bound(rep, "poly-lower-hidden-product");
    const NetworkBound* upper = find_bound(rep, "poly-upper-unit-sum");
    CHECK(*lower->exact_bits == Rat(108));  // 6^3 / 2!
    CHECK(*upper->exact_bits == Rat(217, 2));
  }
  SUBCASE("bounds scale with the hidden width") {
    for (long long d = 1; d <= 3; ++d) {
      Rat narrow = *find_bound(poly_network_bounds(4, 2, d),
                               "poly-lower-hidden-product")
                        ->exact_bits;
      Rat wide = *find_bound(poly_network_bounds(4, 5, d),
                             "poly-lower-hidden-product")
                      ->exact_bits;
      CHECK(narrow < wide);
      CHECK(Rat(5, 2) * narrow == wide);
    }
  }
  SUBCASE("upper never falls below lower on a grid") {
    for (long long n = 1; n <= 6; ++n)
      for (long long m = 1; m <= 6; ++m)
        for (long long d = 1; d <= 4; ++d) {
          NetworkReport rep = poly_network_bounds(n, m, d);
          Rat lo = *find_bound(rep, "poly-lower-hidden-product")->exact_bits;
          Rat hi = *find_bound(rep, "poly-upper-unit-sum")->exact_bits;
          CHECK(lo < hi);
          for (const auto& b : rep.bounds)
            if (b.is_upper) CHECK(hi <= *b.exact_bits);
        }
  }
  SUBCASE("domain errors") {
    CHECK_THROWS_AS(poly_network_bounds(0, 3, 1), InputError);
    CHECK_THROWS_AS(poly_network_bounds(3, 0, 1), InputError);
    CHECK_THROWS_AS(poly_network_bounds(3, 3, 0), InputError);
  }
}
