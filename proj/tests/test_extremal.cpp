#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <threshcap/extremal.hpp>
#include <threshcap/netcap.hpp>

#include <optional>
#include <random>
#include <vector>

using namespace threshcap;

namespace {

// Mirrors the documented ranking order: better estimate first, then fewer
// layers, then lexicographically larger sizes.
bool ranked_before(bool maximize, const RankedArchitecture& a,
                   const RankedArchitecture& b) {
  if (a.estimated != b.estimated)
    return maximize ? a.estimated > b.estimated : a.estimated < b.estimated;
  if (a.arch.sizes.size() != b.arch.sizes.size())
    return a.arch.sizes.size() < b.arch.sizes.size();
  return a.arch.sizes > b.arch.sizes;
}

}  // namespace

TEST_CASE("optimal split of a node budget") {
  SUBCASE("pinned answers") {
    RankedArchitecture r = optimal_architecture_nodes(12);
    CHECK(r.arch.sizes == std::vector<long long>{8, 4});
    CHECK(r.estimated == 256);
    RankedArchitecture s = optimal_architecture_nodes(3);
    CHECK(s.arch.sizes == std::vector<long long>{2, 1});
    CHECK(s.estimated == 4);
    CHECK(optimal_architecture_nodes(2).arch.sizes ==
          std::vector<long long>{1, 1});
  }
  SUBCASE("exact divisibility reaches 4N^3/27") {
    for (long long n = 3; n <= 24; n += 3) {
      RankedArchitecture r = optimal_architecture_nodes(n);
      CHECK(r.estimated == Int(static_cast<long>(4 * n * n * n / 27)));
      CHECK(r.arch.sizes ==
            std::vector<long long>{2 * n / 3, n / 3});
    }
  }
  SUBCASE("matches the composition search") {
    for (long long n = 2; n <= 16; ++n) {
      RankedArchitecture closed = optimal_architecture_nodes(n);
      ExtremalSearch brute = brute_force_extremal(n, std::nullopt, true, 1);
      CHECK(closed.arch.sizes == brute.best.arch.sizes);
      CHECK(closed.estimated == brute.best.estimated);
    }
  }
  SUBCASE("validation") {
    CHECK_THROWS_AS(optimal_architecture_nodes(1), InputError);
  }
}

TEST_CASE("optimal split with a pinned input layer") {
  SUBCASE("pinned answers") {
    RankedArchitecture r = optimal_architecture_nodes_input(12, 4);
    CHECK(r.arch.sizes == std::vector<long long>{4, 6, 2});
    CHECK(r.estimated == 144);
    CHECK(r.estimated == Int(static_cast<long>(4 * 12 * 12 / 4)));
    RankedArchitecture s = optimal_architecture_nodes_input(12, 8);
    CHECK(s.arch.sizes == std::vector<long long>{8, 4});
    CHECK(s.estimated == 256);
  }
  SUBCASE("matches the composition search") {
    RankedArchitecture r = optimal_architecture_nodes_input(20, 6);
    ExtremalSearch brute = brute_force_extremal(20, 6, true, 1);
    CHECK(r.arch.sizes == brute.best.arch.sizes);
    CHECK(r.estimated == brute.best.estimated);
    for (long long n = 2; n <= 14; ++n)
      for (long long n1 = 1; n1 < n; ++n1) {
        RankedArchitecture closed = optimal_architecture_nodes_input(n, n1);
        ExtremalSearch b = brute_force_extremal(n, n1, true, 1);
        CHECK(closed.arch.sizes == b.best.arch.sizes);
        CHECK(closed.estimated == b.best.estimated);
      }
  }
  SUBCASE("validation") {
    CHECK_THROWS_AS(optimal_architecture_nodes_input(5, 0), InputError);
    CHECK_THROWS_AS(optimal_architecture_nodes_input(5, 5), InputError);
  }
}

TEST_CASE("minimal architecture under a budget") {
  SUBCASE("node budget gives the deepest chain") {
    Architecture a = minimal_architecture(BudgetKind::nodes, 7, 4);
    CHECK(a.sizes == std::vector<long long>{4, 1, 1, 1});
    Architecture b = minimal_architecture(BudgetKind::nodes, 5, 4);
    CHECK(b.sizes == std::vector<long long>{4, 1});
  }
  SUBCASE("connection budget is consumed exactly") {
    Architecture a = minimal_architecture(BudgetKind::connections, 10, 4);
    CHECK(a.sizes ==
          std::vector<long long>{4, 1, 1, 1, 1, 1, 1, 1});
    CHECK(a.connections() == 10);
  }
  SUBCASE("chains reach the minimum estimate") {
    // Other compositions can tie the chain's value with fewer layers (the
    // ranking then prefers them), so the invariant is value equality.
    for (long long n = 3; n <= 12; ++n)
      for (long long n1 = 1; n1 + 2 <= n; ++n1) {
        Architecture chain = minimal_architecture(BudgetKind::nodes, n, n1);
        ExtremalSearch b = brute_force_extremal(n, n1, false, 1);
        CHECK(estimated_capacity(chain).value == b.best.estimated);
      }
  }
  SUBCASE("infeasible budgets") {
    CHECK_THROWS_AS(minimal_architecture(BudgetKind::nodes, 4, 4),
                    InputError);
    CHECK_THROWS_AS(minimal_architecture(BudgetKind::connections, 3, 4),
                    InputError);
  }
}

TEST_CASE("composition search") {
  SUBCASE("pinned extrema") {
    CHECK(brute_force_extremal(12, std::nullopt, true, 1).best.arch.sizes ==
          std::vector<long long>{8, 4});
    CHECK(brute_force_extremal(12, 4, true, 1).best.arch.sizes ==
          std::vector<long long>{4, 6, 2});
    CHECK(brute_force_extremal(5, 3, false, 1).best.arch.sizes ==
          std::vector<long long>{3, 1, 1});
  }
  SUBCASE("full ranking is complete and strictly ordered") {
    ExtremalSearch s = brute_force_extremal(6, std::nullopt, true);
    CHECK(s.ranking.size() == 31);  // 2^5 compositions minus the single part
    for (std::size_t i = 0; i + 1 < s.ranking.size(); ++i)
      CHECK(ranked_before(true, s.ranking[i], s.ranking[i + 1]));
    CHECK(s.best.arch.sizes == s.ranking.front().arch.sizes);

    ExtremalSearch top = brute_force_extremal(6, std::nullopt, true, 3);
    REQUIRE(top.ranking.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(top.ranking[i].arch.sizes == s.ranking[i].arch.sizes);
      CHECK(top.ranking[i].estimated == s.ranking[i].estimated);
    }
  }
  SUBCASE("minimization orders the ranking the other way") {
    ExtremalSearch s = brute_force_extremal(7, std::nullopt, false);
    for (std::size_t i = 0; i + 1 < s.ranking.size(); ++i)
      CHECK(ranked_before(false, s.ranking[i], s.ranking[i + 1]));
  }
  SUBCASE("guards") {
    CHECK_THROWS_AS(brute_force_extremal(1, std::nullopt, true), InputError);
    CHECK_THROWS_AS(brute_force_extremal(12, 12, true), InputError);
    try {
      brute_force_extremal(31, std::nullopt, true);
      FAIL("expected a budget error");
    } catch (const BudgetError& e) {
      CHECK(e.budget == "max-compositions");
    }
  }
}

TEST_CASE("moving nodes into the input layer") {
  SUBCASE("pinned rewrites") {
    Architecture a = move_nodes_rewrite(Architecture({4, 3, 2, 1}));
    CHECK(a.sizes == std::vector<long long>{7, 3});
    CHECK(estimated_capacity(a).value == 147);
    CHECK(estimated_capacity(Architecture({4, 3, 2, 1})).value == 70);

    Architecture b = move_nodes_rewrite(Architecture({2, 5, 2}));
    CHECK(b.sizes == std::vector<long long>{4, 5});
    CHECK(estimated_capacity(b).value == 80);
    CHECK(estimated_capacity(Architecture({2, 5, 2})).value == 40);
  }
  SUBCASE("never decreases the estimate") {
    for (long long n = 3; n <= 12; ++n) {
      ExtremalSearch s = brute_force_extremal(n, std::nullopt, true);
      for (const RankedArchitecture& r : s.ranking) {
        if (r.arch.layers() < 3) continue;
        Architecture moved = move_nodes_rewrite(r.arch);
        CHECK(estimated_capacity(moved).value >= r.estimated);
      }
    }
  }
  SUBCASE("validation") {
    CHECK_THROWS_AS(move_nodes_rewrite(Architecture({4, 3})), InputError);
  }
}

TEST_CASE("input-layer ceilings on the estimate") {
  for (long long n = 2; n <= 13; ++n) {
    ExtremalSearch s = brute_force_extremal(n, std::nullopt, true);
    for (const RankedArchitecture& r : s.ranking) {
      const long long n1 = r.arch.sizes[0];
      if (2 * n1 <= n) {
        CHECK(4 * r.estimated <=
              Int(static_cast<long>(n1)) * static_cast<long>(n * n));
      }
      if (2 * n1 >= n) {
        CHECK(r.estimated <=
              Int(static_cast<long>(n1 * n1)) * static_cast<long>(n - n1));
      }
    }
  }
}

TEST_CASE("region bound for one hidden layer") {
  SUBCASE("pinned values") {
    RegionBound a = shallow_region_bound(2, 3);
    CHECK(a.regions == 7);
    RegionBound b = shallow_region_bound(2, 2);
    CHECK(b.regions == 4);
    CHECK(b.assignment_bound == 14);
    CHECK(shallow_region_bound(2, 0).regions == 1);
    CHECK(shallow_region_bound(2, 0).assignment_bound == 2);
  }
  SUBCASE("region count is the binomial tail") {
    for (long long n = 1; n <= 5; ++n)
      for (long long m = 0; m <= 7; ++m) {
        Int sum = 0;
        for (long long k = 0; k <= n; ++k)
          sum += binomial(static_cast<unsigned long>(m),
                          static_cast<unsigned long>(k));
        CHECK(shallow_region_bound(n, m).regions == sum);
      }
  }
  SUBCASE("validation") {
    CHECK_THROWS_AS(shallow_region_bound(0, 2), InputError);
  }
}

TEST_CASE("quadratic form gap") {
  SUBCASE("pinned equalities") {
    QuadraticFormGap a = quadratic_form_gap({Rat(1), Rat(1)});
    CHECK(a.lhs == 4);
    CHECK(a.rhs == 4);
    QuadraticFormGap b = quadratic_form_gap({Rat(1), Rat(2), Rat(1)});
    CHECK(b.lhs == 16);
    CHECK(b.rhs == 16);
    QuadraticFormGap c = quadratic_form_gap({Rat(5)});
    CHECK(c.lhs == 25);
    CHECK(c.rhs == 0);
  }
  SUBCASE("random positive vectors satisfy the inequality") {
    std::mt19937 rng(424242);
    std::uniform_int_distribution<long> num(1, 40);
    std::uniform_int_distribution<long> den(1, 9);
    std::uniform_int_distribution<int> len(1, 9);
    for (int trial = 0; trial < 300; ++trial) {
      std::vector<Rat> x;
      const int k = len(rng);
      for (int i = 0; i < k; ++i) {
        Rat v(num(rng), den(rng));
        v.canonicalize();
        x.push_back(v);
      }
      QuadraticFormGap g = quadratic_form_gap(x);
      CHECK(g.lhs >= g.rhs);
    }
  }
  SUBCASE("validation") {
    CHECK_THROWS_AS(quadratic_form_gap({}), InputError);
    CHECK_THROWS_AS(quadratic_form_gap({Rat(1), Rat(0)}), InputError);
    CHECK_THROWS_AS(quadratic_form_gap({Rat(-1)}), InputError);
  }
}
