#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <threshcap/netcap.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <vector>

using namespace threshcap;

namespace {

EnumBudget roomy() {
  EnumBudget b;
  b.max_depth = 5;
  b.per_layer_functions = 20000;
  b.max_tuples = 1u << 22;
  return b;
}

PointSet set_from_codes(int dim, const std::vector<std::uint64_t>& codes) {
  PointSet s;
  s.dim = dim;
  for (auto code : codes) {
    std::vector<Rat> p;
    for (auto bit : code_of(code, dim)) p.push_back(Rat(static_cast<int>(bit)));
    s.pts.push_back(std::move(p));
  }
  return s;
}

// Naive reference: walk the layers keeping every composed map (duplicates and
// all), enumerating threshold functions afresh on each map's image, and only
// dedupe the final list. Independent of the library's staged enumerator.
std::set<FunctionTable> naive_network_functions(const Architecture& arch,
                                                const PointSet& s) {
  std::vector<Labeling> base = enumerate_threshold_functions(s);
  std::vector<FunctionTable> current;
  long long w = arch.sizes[1];
  std::vector<std::size_t> pick(w, 0);
  std::function<void(long long)> tuples = [&](long long depth) {
    if (depth == w) {
      FunctionTable t(s.size(), 0);
      for (std::size_t i = 0; i < s.size(); ++i)
        for (long long j = 0; j < w; ++j)
          t[i] |= static_cast<std::uint64_t>(base[pick[j]][i]) << (w - 1 - j);
      current.push_back(t);
      return;
    }
    for (std::size_t c = 0; c < base.size(); ++c) {
      pick[depth] = c;
      tuples(depth + 1);
    }
  };
  tuples(0);

  for (std::size_t layer = 2; layer < arch.sizes.size(); ++layer) {
    long long in_w = arch.sizes[layer - 1];
    long long out_w = arch.sizes[layer];
    std::vector<FunctionTable> next;
    for (const FunctionTable& g : current) {
      std::vector<std::uint64_t> codes(g);
      std::sort(codes.begin(), codes.end());
      codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
      PointSet image = set_from_codes(static_cast<int>(in_w), codes);
      std::vector<Labeling> funcs = enumerate_threshold_functions(image);
      std::vector<std::size_t> choice(out_w, 0);
      std::function<void(long long)> emit = [&](long long depth) {
        if (depth == out_w) {
          FunctionTable t(g.size(), 0);
          for (std::size_t i = 0; i < g.size(); ++i) {
            std::size_t slot = static_cast<std::size_t>(
                std::lower_bound(codes.begin(), codes.end(), g[i]) -
                codes.begin());
            for (long long j = 0; j < out_w; ++j)
              t[i] |= static_cast<std::uint64_t>(funcs[choice[j]][slot])
                      << (out_w - 1 - j);
          }
          next.push_back(t);
          return;
        }
        for (std::size_t c = 0; c < funcs.size(); ++c) {
          choice[depth] = c;
          emit(depth + 1);
        }
      };
      emit(0);
    }
    current = std::move(next);
  }
  return {current.begin(), current.end()};
}

Int exact_count(const std::vector<long long>& sizes,
                const EnumBudget& b = roomy()) {
  return *exact_network_capacity(Architecture(sizes), b).exact_count;
}

const NetworkBound* find_bound(const NetworkReport& r, const std::string& name) {
  for (const auto& b : r.bounds)
    if (b.name == name) return &b;
  return nullptr;
}

}  // namespace

TEST_CASE("single threshold layer reproduces the set enumeration") {
  PointSet h2 = PointSet::cube(2);
  auto funcs = enumerate_network_functions(Architecture({2, 1}), h2);
  CHECK(funcs.size() == 14);
  std::set<FunctionTable> nets(funcs.begin(), funcs.end());
  for (const Labeling& l : enumerate_threshold_functions(h2)) {
    FunctionTable t(l.size());
    for (std::size_t i = 0; i < l.size(); ++i) t[i] = l[i];
    CHECK(nets.count(t) == 1);
  }
  auto tiny = enumerate_network_functions(Architecture({1, 1}),
                                          PointSet::cube(1));
  CHECK(tiny.size() == 4);
}

TEST_CASE("two output units give all pairs of threshold functions") {
  auto funcs = enumerate_network_functions(Architecture({2, 2}),
                                           PointSet::cube(2));
  CHECK(funcs.size() == 196);
  std::set<FunctionTable> dedup(funcs.begin(), funcs.end());
  CHECK(dedup.size() == 196);
}

TEST_CASE("staged enumerator equals the naive reference") {
  for (const auto& sizes : std::vector<std::vector<long long>>{
           {1, 1, 1}, {2, 2, 1}, {2, 1, 2}, {2, 2, 2}, {1, 2, 1, 1}}) {
    Architecture arch(sizes);
    PointSet s = PointSet::cube(static_cast<int>(sizes[0]));
    auto fast = enumerate_network_functions(arch, s, roomy());
    auto slow = naive_network_functions(arch, s);
    CHECK_MESSAGE(std::set<FunctionTable>(fast.begin(), fast.end()) == slow,
                  arch.str());
  }
}

TEST_CASE("staged enumerator accepts non-cube input sets") {
  PointSet s = set_from_codes(3, {0, 3, 5, 6});
  Architecture arch({3, 2, 1});
  auto fast = enumerate_network_functions(arch, s, roomy());
  auto slow = naive_network_functions(arch, s);
  CHECK(std::set<FunctionTable>(fast.begin(), fast.end()) == slow);
}

TEST_CASE("exact capacity report for one unit on the square") {
  NetworkReport r = exact_network_capacity(Architecture({2, 1}));
  REQUIRE(r.exact_count.has_value());
  CHECK(*r.exact_count == 14);
  CHECK(*r.exact_bits == doctest::Approx(log2_int(Int(14))));
  CHECK_FALSE(r.bounds.empty());
}

TEST_CASE("power identity: m output units raise the count to the m-th power") {
  PointSet h1 = PointSet::cube(1);
  PointSet h2 = PointSet::cube(2);
  for (long long m = 1; m <= 3; ++m) {
    auto f1 = enumerate_network_functions(Architecture({1, m}), h1, roomy());
    CHECK(Int(static_cast<unsigned long>(f1.size())) == pow_rat(Rat(4), m));
    auto f2 = enumerate_network_functions(Architecture({2, m}), h2, roomy());
    CHECK(Int(static_cast<unsigned long>(f2.size())) == pow_rat(Rat(14), m));
  }
}

TEST_CASE("monotonicity: growing any layer never shrinks the count") {
  Int base = exact_count({2, 2, 1});
  CHECK(exact_count({2, 1}) <= exact_count({2, 2}));
  CHECK(exact_count({2, 1, 1}) <= base);
  CHECK(base <= exact_count({2, 2, 2}));
  CHECK(base <= exact_count({3, 2, 1}));
}

TEST_CASE("sub-additivity of the exact capacity") {
  Int whole = exact_count({2, 2, 1});
  Int left = exact_count({2, 2});
  Int right = exact_count({2, 1});
  CHECK(whole <= left * right);
}

TEST_CASE("contractivity: duplicating a layer never shrinks the count") {
  CHECK(exact_count({2, 2, 1}) <= exact_count({2, 2, 2, 1}));
  CHECK(exact_count({2, 1}) <= exact_count({2, 2, 1}));
}

TEST_CASE("estimated capacity formula and breakdown") {
  EstimatedCapacity a = estimated_capacity(Architecture({8, 4}));
  CHECK(a.value == 256);
  REQUIRE(a.terms.size() == 1);
  CHECK(a.terms[0].bottleneck == 8);

  EstimatedCapacity b = estimated_capacity(Architecture({4, 3, 2, 1}));
  CHECK(b.value == 70);
  REQUIRE(b.terms.size() == 3);
  CHECK(b.terms[0].value == 48);
  CHECK(b.terms[1].value == 18);
  CHECK(b.terms[2].value == 4);
  Int sum = 0;
  for (const auto& t : b.terms) sum += t.value;
  CHECK(sum == b.value);

  CHECK(estimated_capacity(Architecture({4, 6, 2})).value == 144);

  // Appending an output node adds exactly min(n,m)*m.
  for (long long n : {3, 6})
    for (long long m : {2, 5}) {
      Int flat = estimated_capacity(Architecture({n, m})).value;
      Int tall = estimated_capacity(Architecture({n, m, 1})).value;
      CHECK(tall - flat == static_cast<long>(std::min(n, m) * m));
    }
}

TEST_CASE("upper bounds: unrestricted, restricted, output-node variant") {
  NetworkReport u = network_upper_bounds(Architecture({4, 3}));
  const NetworkBound* est = find_bound(u, "estimated-upper");
  REQUIRE(est != nullptr);
  CHECK(*est->exact_bits == 48);
  CHECK(est->flags.empty());  // 4 >= 4: hypotheses hold

  NetworkReport r = network_upper_bounds(Architecture({5, 4, 4}), Rat(3));
  const NetworkBound* res = find_bound(r, "restricted-upper");
  REQUIRE(res != nullptr);
  CHECK(*res->exact_bits == 108);  // 3*5*4 + min(3,4)*4*4
  CHECK(res->flags.empty());

  NetworkReport small = network_upper_bounds(Architecture({2, 1}));
  const NetworkBound* se = find_bound(small, "estimated-upper");
  REQUIRE(se != nullptr);
  CHECK(*se->exact_bits == 4);
  CHECK_FALSE(se->flags.empty());  // n1 = 2 < 4
  CHECK(log2_int(Int(14)) <= se->bits);

  NetworkReport out = network_upper_bounds(Architecture({4, 6, 1}));
  const NetworkBound* on = find_bound(out, "output-node-upper");
  REQUIRE(on != nullptr);
  CHECK(*on->exact_bits == 96);  // drop the output node: 4*4*6
  CHECK_FALSE(on->flags.empty());
}

TEST_CASE("lower bounds: products, multiplexing, selector room") {
  NetworkReport flat = network_lower_bounds(Architecture({2, 3}));
  const NetworkBound* pe = find_bound(flat, "product-exact");
  REQUIRE(pe != nullptr);
  CHECK(*pe->count == Int(14) * 14 * 14);

  NetworkReport big = network_lower_bounds(Architecture({6, 2}));
  const NetworkBound* cl = find_bound(big, "cube-lower");
  REQUIRE(cl != nullptr);
  CHECK(*cl->exact_bits == 30);  // 2 * 6*5/2

  NetworkReport mux = network_lower_bounds(Architecture({3, 2, 1}));
  const NetworkBound* ml = find_bound(mux, "multiplex-lower");
  REQUIRE(ml != nullptr);
  CHECK(*ml->count == Int(14) * 14);  // |T(H^2)|^2
  CHECK(*ml->bits == doctest::Approx(2 * log2_int(Int(14))));

  NetworkReport mux2 = network_lower_bounds(Architecture({4, 2, 1}));
  const NetworkBound* ml2 = find_bound(mux2, "multiplex-lower");
  REQUIRE(ml2 != nullptr);
  CHECK(*ml2->count == Int(104) * 104);

  NetworkReport wide = network_lower_bounds(Architecture({7, 2, 1}));
  const NetworkBound* ml3 = find_bound(wide, "multiplex-lower");
  REQUIRE(ml3 != nullptr);
  CHECK(*ml3->exact_bits == 30);  // 2 * 6*5/2 on the residual cube

  NetworkReport cramped = network_lower_bounds(Architecture({2, 4, 1}));
  const NetworkBound* ml4 = find_bound(cramped, "multiplex-lower");
  REQUIRE(ml4 != nullptr);
  CHECK_FALSE(ml4->bits.has_value());
  CHECK_FALSE(ml4->flags.empty());

  const NetworkBound* el = find_bound(flat, "estimated-lower");
  REQUIRE(el != nullptr);
  CHECK_FALSE(el->flags.empty());
}

TEST_CASE("exact counts respect their own unflagged bounds") {
  for (const auto& sizes : std::vector<std::vector<long long>>{
           {2, 1}, {2, 2}, {1, 1, 1}, {2, 2, 1}}) {
    NetworkReport r = exact_network_capacity(Architecture(sizes), roomy());
    double bits = *r.exact_bits;
    for (const auto& b : r.bounds) {
      if (!b.flags.empty() || !b.bits) continue;
      if (b.is_upper)
        CHECK_MESSAGE(bits <= *b.bits + 1e-9, Architecture(sizes).str(),
                      " bound=", b.name);
      else
        CHECK_MESSAGE(bits >= *b.bits - 1e-9, Architecture(sizes).str(),
                      " bound=", b.name);
    }
  }
}

TEST_CASE("restricted capacity reduces through the VC dimension") {
  // The square embedded in H^4.
  PointSet embedded = set_from_codes(4, {0b0000, 0b0100, 0b1000, 0b1100});
  RestrictedReport r = restricted_capacity_bounds(embedded, {2, 1});
  CHECK(r.vc_dim == 2);
  CHECK(r.sauer_shelah_floor <= 2);
  REQUIRE(r.reduction.exact_count.has_value());
  CHECK(*r.reduction.exact_count == exact_count({2, 2, 1}));

  // No pair of coordinates shattered: reduction through d = 1.
  PointSet thin = set_from_codes(3, {0b000, 0b001, 0b010});
  RestrictedReport t = restricted_capacity_bounds(thin, {2, 1});
  CHECK(t.vc_dim == 1);
  REQUIRE(t.reduction.exact_count.has_value());
  CHECK(*t.reduction.exact_count == exact_count({1, 2, 1}));

  // Degenerate single point: only the constant maps remain.
  PointSet one = set_from_codes(2, {0b10});
  RestrictedReport o = restricted_capacity_bounds(one, {3, 2});
  CHECK(o.vc_dim == 0);
  CHECK(*o.reduction.exact_count == 4);

  PointSet skew{1, {{Rat(1, 2)}}};
  CHECK_THROWS_AS(restricted_capacity_bounds(skew, {2, 1}), InputError);
}

TEST_CASE("budget guards name the limit that refused") {
  PointSet h2 = PointSet::cube(2);
  auto budget_name = [](auto&& fn) -> std::string {
    try {
      fn();
    } catch (const BudgetError& e) {
      return e.budget;
    }
    return "";
  };
  CHECK(budget_name([&] {
          enumerate_network_functions(Architecture({2, 1, 1, 1, 1}), h2);
        }) == "max-depth");
  CHECK(budget_name([&] {
          enumerate_network_functions(Architecture({5, 1}), PointSet::cube(5));
        }) == "max-set");
  EnumBudget tight;
  tight.per_layer_functions = 50;
  CHECK(budget_name([&] {
          enumerate_network_functions(Architecture({3, 1}), PointSet::cube(3),
                                      tight);
        }) == "per-layer-functions");
  EnumBudget fewtuples;
  fewtuples.max_tuples = 100;
  CHECK(budget_name([&] {
          enumerate_network_functions(Architecture({2, 3}), h2, fewtuples);
        }) == "max-tuples");
}

TEST_CASE("architecture and input validation") {
  PointSet h2 = PointSet::cube(2);
  CHECK_THROWS_AS(enumerate_network_functions(Architecture({3, 1}), h2),
                  InputError);
  CHECK_THROWS_AS(enumerate_network_functions(Architecture({2}), h2),
                  InputError);
  CHECK_THROWS_AS(estimated_capacity(Architecture({4})), InputError);
  CHECK_THROWS_AS(network_upper_bounds(Architecture({4, 2}), Rat(-1)),
                  InputError);
}
