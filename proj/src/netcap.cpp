#include <threshcap/netcap.hpp>

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <utility>

namespace threshcap {

namespace {

void check_inputs(const Architecture& arch, const PointSet& s,
                  const EnumBudget& b) {
  arch.validate();
  s.validate();
  if (arch.layers() < 2)
    throw InputError("architecture needs at least two layers");
  if (arch.sizes[0] != s.dim)
    throw InputError("architecture input width does not match point dimension");
  for (auto n : arch.sizes)
    if (n > 62) throw InputError("layer wider than 62 units is not supported");
  if (arch.layers() > b.max_depth) {
    std::ostringstream msg;
    msg << "architecture depth " << arch.layers() << " exceeds max-depth "
        << b.max_depth;
    throw BudgetError("max-depth", msg.str());
  }
  if (s.size() > b.max_set) {
    std::ostringstream msg;
    msg << "input set size " << s.size() << " exceeds max-set " << b.max_set;
    throw BudgetError("max-set", msg.str());
  }
}

void check_layer_count(std::size_t have, const EnumBudget& b,
                       const char* what) {
  if (have > b.per_layer_functions) {
    std::ostringstream msg;
    msg << what << " holds " << have << " functions, over per-layer-functions "
        << b.per_layer_functions;
    throw BudgetError("per-layer-functions", msg.str());
  }
}

void check_tuples(std::size_t base, long long width, const EnumBudget& b) {
  Int total = 1;
  for (long long j = 0; j < width; ++j) {
    total *= static_cast<unsigned long>(base);
    if (total > static_cast<unsigned long>(b.max_tuples)) {
      std::ostringstream msg;
      msg << base << "^" << width << " unit tuples exceed max-tuples "
          << b.max_tuples;
      throw BudgetError("max-tuples", msg.str());
    }
  }
}

// Composes one tuple of labelings over the image into a stage table.
// slot[i] is the index of point i's value inside the image's labeling order.
FunctionTable compose(const std::vector<std::size_t>& slot,
                      const std::vector<const Labeling*>& tuple,
                      long long width) {
  FunctionTable out(slot.size(), 0);
  for (std::size_t i = 0; i < slot.size(); ++i) {
    std::uint64_t code = 0;
    for (long long j = 0; j < width; ++j)
      code |= static_cast<std::uint64_t>((*tuple[j])[slot[i]])
              << (width - 1 - j);
    out[i] = code;
  }
  return out;
}

// All width-tuples over `funcs`, composed through `slot` and merged into
// `stage`. Fans out over the first unit's choice; per-worker sets keep the
// merge deterministic regardless of thread count.
void expand_image(const std::vector<Labeling>& funcs,
                  const std::vector<std::size_t>& slot, long long width,
                  std::set<FunctionTable>& stage) {
  const long long t = static_cast<long long>(funcs.size());
  std::vector<std::set<FunctionTable>> parts(t);
#pragma omp parallel for schedule(dynamic)
  for (long long first = 0; first < t; ++first) {
    std::vector<const Labeling*> tuple(width, &funcs[0]);
    tuple[0] = &funcs[first];
    std::vector<std::size_t> digit(width, 0);
    for (;;) {
      parts[first].insert(compose(slot, tuple, width));
      long long j = width - 1;
      while (j >= 1) {
        if (++digit[j] < funcs.size()) {
          tuple[j] = &funcs[digit[j]];
          break;
        }
        digit[j] = 0;
        tuple[j] = &funcs[0];
        --j;
      }
      if (j == 0) break;  // first digit is fixed per worker
    }
  }
  for (auto& part : parts)
    stage.insert(part.begin(), part.end());
}

PointSet image_set(const std::vector<std::uint64_t>& codes, long long dim) {
  PointSet v;
  v.dim = dim;
  for (auto code : codes) {
    std::vector<Rat> p;
    for (auto bit : code_of(code, static_cast<int>(dim)))
      p.push_back(Rat(static_cast<int>(bit)));
    v.pts.push_back(std::move(p));
  }
  return v;
}

// Cache of threshold-function sets per distinct image, keyed by the sorted
// value codes together with the stage width.
using ImageKey = std::pair<long long, std::vector<std::uint64_t>>;

const std::vector<Labeling>& image_functions(
    std::map<ImageKey, std::vector<Labeling>>& cache, const ImageKey& key,
    const EnumBudget& b) {
  auto it = cache.find(key);
  if (it == cache.end()) {
    CountOptions opt;
    opt.max_points = b.max_set;
    auto funcs = enumerate_threshold_functions(image_set(key.second, key.first),
                                               opt);
    check_layer_count(funcs.size(), b, "image function set");
    it = cache.emplace(key, std::move(funcs)).first;
  }
  return it->second;
}

Int cube_count(int n) {
  static std::map<int, Int> cache;
  auto it = cache.find(n);
  if (it == cache.end())
    it = cache.emplace(n, count_threshold_functions(PointSet::cube(n))).first;
  return it->second;
}

double bits_of_count(const Int& c) { return log2_int(c); }

NetworkBound make_bound(std::string name, std::string statement, bool upper) {
  NetworkBound b;
  b.name = std::move(name);
  b.statement = std::move(statement);
  b.is_upper = upper;
  return b;
}

void set_rational_bits(NetworkBound& b, const Rat& v) {
  b.exact_bits = v;
  b.bits = v.get_d();
}

bool upper_hypotheses_hold(const Architecture& arch) {
  for (std::size_t k = 0; k + 1 < arch.sizes.size(); ++k)
    if (arch.sizes[k] < 4) return false;
  return true;
}

}  // namespace

std::vector<FunctionTable> enumerate_network_functions(const Architecture& arch,
                                                       const PointSet& s,
                                                       const EnumBudget& budget) {
  check_inputs(arch, s, budget);

  // First threshold layer: tuples of threshold functions on S itself.
  CountOptions opt;
  opt.max_points = budget.max_set;
  std::vector<Labeling> base = enumerate_threshold_functions(s, opt);
  check_layer_count(base.size(), budget, "input function set");
  check_tuples(base.size(), arch.sizes[1], budget);
  std::vector<std::size_t> identity_slot(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) identity_slot[i] = i;
  std::set<FunctionTable> stage;
  expand_image(base, identity_slot, arch.sizes[1], stage);
  check_layer_count(stage.size(), budget, "stage");

  std::map<ImageKey, std::vector<Labeling>> cache;
  for (std::size_t layer = 2; layer < arch.sizes.size(); ++layer) {
    const long long in_width = arch.sizes[layer - 1];
    const long long out_width = arch.sizes[layer];
    std::set<FunctionTable> next;
    for (const FunctionTable& g : stage) {
      ImageKey key{in_width, g};
      auto& codes = key.second;
      std::sort(codes.begin(), codes.end());
      codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
      const std::vector<Labeling>& funcs = image_functions(cache, key, budget);
      check_tuples(funcs.size(), out_width, budget);
      std::vector<std::size_t> slot(g.size());
      for (std::size_t i = 0; i < g.size(); ++i)
        slot[i] = static_cast<std::size_t>(
            std::lower_bound(codes.begin(), codes.end(), g[i]) - codes.begin());
      expand_image(funcs, slot, out_width, next);
      check_layer_count(next.size(), budget, "stage");
    }
    stage = std::move(next);
  }
  return {stage.begin(), stage.end()};
}

EstimatedCapacity estimated_capacity(const Architecture& arch) {
  arch.validate();
  if (arch.layers() < 2)
    throw InputError("estimated capacity needs at least two layers");
  EstimatedCapacity out;
  out.value = 0;
  long long running_min = arch.sizes[0];
  for (std::size_t k = 0; k + 1 < arch.sizes.size(); ++k) {
    running_min = std::min(running_min, arch.sizes[k]);
    EstimatedTerm term;
    term.k = k + 1;
    term.bottleneck = running_min;
    term.value = Int(static_cast<long>(running_min)) *
                 static_cast<long>(arch.sizes[k]) *
                 static_cast<long>(arch.sizes[k + 1]);
    out.value += term.value;
    out.terms.push_back(std::move(term));
  }
  return out;
}

NetworkReport network_upper_bounds(const Architecture& arch,
                                   std::optional<Rat> input_log_cardinality) {
  arch.validate();
  if (arch.layers() < 2)
    throw InputError("network bounds need at least two layers");
  NetworkReport report;
  report.sizes = arch.sizes;
  const bool hyp = upper_hypotheses_hold(arch);
  const std::size_t L = arch.sizes.size();

  if (input_log_cardinality) {
    const Rat n = *input_log_cardinality;
    if (n < 0) throw InputError("input log-cardinality must be nonnegative");
    Rat value = n * static_cast<long>(arch.sizes[0]) *
                static_cast<long>(arch.sizes[1]);
    Rat tail_min = n;
    for (std::size_t k = 1; k + 1 < L; ++k) {
      Rat layer(static_cast<long>(arch.sizes[k]));
      if (layer < tail_min) tail_min = layer;
      value += tail_min * static_cast<long>(arch.sizes[k]) *
               static_cast<long>(arch.sizes[k + 1]);
    }
    NetworkBound b = make_bound(
        "restricted-upper",
        "n n1 n2 + sum_{k=2}^{L-1} min(n, n2..nk) nk nk+1 for inputs of "
        "log2-cardinality n",
        true);
    set_rational_bits(b, value);
    if (!hyp) b.flags.push_back("outside hypotheses: needs n1..n(L-1) >= 4");
    report.bounds.push_back(std::move(b));
  } else {
    EstimatedCapacity est = estimated_capacity(arch);
    NetworkBound b = make_bound(
        "estimated-upper",
        "sum_{k=1}^{L-1} min(n1..nk) nk nk+1 over the full input cube", true);
    set_rational_bits(b, Rat(est.value));
    if (!hyp) b.flags.push_back("outside hypotheses: needs n1..n(L-1) >= 4");
    report.bounds.push_back(std::move(b));
  }

  if (L >= 3 && arch.sizes.back() == 1) {
    Architecture prefix(
        std::vector<long long>(arch.sizes.begin(), arch.sizes.end() - 1));
    EstimatedCapacity est = estimated_capacity(prefix);
    NetworkBound b = make_bound(
        "output-node-upper",
        "appending one output node keeps the capacity within the prefix "
        "formula, up to an absolute constant",
        true);
    set_rational_bits(b, Rat(est.value));
    b.flags.push_back("up to an absolute constant");
    report.bounds.push_back(std::move(b));
  }
  return report;
}

NetworkReport network_lower_bounds(const Architecture& arch) {
  arch.validate();
  if (arch.layers() < 2)
    throw InputError("network bounds need at least two layers");
  NetworkReport report;
  report.sizes = arch.sizes;
  const std::size_t L = arch.sizes.size();

  if (L == 2) {
    const long long n = arch.sizes[0];
    const long long m = arch.sizes[1];
    if (n <= 4) {
      Int one = cube_count(static_cast<int>(n));
      NetworkBound b = make_bound(
          "product-exact",
          "|T(H^n, n, m)| = |T(H^n)|^m, evaluated from the exact cube count",
          false);
      Int total = 1;
      mpz_pow_ui(total.get_mpz_t(), one.get_mpz_t(),
                 static_cast<unsigned long>(m));
      b.count = total;
      b.bits = bits_of_count(total);
      b.flags.push_back("exact");
      report.bounds.push_back(std::move(b));
    } else {
      NetworkBound b = make_bound(
          "cube-lower", "m n(n-1)/2 bits from the cube capacity lower bound",
          false);
      Int v = Int(static_cast<long>(m)) * static_cast<long>(n) *
              static_cast<long>(n - 1);
      v /= 2;  // n(n-1) is even
      set_rational_bits(b, Rat(v));
      report.bounds.push_back(std::move(b));
    }
  }

  if (L == 3 && arch.sizes[2] == 1) {
    const long long n = arch.sizes[0];
    const long long m = arch.sizes[1];
    long long sel = 0;  // ceil(log2 m)
    while ((1ll << sel) < m) ++sel;
    const long long rest = n - sel;
    NetworkBound b = make_bound(
        "multiplex-lower",
        "m * log2|T(H^{n - ceil(log2 m)})| by multiplexing m functions "
        "through the output node",
        false);
    if (rest >= 1) {
      if (rest <= 4) {
        Int one = cube_count(static_cast<int>(rest));
        Int total = 1;
        mpz_pow_ui(total.get_mpz_t(), one.get_mpz_t(),
                   static_cast<unsigned long>(m));
        b.count = total;
        b.bits = bits_of_count(total);
      } else {
        Int v = Int(static_cast<long>(m)) * static_cast<long>(rest) *
                static_cast<long>(rest - 1);
        v /= 2;  // rest(rest-1) is even
        set_rational_bits(b, Rat(v));
      }
    } else {
      b.flags.push_back(
          "unavailable: no selector room (input width <= ceil(log2 m))");
    }
    report.bounds.push_back(std::move(b));
  }

  EstimatedCapacity est = estimated_capacity(arch);
  NetworkBound b = make_bound(
      "estimated-lower",
      "sum_{k=1}^{L-1} min(n1..nk) nk nk+1, valid up to an unspecified "
      "absolute constant",
      false);
  set_rational_bits(b, Rat(est.value));
  b.flags.push_back("up to an unspecified absolute constant");
  report.bounds.push_back(std::move(b));
  return report;
}

NetworkReport exact_network_capacity(const Architecture& arch,
                                     const EnumBudget& budget) {
  arch.validate();
  if (arch.layers() < 2)
    throw InputError("exact capacity needs at least two layers");
  if (arch.sizes[0] > 20)
    throw InputError("input cube wider than 20 is not supported");
  PointSet cube = PointSet::cube(static_cast<int>(arch.sizes[0]));
  auto funcs = enumerate_network_functions(arch, cube, budget);
  NetworkReport report;
  report.sizes = arch.sizes;
  report.exact_count = Int(static_cast<unsigned long>(funcs.size()));
  report.exact_bits = bits_of_count(*report.exact_count);
  for (auto& b : network_upper_bounds(arch).bounds)
    report.bounds.push_back(std::move(b));
  for (auto& b : network_lower_bounds(arch).bounds)
    report.bounds.push_back(std::move(b));
  return report;
}

RestrictedReport restricted_capacity_bounds(const PointSet& s,
                                            const std::vector<long long>& tail,
                                            const EnumBudget& budget) {
  s.validate();
  if (!s.is_boolean())
    throw InputError("restricted capacity reduction needs a Boolean set");
  if (tail.empty()) throw InputError("architecture tail must be nonempty");
  for (auto n : tail)
    if (n < 1) throw InputError("layer sizes must be positive");

  RestrictedReport out;
  out.vc_dim = vc_dimension(s);

  Int card(static_cast<unsigned long>(s.size()));
  Int reach = 0;
  int floor = 0;
  for (;; ++floor) {
    reach += binomial(s.dim, floor);
    if (card <= reach) break;
  }
  out.sauer_shelah_floor = floor;

  if (out.vc_dim == 0) {
    // A zero-dimensional reduction: the network still realizes every
    // constant map into H^{n_L}.
    out.reduction.sizes = tail;
    out.reduction.exact_count = pow2(tail.back());
    out.reduction.exact_bits = static_cast<double>(tail.back());
    return out;
  }

  std::vector<long long> sizes;
  sizes.push_back(out.vc_dim);
  sizes.insert(sizes.end(), tail.begin(), tail.end());
  Architecture reduced(sizes);
  try {
    out.reduction = exact_network_capacity(reduced, budget);
  } catch (const BudgetError&) {
    out.reduction.sizes = sizes;
    for (auto& b : network_upper_bounds(reduced).bounds)
      out.reduction.bounds.push_back(std::move(b));
    for (auto& b : network_lower_bounds(reduced).bounds)
      out.reduction.bounds.push_back(std::move(b));
  }
  return out;
}

}  // namespace threshcap
