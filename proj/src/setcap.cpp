#include <threshcap/setcap.hpp>

#include <omp.h>

#include <algorithm>
#include <cassert>
#include <cmath>
#include <set>

namespace threshcap {

namespace {

struct DfsContext {
  const PointSet* s = nullptr;
  std::vector<std::vector<Rat>> pos_rows;  // (x_i, 1)
  std::vector<std::vector<Rat>> neg_rows;  // -(x_i, 1)
};

DfsContext make_context(const PointSet& s) {
  DfsContext ctx;
  ctx.s = &s;
  ctx.pos_rows.reserve(s.size());
  ctx.neg_rows.reserve(s.size());
  for (const auto& p : s.pts) {
    std::vector<Rat> pos, neg;
    pos.reserve(p.size() + 1);
    neg.reserve(p.size() + 1);
    for (const auto& c : p) {
      pos.push_back(c);
      neg.push_back(-c);
    }
    pos.push_back(1);
    neg.push_back(-1);
    ctx.pos_rows.push_back(std::move(pos));
    ctx.neg_rows.push_back(std::move(neg));
  }
  return ctx;
}

struct PrefixNode {
  Labeling labels;     // prefix assignment, labels[0] == 1
  ThresholdUnit unit;  // witness with margins >= 1 / <= -1 on the prefix
};

ThresholdUnit root_unit(int dim) {
  ThresholdUnit u;
  u.weights.assign(dim, Rat(0));
  u.bias = 1;
  return u;
}

// Expands the prefix by one point. A parent witness whose margin on the new
// point already satisfies the strict rule certifies the child without an LP;
// otherwise the child is decided exactly.
template <typename Visit>
void expand(const DfsContext& ctx, std::vector<std::vector<Rat>>& rows,
            PrefixNode& node, Visit&& visit) {
  const std::size_t t = node.labels.size();
  const Rat mg = node.unit.margin(ctx.s->pts[t]);
  for (int label = 1; label >= 0; --label) {
    const bool reusable = label ? mg >= 1 : mg <= -1;
    rows.push_back(label ? ctx.pos_rows[t] : ctx.neg_rows[t]);
    ThresholdUnit fresh;
    bool ok = reusable, use_fresh = false;
    if (!reusable) {
      auto r = detail::separable_rows(rows);
      if (r.separable) {
        fresh = std::move(r.witness->unit);
        ok = use_fresh = true;
      }
    }
    if (ok) {
      node.labels.push_back(static_cast<std::uint8_t>(label));
      if (use_fresh) std::swap(node.unit, fresh);
      visit(node);
      if (use_fresh) std::swap(node.unit, fresh);
      node.labels.pop_back();
    }
    rows.pop_back();
  }
}

template <typename Leaf>
void dfs(const DfsContext& ctx, std::vector<std::vector<Rat>>& rows,
         PrefixNode& node, Leaf&& leaf) {
  if (node.labels.size() == ctx.s->size()) {
    leaf(node.labels);
    return;
  }
  expand(ctx, rows, node, [&](PrefixNode& child) { dfs(ctx, rows, child, leaf); });
}

std::vector<std::vector<Rat>> rows_for(const DfsContext& ctx,
                                       const Labeling& labels) {
  std::vector<std::vector<Rat>> rows;
  rows.reserve(ctx.s->size());
  for (std::size_t i = 0; i < labels.size(); ++i)
    rows.push_back(labels[i] ? ctx.pos_rows[i] : ctx.neg_rows[i]);
  return rows;
}

// Serial walk down to `depth`, gathering the surviving prefixes. Each
// frontier node owns a contiguous chunk of the halved labeling space.
std::vector<PrefixNode> collect_frontier(const DfsContext& ctx,
                                         std::size_t depth) {
  std::vector<PrefixNode> frontier;
  PrefixNode root{{1}, root_unit(ctx.s->dim)};
  std::vector<std::vector<Rat>> rows = rows_for(ctx, root.labels);
  auto walk = [&](auto&& self, PrefixNode& node) -> void {
    if (node.labels.size() == depth) {
      frontier.push_back(node);
      return;
    }
    expand(ctx, rows, node, [&](PrefixNode& child) { self(self, child); });
  };
  walk(walk, root);
  return frontier;
}

void check_budget(const PointSet& s, const CountOptions& opt) {
  s.validate();
  if (s.size() == 0) throw InputError("empty point set");
  if (s.size() > opt.max_points)
    throw BudgetError("max-points", "set has " + std::to_string(s.size()) +
                                        " points, budget allows " +
                                        std::to_string(opt.max_points));
}

int thread_count(const CountOptions& opt) {
  return opt.jobs > 0 ? opt.jobs : omp_get_max_threads();
}

}  // namespace

Int count_threshold_functions(const PointSet& s, const CountOptions& opt) {
  check_budget(s, opt);
  if (s.size() == 1) return 2;

  DfsContext ctx = make_context(s);
  const std::size_t depth = std::min(s.size() - 1, std::size_t{8});
  std::vector<PrefixNode> frontier = collect_frontier(ctx, depth);
  const long chunks = static_cast<long>(frontier.size());
  unsigned long long total = 0;
#pragma omp parallel for schedule(dynamic) num_threads(thread_count(opt)) \
    reduction(+ : total)
  for (long i = 0; i < chunks; ++i) {
    PrefixNode node = frontier[i];
    std::vector<std::vector<Rat>> rows = rows_for(ctx, node.labels);
    unsigned long long local = 0;
    dfs(ctx, rows, node, [&](const Labeling&) { ++local; });
    total += local;
  }
  return 2 * Int(static_cast<unsigned long>(total));
}

Int count_threshold_functions_serial(const PointSet& s, const CountOptions& opt) {
  check_budget(s, opt);
  if (s.size() == 1) return 2;
  DfsContext ctx = make_context(s);
  const std::size_t m = s.size();
  unsigned long long count = 0;
  Labeling labels(m);
  labels[0] = 1;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << (m - 1)); ++code) {
    for (std::size_t j = 1; j < m; ++j)
      labels[j] = static_cast<std::uint8_t>((code >> (j - 1)) & 1);
    auto rows = rows_for(ctx, labels);
    if (detail::separable_rows(rows).separable) ++count;
  }
  return 2 * Int(static_cast<unsigned long>(count));
}

std::vector<Labeling> enumerate_threshold_functions(const PointSet& s,
                                                    const CountOptions& opt) {
  check_budget(s, opt);
  std::vector<Labeling> found;
  if (s.size() == 1) {
    found.push_back({1});
    found.push_back({0});
    return found;
  }
  DfsContext ctx = make_context(s);
  PrefixNode root{{1}, root_unit(s.dim)};
  std::vector<std::vector<Rat>> rows = rows_for(ctx, root.labels);
  dfs(ctx, rows, root, [&](const Labeling& l) { found.push_back(l); });
  const std::size_t half = found.size();
  found.reserve(2 * half);
  for (std::size_t i = 0; i < half; ++i) {
    Labeling flip(found[i].size());
    for (std::size_t j = 0; j < flip.size(); ++j) flip[j] = found[i][j] ? 0 : 1;
    found.push_back(std::move(flip));
  }
  return found;
}

std::vector<Bound> set_capacity_bounds(const PointSet& s) {
  s.validate();
  if (s.size() == 0) throw InputError("empty point set");
  const std::size_t m = s.size();
  const int n = s.dim;
  std::vector<Bound> bounds;

  {
    Bound b;
    b.name = "count-upper";
    b.statement = "dichotomies-bounded-by-binomial-region-count";
    b.is_upper = true;
    Int c = 0;
    for (int k = 0; k <= n; ++k) c += binomial(m - 1, k);
    c *= 2;
    b.bits = log2_int(c);
    b.count = std::move(c);
    bounds.push_back(std::move(b));
  }
  if (n >= 4 && m >= static_cast<std::size_t>(n)) {
    Bound b;
    b.name = "log-upper-entropy";
    b.statement = "capacity-at-most-1-plus-n-log2(e-size/n)";
    b.is_upper = true;
    b.bits = 1.0 + n * std::log2(std::exp(1.0) * static_cast<double>(m) / n);
    bounds.push_back(std::move(b));
  }
  if (n >= 4) {
    Bound b;
    b.name = "log-upper-dimension";
    b.statement = "capacity-at-most-n-log2-size";
    b.is_upper = true;
    Int c;
    mpz_ui_pow_ui(c.get_mpz_t(), static_cast<unsigned long>(m),
                  static_cast<unsigned long>(n));
    b.bits = log2_int(c);
    b.count = std::move(c);
    bounds.push_back(std::move(b));
  }
  {
    Bound b;
    b.name = "log-lower-cardinality";
    b.statement = "at-least-twice-the-size-many-dichotomies";
    b.is_upper = false;
    b.count = Int(2) * static_cast<unsigned long>(m);
    b.bits = log2_int(*b.count);
    bounds.push_back(std::move(b));
  }
  if (s.is_boolean() && m >= 2) {
    Bound b;
    b.name = "boolean-lower-square";
    b.statement = "capacity-exceeds-log2-size-squared-over-16";
    b.is_upper = false;
    double l = std::log2(static_cast<double>(m));
    b.bits = l * l / 16.0;
    b.flags.push_back("strict");
    bounds.push_back(std::move(b));
  }
  if (is_full_cube(s)) {
    {
      Bound b;
      b.name = "cube-lower";
      b.statement = "cube-capacity-at-least-n(n-1)/2";
      b.is_upper = false;
      b.count = pow2(static_cast<unsigned long>(n) * (n - 1) / 2);
      b.bits = static_cast<double>(n) * (n - 1) / 2;
      bounds.push_back(std::move(b));
    }
    if (n >= 2) {  // the matching upper needs n > 1
      Bound b;
      b.name = "cube-upper";
      b.statement = "cube-capacity-at-most-n-squared";
      b.is_upper = true;
      b.count = pow2(static_cast<unsigned long>(n) * n);
      b.bits = static_cast<double>(n) * n;
      bounds.push_back(std::move(b));
    }
  }
  return bounds;
}

CapacityReport set_capacity_report(const PointSet& s, bool bounds_only,
                                   const CountOptions& opt) {
  CapacityReport rep;
  rep.set_size = s.size();
  rep.dim = s.dim;
  rep.boolean = s.is_boolean();
  rep.bounds = set_capacity_bounds(s);
  if (!bounds_only) {
    rep.exact_count = count_threshold_functions(s, opt);
    rep.exact_bits = log2_int(*rep.exact_count);
  }
  return rep;
}

DecompositionCertificate hierarchical_lower_bound(const PointSet& s) {
  s.validate();
  if (!s.is_boolean())
    throw InputError("hierarchical decomposition requires Boolean points");
  if (s.size() == 0) throw InputError("empty point set");

  DecompositionCertificate cert;
  std::vector<std::size_t> cur(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) cur[i] = i;

  while (cur.size() >= 2) {
    int best_coord = -1;
    std::size_t best_gap = 0;
    for (int j = 0; j < s.dim; ++j) {
      std::size_t zeros = 0;
      for (std::size_t i : cur)
        if (s.pts[i][j] == 0) ++zeros;
      std::size_t ones = cur.size() - zeros;
      if (zeros == 0 || ones == 0) continue;
      std::size_t gap = zeros > ones ? zeros - ones : ones - zeros;
      if (best_coord < 0 || gap < best_gap) {
        best_coord = j;
        best_gap = gap;
      }
    }
    if (best_coord < 0)
      throw std::logic_error("distinct Boolean points admit a splitting coordinate");

    std::vector<std::size_t> zero_side, one_side;
    for (std::size_t i : cur)
      (s.pts[i][best_coord] == 0 ? zero_side : one_side).push_back(i);
    const bool zero_continues = zero_side.size() >= one_side.size();
    std::vector<std::size_t>& u = zero_continues ? zero_side : one_side;
    std::vector<std::size_t>& v = zero_continues ? one_side : zero_side;

    DecompositionLevel level;
    level.coord = best_coord + 1;
    level.v_indices = v;
    level.u_size = u.size();
    cert.levels.push_back(std::move(level));
    cur = u;
  }

  cert.certified_count = 2;
  for (const auto& level : cert.levels)
    cert.certified_count *= static_cast<unsigned long>(level.v_indices.size() + 1);
  cert.certified_bits = log2_int(cert.certified_count);
  return cert;
}

std::size_t affine_rank(const PointSet& u) {
  std::vector<std::vector<Rat>> m;
  m.reserve(u.size());
  for (const auto& p : u.pts) {
    std::vector<Rat> row = p;
    row.push_back(1);
    m.push_back(std::move(row));
  }
  std::size_t rank = 0;
  const std::size_t cols = static_cast<std::size_t>(u.dim) + 1;
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < m.size() && m[pivot][c] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[rank], m[pivot]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c] == 0) continue;
      Rat f = m[r][c] / m[rank][c];
      for (std::size_t j = c; j < cols; ++j) m[r][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

ProductBound product_capacity_lower(const PointSet& u, long p) {
  u.validate();
  if (u.size() < 2) throw InputError("product bound requires |U| > 1");
  if (p < 2) throw InputError("product bound requires p > 1");
  if (affine_rank(u) != u.size())
    throw InputError("product bound requires the vectors (u,1) to be linearly independent");

  ProductBound out;
  const unsigned long usz = static_cast<unsigned long>(u.size());
  Int t1 = count_threshold_functions(u);
  Int base = usz;
  Int power;
  unsigned long expo =
      (usz - 1) * static_cast<unsigned long>(p) * static_cast<unsigned long>(p - 1) / 2;
  mpz_pow_ui(power.get_mpz_t(), base.get_mpz_t(), expo);
  out.iterated_count = t1 * power;
  out.iterated_bits = log2_int(out.iterated_count);
  double logu = std::log2(static_cast<double>(usz));
  out.closed_form_bits =
      static_cast<double>(p) * static_cast<double>(p) * usz * logu / 8.0;
  return out;
}

Int region_count(long m, long n, bool central) {
  if (m < 0 || n < 0) throw InputError("region counts need m, n >= 0");
  if (central) {
    if (m == 0) return 1;
    Int r = 0;
    for (long k = 0; k <= n - 1; ++k)
      r += binomial(static_cast<unsigned long>(m - 1), static_cast<unsigned long>(k));
    return 2 * r;
  }
  Int r = 0;
  for (long k = 0; k <= n; ++k)
    r += binomial(static_cast<unsigned long>(m), static_cast<unsigned long>(k));
  return r;
}

int vc_dimension(const PointSet& s) {
  s.validate();
  if (!s.is_boolean())
    throw InputError("VC dimension by coordinate projection requires Boolean points");
  if (s.size() == 0) throw InputError("empty point set");

  std::vector<int> cands;
  for (int j = 0; j < s.dim; ++j) {
    bool has0 = false, has1 = false;
    for (const auto& p : s.pts) (p[j] == 0 ? has0 : has1) = true;
    if (has0 && has1) cands.push_back(j);
  }
  int dmax = 0;
  while ((std::size_t{1} << (dmax + 1)) <= s.size()) ++dmax;
  dmax = std::min<int>(dmax, static_cast<int>(cands.size()));

  for (int d = dmax; d >= 1; --d) {
    std::vector<int> idx(d);
    for (int i = 0; i < d; ++i) idx[i] = i;
    for (;;) {
      std::set<std::uint64_t> patterns;
      for (const auto& p : s.pts) {
        std::uint64_t v = 0;
        for (int i = 0; i < d; ++i)
          v = (v << 1) | (p[cands[idx[i]]] == 1 ? 1u : 0u);
        patterns.insert(v);
        if (patterns.size() == (std::size_t{1} << d)) return d;
      }
      int i = d - 1;
      while (i >= 0 && idx[i] == static_cast<int>(cands.size()) - d + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return 0;
}

}  // namespace threshcap
