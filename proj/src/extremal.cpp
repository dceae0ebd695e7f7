#include <threshcap/extremal.hpp>

#include <threshcap/netcap.hpp>
#include <threshcap/setcap.hpp>

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace threshcap {

namespace {

long long chat_of(const std::vector<long long>& parts) {
  long long total = 0;
  long long running = parts[0];
  for (std::size_t k = 0; k + 1 < parts.size(); ++k) {
    running = std::min(running, parts[k]);
    total += running * parts[k] * parts[k + 1];
  }
  return total;
}

// Ranking order: better estimate first (direction set by `maximize`),
// then fewer layers, then lexicographically larger sizes.
bool ranks_before(bool maximize, long long chat_a,
                  const std::vector<long long>& a, long long chat_b,
                  const std::vector<long long>& b) {
  if (chat_a != chat_b) return maximize ? chat_a > chat_b : chat_a < chat_b;
  if (a.size() != b.size()) return a.size() < b.size();
  return a > b;
}

struct Candidate {
  long long chat = 0;
  std::vector<long long> parts;
};

template <typename F>
void compositions_of(long long rest, std::vector<long long>& parts,
                     F&& visit) {
  if (rest == 0) {
    visit(parts);
    return;
  }
  for (long long next = 1; next <= rest; ++next) {
    parts.push_back(next);
    compositions_of(rest - next, parts, visit);
    parts.pop_back();
  }
}

}  // namespace

RankedArchitecture optimal_architecture_nodes(long long n_total) {
  if (n_total < 2)
    throw InputError("optimal_architecture_nodes: need at least two nodes");
  long long best_n = 1;
  long long best_v = -1;
  for (long long n = 1; n < n_total; ++n) {
    const long long v = n * n * (n_total - n);
    if (v > best_v || (v == best_v && n > best_n)) {
      best_v = v;
      best_n = n;
    }
  }
  Architecture arch({best_n, n_total - best_n});
  return {arch, estimated_capacity(arch).value};
}

RankedArchitecture optimal_architecture_nodes_input(long long n_total,
                                                    long long n1) {
  if (n_total < 2 || n1 < 1 || n1 >= n_total)
    throw InputError(
        "optimal_architecture_nodes_input: need 1 <= n1 < the node total");
  std::vector<long long> best = {n1, n_total - n1};
  long long best_v = chat_of(best);
  if (2 * n1 < n_total) {
    // Split the remaining nodes across two layers around the real optimum
    // at N/2; the scan keeps the exact integer argmax.
    for (long long a = 1; a <= n_total - n1 - 1; ++a) {
      const std::vector<long long> cand = {n1, a, n_total - n1 - a};
      const long long v = chat_of(cand);
      if (ranks_before(true, v, cand, best_v, best)) {
        best_v = v;
        best = cand;
      }
    }
  }
  Architecture arch(best);
  return {arch, estimated_capacity(arch).value};
}

Architecture minimal_architecture(BudgetKind kind, long long budget,
                                  long long n1) {
  if (n1 < 1)
    throw InputError(
        "minimal_architecture: the input layer needs at least one node");
  long long tail = 0;
  if (kind == BudgetKind::nodes) {
    tail = budget - n1;
    if (tail < 1)
      throw InputError(
          "minimal_architecture: the node budget leaves no layer after the "
          "input");
  } else {
    // A chain (n1, 1, ..., 1) with t trailing layers uses n1 + t - 1
    // connections, so the deepest affordable chain has t = budget - n1 + 1.
    tail = budget - n1 + 1;
    if (tail < 1)
      throw InputError(
          "minimal_architecture: the connection budget cannot reach an "
          "output layer");
  }
  std::vector<long long> sizes(static_cast<std::size_t>(tail) + 1, 1);
  sizes[0] = n1;
  return Architecture(std::move(sizes));
}

ExtremalSearch brute_force_extremal(long long n_total,
                                    std::optional<long long> fixed_n1,
                                    bool maximize,
                                    std::size_t ranking_limit) {
  if (n_total < 2)
    throw InputError("brute_force_extremal: need at least two nodes");
  if (n_total > 30)
    throw BudgetError("max-compositions",
                      "brute_force_extremal: " + std::to_string(n_total) +
                          " nodes exceed the composition budget of 30");
  if (fixed_n1 && (*fixed_n1 < 1 || *fixed_n1 >= n_total))
    throw InputError(
        "brute_force_extremal: the fixed input layer must leave at least "
        "one more node");

  const long long first_lo = fixed_n1 ? *fixed_n1 : 1;
  const long long first_hi = fixed_n1 ? *fixed_n1 : n_total - 1;

  auto cmp = [maximize](const Candidate& a, const Candidate& b) {
    return ranks_before(maximize, a.chat, a.parts, b.chat, b.parts);
  };

  std::vector<Candidate> merged;
#pragma omp parallel
  {
    std::vector<Candidate> local;
    auto record = [&](const std::vector<long long>& p) {
      Candidate c{chat_of(p), p};
      if (ranking_limit == 0) {
        local.push_back(std::move(c));
        return;
      }
      auto pos = std::upper_bound(local.begin(), local.end(), c, cmp);
      if (local.size() < ranking_limit || pos != local.end()) {
        local.insert(pos, std::move(c));
        if (local.size() > ranking_limit) local.pop_back();
      }
    };
    std::vector<long long> parts;
#pragma omp for schedule(dynamic)
    for (long long first = first_lo; first <= first_hi; ++first) {
      parts.assign(1, first);
      compositions_of(n_total - first, parts, record);
    }
#pragma omp critical
    merged.insert(merged.end(), std::make_move_iterator(local.begin()),
                  std::make_move_iterator(local.end()));
  }

  std::sort(merged.begin(), merged.end(), cmp);
  if (ranking_limit > 0 && merged.size() > ranking_limit)
    merged.resize(ranking_limit);

  ExtremalSearch out;
  out.ranking.reserve(merged.size());
  for (Candidate& c : merged)
    out.ranking.push_back({Architecture(std::move(c.parts)),
                           Int(static_cast<long>(c.chat))});
  out.best = out.ranking.front();
  return out;
}

Architecture move_nodes_rewrite(const Architecture& arch) {
  arch.validate();
  if (arch.layers() < 3)
    throw InputError("move_nodes_rewrite: need at least three layers");
  long long moved = 0;
  for (std::size_t k = 2; k < arch.sizes.size(); ++k) moved += arch.sizes[k];
  Architecture out({arch.sizes[0] + moved, arch.sizes[1]});
  if (estimated_capacity(out).value < estimated_capacity(arch).value)
    throw VerificationError(
        "move_nodes_rewrite: the rewrite decreased the estimate");
  return out;
}

RegionBound shallow_region_bound(long long n, long long m) {
  if (n < 1 || m < 0)
    throw InputError("shallow_region_bound: need n >= 1 and m >= 0");
  RegionBound out;
  out.regions =
      region_count(static_cast<long>(m), static_cast<long>(n), false);
  const Int choices = out.regions - 1;
  Int sum = 0;
  for (long long k = 0; k <= m; ++k) {
    Int term;
    mpz_bin_ui(term.get_mpz_t(), choices.get_mpz_t(),
               static_cast<unsigned long>(k));
    sum += term;
  }
  out.assignment_bound = 2 * sum;
  return out;
}

QuadraticFormGap quadratic_form_gap(const std::vector<Rat>& x) {
  if (x.empty())
    throw InputError("quadratic_form_gap: need at least one entry");
  Rat total(0);
  for (const Rat& v : x) {
    if (v <= 0)
      throw InputError("quadratic_form_gap: entries must be positive");
    total += v;
  }
  QuadraticFormGap g;
  g.lhs = total * total;
  g.rhs = 0;
  for (std::size_t k = 0; k + 1 < x.size(); ++k) g.rhs += x[k] * x[k + 1];
  g.rhs *= 4;
  if (g.lhs < g.rhs)
    throw VerificationError("quadratic_form_gap: inequality violated");
  return g;
}

}  // namespace threshcap
