#include <threshcap/separability.hpp>

#include <algorithm>
#include <cassert>

namespace threshcap {
namespace detail {

// Phase-1 simplex, minimizing the sum of artificial variables over
// { lambda >= 0 : A lambda = b }, b >= 0. Bland's rule (lowest eligible
// index enters; ties in the ratio test break toward the lowest basis index)
// guarantees termination. Artificial columns never re-enter once they leave,
// which preserves both the feasibility verdict and the dual certificate.
Phase1Result phase1(const std::vector<std::vector<Rat>>& a,
                    const std::vector<Rat>& b) {
  const std::size_t rows = a.size();
  const std::size_t nvar = rows ? a[0].size() : 0;
  const std::size_t ncol = nvar + rows;  // lambda columns then artificials
  const std::size_t rhs = ncol;

  std::vector<std::vector<Rat>> t(rows, std::vector<Rat>(ncol + 1));
  std::vector<std::size_t> basis(rows);
  std::vector<bool> art_blocked(rows, false);
  for (std::size_t i = 0; i < rows; ++i) {
    assert(b[i] >= 0);
    for (std::size_t j = 0; j < nvar; ++j) t[i][j] = a[i][j];
    t[i][nvar + i] = 1;
    t[i][rhs] = b[i];
    basis[i] = nvar + i;
  }

  // Reduced-cost row: obj[j] = c_j - sum_i c_basis(i) * t[i][j], with c = 1
  // on artificials and 0 on lambda columns. obj[rhs] tracks -objective.
  std::vector<Rat> obj(ncol + 1);
  for (std::size_t j = 0; j <= ncol; ++j) {
    Rat s = 0;
    for (std::size_t i = 0; i < rows; ++i) s += t[i][j];
    obj[j] = (j >= nvar && j < ncol ? Rat(1) : Rat(0)) - s;
  }

  for (;;) {
    std::size_t enter = ncol;
    for (std::size_t j = 0; j < ncol; ++j) {
      if (j >= nvar && art_blocked[j - nvar]) continue;
      if (obj[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter == ncol) break;  // optimal

    std::size_t leave = rows;
    Rat best;
    for (std::size_t i = 0; i < rows; ++i) {
      if (t[i][enter] <= 0) continue;
      Rat ratio = t[i][rhs] / t[i][enter];
      if (leave == rows || ratio < best ||
          (ratio == best && basis[i] < basis[leave])) {
        best = ratio;
        leave = i;
      }
    }
    if (leave == rows)
      throw std::logic_error("phase-1 objective unbounded below");

    if (basis[leave] >= nvar) art_blocked[basis[leave] - nvar] = true;
    basis[leave] = enter;
    Rat piv = t[leave][enter];
    for (std::size_t j = 0; j <= ncol; ++j) t[leave][j] /= piv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      Rat f = t[i][enter];
      for (std::size_t j = 0; j <= ncol; ++j) t[i][j] -= f * t[leave][j];
    }
    if (obj[enter] != 0) {
      Rat f = obj[enter];
      for (std::size_t j = 0; j <= ncol; ++j) obj[j] -= f * t[leave][j];
    }
  }

  Phase1Result res;
  res.feasible = (obj[rhs] == 0);
  if (!res.feasible) {
    // Dual multipliers from the artificial columns' reduced costs.
    res.dual.resize(rows);
    for (std::size_t i = 0; i < rows; ++i) res.dual[i] = Rat(1) - obj[nvar + i];
  }
  return res;
}

// rows[i] = s_i * (x_i, 1). The strict-margin system <row_i, w> >= 1 is
// feasible iff its Farkas alternative { lambda >= 0, sum lambda_i row_i = 0,
// sum lambda_i = 1 } is infeasible; in that case the phase-1 duals give w.
SeparabilityResult separable_rows(const std::vector<std::vector<Rat>>& rows) {
  SeparabilityResult res;
  if (rows.empty()) {
    res.separable = true;
    res.witness = SeparationWitness{};
    return res;
  }
  const std::size_t d = rows[0].size();
  const std::size_t m = rows.size();

  std::vector<std::vector<Rat>> a(d + 1, std::vector<Rat>(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t r = 0; r < d; ++r) a[r][i] = rows[i][r];
    a[d][i] = 1;
  }
  std::vector<Rat> b(d + 1);
  b[d] = 1;

  Phase1Result p = phase1(a, b);
  if (p.feasible) {
    res.separable = false;
    return res;
  }
  res.separable = true;
  SeparationWitness w;
  w.unit.weights.resize(d - 1);
  Rat beta = p.dual[d];
  assert(beta > 0);
  for (std::size_t r = 0; r + 1 < d; ++r) w.unit.weights[r] = -p.dual[r] / beta;
  w.unit.bias = -p.dual[d - 1] / beta;
  res.witness = std::move(w);
  return res;
}

}  // namespace detail

static std::vector<Rat> signed_row(const std::vector<Rat>& x, bool positive) {
  std::vector<Rat> r;
  r.reserve(x.size() + 1);
  for (const auto& c : x) r.push_back(positive ? c : -c);
  r.push_back(positive ? 1 : -1);
  return r;
}

// Integer weights, gcd 1; then the smallest integer scale-up restoring
// margins >= 1 in absolute value (a no-op on Boolean points, where margins
// of a primitive integer unit are nonzero integers).
static void normalize_witness(const PointSet& points, const Labeling& labels,
                              SeparationWitness& w) {
  Int lcm = 1;
  auto fold_den = [&lcm](const Rat& q) {
    Int den = q.get_den();
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
  };
  for (const auto& c : w.unit.weights) fold_den(c);
  fold_den(w.unit.bias);

  Int gcd = 0;
  auto fold_gcd = [&gcd, &lcm](const Rat& q) {
    Int v = q.get_num() * (lcm / q.get_den());
    mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), v.get_mpz_t());
  };
  for (const auto& c : w.unit.weights) fold_gcd(c);
  fold_gcd(w.unit.bias);
  if (gcd == 0) gcd = 1;

  Rat scale(lcm, gcd);
  scale.canonicalize();
  for (auto& c : w.unit.weights) c *= scale;
  w.unit.bias *= scale;

  auto margins_of = [&]() {
    std::vector<Rat> ms(points.size());
    for (std::size_t i = 0; i < points.size(); ++i)
      ms[i] = w.unit.margin(points.pts[i]);
    return ms;
  };
  w.margins = margins_of();

  Rat min_abs = 0;
  bool first = true;
  for (const auto& mgn : w.margins) {
    Rat a = mgn < 0 ? -mgn : mgn;
    if (first || a < min_abs) min_abs = a, first = false;
  }
  if (!first && min_abs < 1) {
    if (min_abs == 0)
      throw VerificationError("separating witness had a zero margin");
    Int up;  // ceil(1/min_abs)
    mpz_cdiv_q(up.get_mpz_t(), min_abs.get_den().get_mpz_t(),
               min_abs.get_num().get_mpz_t());
    for (auto& c : w.unit.weights) c *= up;
    w.unit.bias *= up;
    w.margins = margins_of();
  }

  for (std::size_t i = 0; i < points.size(); ++i) {
    bool ok = labels[i] ? w.margins[i] >= 1 : w.margins[i] <= -1;
    if (!ok) throw VerificationError("separating witness failed margin check");
  }
}

SeparabilityResult is_separable(const PointSet& points, const Labeling& labels) {
  if (points.size() == 0) throw InputError("empty point set");
  if (labels.size() != points.size())
    throw InputError("labeling size does not match point set");

  bool all_pos = true, all_neg = true;
  for (auto l : labels) (l ? all_neg : all_pos) = false;
  SeparabilityResult res;
  if (all_pos || all_neg) {
    res.separable = true;
    SeparationWitness w;
    w.unit.weights.assign(points.dim, Rat(0));
    w.unit.bias = all_pos ? 1 : -1;
    res.witness = std::move(w);
    normalize_witness(points, labels, *res.witness);
    return res;
  }

  std::vector<std::vector<Rat>> rows;
  rows.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i)
    rows.push_back(signed_row(points.pts[i], labels[i] != 0));
  res = detail::separable_rows(rows);
  if (res.separable) normalize_witness(points, labels, *res.witness);
  return res;
}

bool complement_closed(const PointSet& points, const Labeling& labels) {
  Labeling flipped(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) flipped[i] = labels[i] ? 0 : 1;
  return is_separable(points, labels).separable ==
         is_separable(points, flipped).separable;
}

bool brute_force_separable(const PointSet& points, const Labeling& labels,
                           long weight_bound) {
  if (!points.is_boolean())
    throw InputError("brute-force oracle requires Boolean points");
  if (labels.size() != points.size())
    throw InputError("labeling size does not match point set");
  const int n = points.dim;
  const std::size_t m = points.size();
  std::vector<std::vector<int>> x(m, std::vector<int>(n));
  for (std::size_t i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) x[i][j] = points.pts[i][j] == 1 ? 1 : 0;

  const long tmax = 2 * weight_bound * std::max(n, 1) + 1;  // t = 2*alpha
  std::vector<long> w(n, -weight_bound);
  for (;;) {
    for (long tt = -tmax; tt <= tmax; ++tt) {
      bool ok = true;
      for (std::size_t i = 0; i < m && ok; ++i) {
        long margin2 = tt;
        for (int j = 0; j < n; ++j) margin2 += 2 * w[j] * x[i][j];
        ok = labels[i] ? margin2 >= 0 : margin2 < 0;
      }
      if (ok) return true;
    }
    int j = n - 1;
    while (j >= 0 && w[j] == weight_bound) w[j--] = -weight_bound;
    if (j < 0) break;
    ++w[j];
  }
  return false;
}

}  // namespace threshcap
