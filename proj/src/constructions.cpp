#include <threshcap/constructions.hpp>

#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace threshcap {

namespace {

void require_boolean(const std::vector<Rat>& theta, const std::string& where) {
  for (const Rat& v : theta)
    if (v != 0 && v != 1)
      throw InputError(where + ": pattern entries must be 0 or 1");
}

std::vector<Rat> to_rat(const Labeling& bits) {
  std::vector<Rat> out;
  out.reserve(bits.size());
  for (std::uint8_t b : bits) out.emplace_back(static_cast<int>(b));
  return out;
}

std::string bits_str(const std::vector<std::uint8_t>& bits) {
  std::string s;
  s.reserve(bits.size());
  for (std::uint8_t b : bits) s += (b ? '1' : '0');
  return s;
}

ThresholdUnit constant_unit(int total, bool value) {
  ThresholdUnit u;
  u.weights.assign(total, Rat(0));
  u.bias = value ? Rat(0) : Rat(-1);
  return u;
}

// Scatter a unit onto a wider input: weight i lands on coordinate
// positions[i], every other coordinate reads zero.
ThresholdUnit place_unit(const ThresholdUnit& u, int total,
                         const std::vector<int>& positions) {
  ThresholdUnit out;
  out.weights.assign(total, Rat(0));
  out.bias = u.bias;
  for (std::size_t i = 0; i < positions.size(); ++i)
    out.weights[static_cast<std::size_t>(positions[i])] = u.weights[i];
  return out;
}

std::vector<int> contiguous(int offset, int count) {
  std::vector<int> pos(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) pos[static_cast<std::size_t>(i)] = offset + i;
  return pos;
}

// Unit computing u(x) AND (y == theta), with x ranging over `points` and y
// over the full cube H^{theta.size()}. The accepting margins of u are
// rescaled into [-1/2, 0] and the rejecting ones strictly below -1/2, so
// adding the equality indicator on y decides the conjunction.
ThresholdUnit clause_over(const std::vector<std::vector<Rat>>& points,
                          const ThresholdUnit& u,
                          const std::vector<Rat>& theta) {
  const int n = u.in_dim();
  const int q = static_cast<int>(theta.size());
  bool have_pos = false;
  bool have_neg = false;
  Rat top, low_pos, top_neg;  // max/min accepting margin, max rejecting margin
  for (const auto& p : points) {
    Rat t = u.margin(p);
    if (t >= 0) {
      if (!have_pos) {
        top = t;
        low_pos = t;
        have_pos = true;
      } else {
        if (t > top) top = t;
        if (t < low_pos) low_pos = t;
      }
    } else {
      if (!have_neg || t > top_neg) top_neg = t;
      have_neg = true;
    }
  }
  if (!have_pos) return constant_unit(n + q, false);

  ThresholdUnit out;
  out.weights.reserve(static_cast<std::size_t>(n + q));
  if (!have_neg) {
    // u accepts every point: only the equality clause remains.
    out.weights.assign(static_cast<std::size_t>(n), Rat(0));
    out.bias = 0;
  } else {
    Rat scale = Rat(1) / (top - top_neg);
    if (top != low_pos) {
      Rat alt = Rat(1) / (2 * (top - low_pos));
      if (alt < scale) scale = alt;
    }
    for (const Rat& w : u.weights) out.weights.push_back(scale * w);
    out.bias = scale * (u.bias - top);
  }
  Rat theta_sum(0);
  for (const Rat& v : theta) {
    out.weights.push_back(2 * v - 1);
    theta_sum += v;
  }
  out.bias += Rat(1, 2) - theta_sum;
  return out;
}

// Blockwise exponential map: p consecutive blocks of k coordinates, each
// sent through its own copy of exponential_map(k). H^{pk} -> H^{p 2^k}.
ThresholdMap blockwise_exponential(long long p, long long k,
                                   const ConstructionCaps& caps) {
  ThresholdMap block = exponential_map(static_cast<int>(k), caps);
  const int total_in = static_cast<int>(p * k);
  ThresholdMap out;
  out.units.reserve(static_cast<std::size_t>(p) * block.units.size());
  for (long long b = 0; b < p; ++b) {
    std::vector<int> pos =
        contiguous(static_cast<int>(b * k), static_cast<int>(k));
    for (const ThresholdUnit& u : block.units)
      out.units.push_back(place_unit(u, total_in, pos));
  }
  return out;
}

}  // namespace

ThresholdUnit equality_indicator(const std::vector<Rat>& theta) {
  require_boolean(theta, "equality_indicator");
  ThresholdUnit u;
  u.weights.reserve(theta.size());
  Rat sum(0);
  for (const Rat& v : theta) {
    u.weights.push_back(2 * v - 1);
    sum += v;
  }
  u.bias = Rat(1, 2) - sum;
  return u;
}

ThresholdUnit logic_unit(LogicKind kind, int fan_in) {
  if (fan_in < 1) throw InputError("logic_unit: fan-in must be at least 1");
  if ((kind == LogicKind::NOT || kind == LogicKind::IDENTITY) && fan_in != 1)
    throw InputError("logic_unit: NOT and IDENTITY take exactly one input");
  ThresholdUnit u;
  switch (kind) {
    case LogicKind::AND:
      u.weights.assign(static_cast<std::size_t>(fan_in), Rat(1));
      u.bias = Rat(1, 2) - fan_in;
      break;
    case LogicKind::OR:
      u.weights.assign(static_cast<std::size_t>(fan_in), Rat(1));
      u.bias = Rat(-1, 2);
      break;
    case LogicKind::NOT:
      u.weights.assign(1, Rat(-1));
      u.bias = Rat(1, 2);
      break;
    case LogicKind::IDENTITY:
      u.weights.assign(1, Rat(1));
      u.bias = Rat(-1, 2);
      break;
  }
  return u;
}

ThresholdUnit add_clause(const ThresholdUnit& u, const std::vector<Rat>& theta,
                         const ConstructionCaps& caps) {
  require_boolean(theta, "add_clause");
  const int n = u.in_dim();
  const int q = static_cast<int>(theta.size());
  if (n + q > caps.verify_bits)
    throw BudgetError("verify-cap",
                      "add_clause: " + std::to_string(n + q) +
                          " total input bits exceed the verification cap of " +
                          std::to_string(caps.verify_bits));
  PointSet domain = PointSet::cube(n);
  ThresholdUnit out = clause_over(domain.pts, u, theta);

  std::vector<std::uint8_t> theta_bits(static_cast<std::size_t>(q));
  for (int j = 0; j < q; ++j)
    theta_bits[static_cast<std::size_t>(j)] =
        (theta[static_cast<std::size_t>(j)] == 1) ? 1 : 0;
  const std::uint64_t total = std::uint64_t{1} << (n + q);
  for (std::uint64_t c = 0; c < total; ++c) {
    std::vector<std::uint8_t> xy = code_of(c, n + q);
    std::vector<std::uint8_t> x(xy.begin(), xy.begin() + n);
    std::vector<std::uint8_t> y(xy.begin() + n, xy.end());
    const int want = (u.eval_bits(x) == 1 && y == theta_bits) ? 1 : 0;
    if (out.eval_bits(xy) != want)
      throw VerificationError(
          "add_clause: constructed unit disagrees with the defining "
          "conjunction at input " +
          bits_str(xy));
  }
  return out;
}

ThresholdMap exponential_map(int k, const ConstructionCaps& caps) {
  if (k < 1) throw InputError("exponential_map: k must be at least 1");
  if (k > 30 || (std::int64_t{1} << k) > caps.max_outputs)
    throw BudgetError("output-cap",
                      "exponential_map: 2^" + std::to_string(k) +
                          " outputs exceed the cap of " +
                          std::to_string(caps.max_outputs));
  const std::uint64_t width = std::uint64_t{1} << k;
  ThresholdMap map;
  map.units.reserve(width);
  // Component j fires exactly on the input whose numeral value is 2^k - j,
  // so the numeral x maps to the basis vector with a 1 in position 2^k - x.
  for (std::uint64_t j = 1; j <= width; ++j)
    map.units.push_back(equality_indicator(to_rat(code_of(width - j, k))));
  return map;
}

BalanceParameters balance_parameters(long long n, long long m) {
  if (n < 4 || 4 * n > m)
    throw InputError(
        "balance_parameters: hypotheses violated (need n >= 4 and m >= 4n)");
  // The equation 2^x / x = m / (2n) needs a root with x <= n/2, which is
  // equivalent to the exact integer condition m^2 <= 2^{n+4}.
  Int mm = Int(static_cast<long>(m)) * static_cast<long>(m);
  if (mm > 16 * pow2(static_cast<unsigned long>(n)))
    throw InputError(
        "balance_parameters: hypotheses violated (m^2 must be at most "
        "2^{n+4} so the balance equation has a root)");

  // k is the largest integer j in [2, n/2] with 2^j / j <= m / (2n),
  // i.e. the floor of the equation's root. The scan is exact.
  long long k = 2;
  for (long long j = 2; 2 * j <= n; ++j) {
    if (pow2(static_cast<unsigned long>(j)) * static_cast<long>(2 * n) <=
        Int(static_cast<long>(m)) * static_cast<long>(j))
      k = j;
  }

  const long long p = n / k;
  const long long n0 = p * k;
  Int m0_int = Int(static_cast<long>(p)) * pow2(static_cast<unsigned long>(k));
  const long long m0 = m0_int.get_si();

  auto ensure = [](bool ok) {
    if (!ok)
      throw VerificationError("balance_parameters: internal invariant failed");
  };
  ensure(Int(static_cast<long>(n0)) * pow2(static_cast<unsigned long>(k)) ==
         Int(static_cast<long>(m0)) * static_cast<long>(k));
  ensure(k >= 2 && 2 * k <= n);
  ensure(2 * n0 >= n && n0 <= n);
  ensure(8 * m0 >= m && 2 * m0 <= m);

  // Bisection estimate of the root itself; every range check above is an
  // exact integer identity, so the estimate is purely informative.
  const double rho =
      static_cast<double>(m) / (2.0 * static_cast<double>(n));
  Rat lo(2);
  Rat hi = Rat(static_cast<long>(n)) / 2;
  while (true) {
    Rat gap = hi - lo;
    if (gap * 1073741824L <= 1) break;  // interval width below 2^-30
    Rat mid = (lo + hi) / 2;
    const double md = mid.get_d();
    if (std::exp2(md) / md <= rho)
      lo = mid;
    else
      hi = mid;
  }

  BalanceParameters bp;
  bp.k = k;
  bp.n0 = n0;
  bp.m0 = m0;
  bp.x = (lo + hi) / 2;
  return bp;
}

EnrichmentResult enrichment_map(long long n, long long m,
                                const ConstructionCaps& caps) {
  if (n < 1 || m < n)
    throw InputError("enrichment_map: need 1 <= n <= m");
  if (m > caps.max_outputs)
    throw BudgetError("output-cap",
                      "enrichment_map: " + std::to_string(m) +
                          " outputs exceed the cap of " +
                          std::to_string(caps.max_outputs));

  EnrichmentResult res;
  const int total_in = static_cast<int>(n);

  // Exactly balanced split: some block length k in [2, n/2] divides n
  // with (n/k) 2^k = m.
  long long exact_k = 0;
  for (long long k = 2; 2 * k <= n; ++k) {
    if (n % k == 0 &&
        Int(static_cast<long>(n / k)) * pow2(static_cast<unsigned long>(k)) ==
            static_cast<long>(m)) {
      exact_k = k;
      break;
    }
  }

  if (exact_k > 0) {
    res.map = blockwise_exponential(n / exact_k, exact_k, caps);
    res.route = "balanced-blockwise";
  } else if (m <= 4 * n) {
    ThresholdMap map;
    map.units.reserve(static_cast<std::size_t>(m));
    for (long long i = 0; i < n; ++i)
      map.units.push_back(place_unit(logic_unit(LogicKind::IDENTITY, 1),
                                     total_in, {static_cast<int>(i)}));
    for (long long i = n; i < m; ++i)
      map.units.push_back(constant_unit(total_in, false));
    res.map = std::move(map);
    res.route = "identity";
  } else {
    BalanceParameters bp = balance_parameters(n, m);
    ThresholdMap core = blockwise_exponential(bp.n0 / bp.k, bp.k, caps);
    ThresholdMap map;
    map.units.reserve(static_cast<std::size_t>(m));
    std::vector<int> core_pos = contiguous(0, static_cast<int>(bp.n0));
    for (const ThresholdUnit& u : core.units)
      map.units.push_back(place_unit(u, total_in, core_pos));
    for (long long i = bp.n0; i < n; ++i)
      map.units.push_back(place_unit(logic_unit(LogicKind::IDENTITY, 1),
                                     total_in, {static_cast<int>(i)}));
    if (static_cast<long long>(map.units.size()) > m)
      throw VerificationError("enrichment_map: internal width overflow");
    while (static_cast<long long>(map.units.size()) < m)
      map.units.push_back(constant_unit(total_in, false));
    res.map = std::move(map);
    res.route = "balanced-general";
    res.balance = bp;
  }

  if (n <= caps.verify_bits) {
    std::set<std::vector<std::uint8_t>> seen;
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t c = 0; c < total; ++c) {
      auto out = res.map.eval_bits(code_of(c, total_in));
      if (!seen.insert(std::move(out)).second)
        throw VerificationError(
            "enrichment_map: image collision on input " +
            bits_str(code_of(c, total_in)));
    }
    res.verified = true;
  }
  return res;
}

MultiplexResult multiplex(const PointSet& s,
                          const std::vector<ThresholdUnit>& functions,
                          const ConstructionCaps& caps) {
  s.validate();
  const long long m = static_cast<long long>(functions.size());
  if (m < 1) throw InputError("multiplex: need at least one function");
  for (const ThresholdUnit& f : functions)
    if (f.in_dim() != s.dim)
      throw InputError(
          "multiplex: every function must match the point set dimension");

  long long m_minus = 0;
  while ((1ll << m_minus) < m) ++m_minus;
  if (m_minus > caps.verify_bits ||
      Int(static_cast<unsigned long>(s.size())) *
              pow2(static_cast<unsigned long>(m_minus)) >
          pow2(static_cast<unsigned long>(caps.verify_bits)))
    throw BudgetError("verify-cap",
                      "multiplex: the verification domain exceeds 2^" +
                          std::to_string(caps.verify_bits) + " points");

  MultiplexPlan plan;
  plan.m = m;
  plan.m_minus = m_minus;
  ThresholdMap hidden;
  hidden.units.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    Labeling sig =
        code_of(static_cast<std::uint64_t>(i), static_cast<int>(m_minus));
    hidden.units.push_back(clause_over(
        s.pts, functions[static_cast<std::size_t>(i)], to_rat(sig)));
    plan.sigma.push_back(std::move(sig));
  }
  ThresholdMap out_layer;
  out_layer.units.push_back(logic_unit(LogicKind::OR, static_cast<int>(m)));

  LayeredNetwork net;
  net.in_dim = s.dim + static_cast<int>(m_minus);
  net.maps.push_back(std::move(hidden));
  net.maps.push_back(std::move(out_layer));
  net.validate();

  // Defining property: on x (+) sigma(i) the network computes function i,
  // and 0 whenever the selector block matches no code.
  const std::uint64_t sel_total = std::uint64_t{1} << m_minus;
  for (const auto& point : s.pts) {
    for (std::uint64_t c = 0; c < sel_total; ++c) {
      std::vector<Rat> input = point;
      const Labeling sel = code_of(c, static_cast<int>(m_minus));
      for (std::uint8_t b : sel) input.emplace_back(static_cast<int>(b));
      const int got = net.eval(input)[0];
      const int want =
          (c < static_cast<std::uint64_t>(m))
              ? functions[static_cast<std::size_t>(c)].eval(point)
              : 0;
      if (got != want)
        throw VerificationError(
            "multiplex: network disagrees with the routing property");
    }
  }
  return {std::move(net), std::move(plan)};
}

namespace {

// Slot layout of one assembled stage in a stacked network, in block order:
// X  = prefix copy of the input, feeding later modules' first maps;
// E  = copy of the selector block;
// S1 = the stage's own module first-map output;
// S2 = the previous module's second-map output;
// ACC = the OR accumulator of decided module outputs;
// BK = the most recently decided module output.
struct StageLayout {
  long long x = 0, e = 0, s1 = 0, s2 = 0, acc = 0, bk = 0;
  long long width() const { return x + e + s1 + s2 + acc + bk; }
  long long off_e() const { return x; }
  long long off_s1() const { return x + e; }
  long long off_s2() const { return x + e + s1; }
  long long off_acc() const { return x + e + s1 + s2; }
  long long off_bk() const { return x + e + s1 + s2 + acc; }
};

}  // namespace

StackResult stack(const std::vector<LayeredNetwork>& modules,
                  const Architecture& target, const ConstructionCaps& caps) {
  target.validate();
  const long long L = target.layers();
  if (L < 5)
    throw InputError("stack: the target profile needs at least five layers");
  const long long M = L - 3;
  if (static_cast<long long>(modules.size()) != M)
    throw InputError("stack: expected " + std::to_string(M) +
                     " modules for the profile " + target.str());

  const std::vector<long long>& n = target.sizes;
  std::vector<long long> nbar(n.size());
  nbar[0] = n[0];
  for (std::size_t i = 1; i < n.size(); ++i)
    nbar[i] = std::min(nbar[i - 1], n[i]);

  StackPlan plan;
  for (long long k = 1; k <= M; ++k) {
    const LayeredNetwork& mod = modules[static_cast<std::size_t>(k - 1)];
    mod.validate();
    const std::vector<long long> shape = mod.architecture();
    const std::vector<long long> want = {nbar[static_cast<std::size_t>(k - 1)],
                                         n[static_cast<std::size_t>(k)],
                                         n[static_cast<std::size_t>(k + 1)],
                                         1};
    if (shape != want)
      throw InputError("stack: module " + std::to_string(k) + " has shape " +
                       Architecture(shape).str() +
                       " but the profile requires " +
                       Architecture(want).str());
    plan.module_shapes.push_back(want);
    plan.projections.push_back(want[0]);
  }

  long long l_minus = 0;
  while ((1ll << l_minus) < M) ++l_minus;
  plan.l_minus = l_minus;
  for (long long k = 1; k <= M; ++k)
    plan.eta.push_back(code_of(static_cast<std::uint64_t>(k - 1),
                               static_cast<int>(l_minus)));

  if (n[0] + l_minus > caps.verify_bits)
    throw BudgetError("verify-cap",
                      "stack: " + std::to_string(n[0] + l_minus) +
                          " input bits exceed the verification cap of " +
                          std::to_string(caps.verify_bits));
  for (long long k = 1; k <= M; ++k)
    if (n[static_cast<std::size_t>(k + 1)] + l_minus > caps.verify_bits)
      throw BudgetError(
          "verify-cap",
          "stack: the selector clause of module " + std::to_string(k) +
              " exceeds the verification cap of " +
              std::to_string(caps.verify_bits) + " bits");

  // Block widths of stage t (1-based, aligned with target layer t+1).
  auto layout_at = [&](long long t) {
    StageLayout lay;
    if (t <= M - 1) lay.x = nbar[static_cast<std::size_t>(t)];
    if (t <= M + 1) lay.e = l_minus;
    if (t <= M) lay.s1 = n[static_cast<std::size_t>(t)];
    if (t >= 2 && t <= M + 1) lay.s2 = n[static_cast<std::size_t>(t)];
    if (t >= 3) lay.acc = 1;
    if (t >= 4 && t <= M + 2) lay.bk = 1;
    return lay;
  };

  // Clause unit deciding module k: its output unit AND (selector == eta(k)),
  // wired to the previous stage's S2 and E blocks.
  auto decide_unit = [&](long long k, const StageLayout& prev, int in_w) {
    const ThresholdUnit& out_u =
        modules[static_cast<std::size_t>(k - 1)].maps[2].units[0];
    const PointSet domain = PointSet::cube(out_u.in_dim());
    const ThresholdUnit cl = clause_over(
        domain.pts, out_u,
        to_rat(plan.eta[static_cast<std::size_t>(k - 1)]));
    std::vector<int> pos =
        contiguous(static_cast<int>(prev.off_s2()), static_cast<int>(prev.s2));
    for (long long j = 0; j < l_minus; ++j)
      pos.push_back(static_cast<int>(prev.off_e() + j));
    return place_unit(cl, in_w, pos);
  };

  const ThresholdUnit identity = logic_unit(LogicKind::IDENTITY, 1);

  LayeredNetwork net;
  net.in_dim = static_cast<int>(n[0] + l_minus);
  StageLayout prev;  // the input acts as a stage with only X and E blocks
  prev.x = n[0];
  prev.e = l_minus;

  plan.widths.push_back({1, n[0] + l_minus,
                         2 + 2 * (n[0] + l_minus) + (nbar[0] + l_minus),
                         6 * n[0]});

  for (long long t = 1; t <= L - 1; ++t) {
    const StageLayout cur = layout_at(t);
    const int in_w = static_cast<int>(prev.width());
    ThresholdMap stage;
    stage.units.reserve(static_cast<std::size_t>(cur.width()));

    for (long long i = 0; i < cur.x; ++i)
      stage.units.push_back(
          place_unit(identity, in_w, {static_cast<int>(i)}));
    for (long long i = 0; i < cur.e; ++i)
      stage.units.push_back(place_unit(
          identity, in_w, {static_cast<int>(prev.off_e() + i)}));
    if (cur.s1 > 0) {
      const ThresholdMap& map1 =
          modules[static_cast<std::size_t>(t - 1)].maps[0];
      const std::vector<int> pos =
          contiguous(0, static_cast<int>(nbar[static_cast<std::size_t>(t - 1)]));
      for (const ThresholdUnit& u : map1.units)
        stage.units.push_back(place_unit(u, in_w, pos));
    }
    if (cur.s2 > 0) {
      const ThresholdMap& map2 =
          modules[static_cast<std::size_t>(t - 2)].maps[1];
      const std::vector<int> pos = contiguous(
          static_cast<int>(prev.off_s1()), static_cast<int>(prev.s1));
      for (const ThresholdUnit& u : map2.units)
        stage.units.push_back(place_unit(u, in_w, pos));
    }
    if (cur.acc > 0) {
      if (t == 3) {
        stage.units.push_back(decide_unit(1, prev, in_w));
      } else if (t == 4) {
        stage.units.push_back(place_unit(
            identity, in_w, {static_cast<int>(prev.off_acc())}));
      } else {
        stage.units.push_back(place_unit(
            logic_unit(LogicKind::OR, 2), in_w,
            {static_cast<int>(prev.off_acc()),
             static_cast<int>(prev.off_bk())}));
      }
    }
    if (cur.bk > 0) stage.units.push_back(decide_unit(t - 2, prev, in_w));

    if (static_cast<long long>(stage.units.size()) != cur.width())
      throw VerificationError("stack: internal stage width mismatch");
    const long long cap =
        2 + 2 * (n[static_cast<std::size_t>(t)] + l_minus) +
        (nbar[static_cast<std::size_t>(t)] + l_minus);
    if (cur.width() > cap)
      throw VerificationError("stack: stage exceeds its width budget");
    plan.widths.push_back(
        {static_cast<std::size_t>(t + 1), cur.width(), cap,
         6 * n[static_cast<std::size_t>(t)]});

    net.maps.push_back(std::move(stage));
    prev = cur;
  }

  // Output unit: OR of the accumulator and the last decided module output.
  {
    const int in_w = static_cast<int>(prev.width());
    ThresholdMap stage;
    stage.units.push_back(
        place_unit(logic_unit(LogicKind::OR, 2), in_w,
                   {static_cast<int>(prev.off_acc()),
                    static_cast<int>(prev.off_bk())}));
    net.maps.push_back(std::move(stage));
  }
  net.validate();

  // Defining property: on x (+) eta(k) the assembly computes module k on
  // the input prefix it projects to, and 0 off the selector codes.
  const std::uint64_t xs = std::uint64_t{1} << n[0];
  const std::uint64_t sels = std::uint64_t{1} << l_minus;
  for (std::uint64_t xc = 0; xc < xs; ++xc) {
    const auto xbits = code_of(xc, static_cast<int>(n[0]));
    for (std::uint64_t sc = 0; sc < sels; ++sc) {
      auto input = xbits;
      const auto sel = code_of(sc, static_cast<int>(l_minus));
      input.insert(input.end(), sel.begin(), sel.end());
      const int got = net.eval_bits(input)[0];
      int want = 0;
      if (sc < static_cast<std::uint64_t>(M)) {
        const LayeredNetwork& mod = modules[static_cast<std::size_t>(sc)];
        const std::vector<std::uint8_t> px(
            xbits.begin(),
            xbits.begin() + static_cast<long>(nbar[static_cast<std::size_t>(sc)]));
        want = mod.eval_bits(px)[0];
      }
      if (got != want)
        throw VerificationError(
            "stack: assembled network disagrees with the routing property "
            "at input " +
            bits_str(input));
    }
  }
  return {std::move(net), std::move(plan)};
}

EquivalenceResult verify_equivalence(const LayeredNetwork& net,
                                     const TruthTable& reference,
                                     const ConstructionCaps& caps) {
  net.validate();
  if (net.in_dim != reference.n)
    throw InputError("verify_equivalence: input dimension mismatch");
  if (net.maps.back().out_dim() != reference.m)
    throw InputError("verify_equivalence: output width mismatch");
  if (reference.n > caps.verify_bits)
    throw BudgetError("verify-cap",
                      "verify_equivalence: " + std::to_string(reference.n) +
                          " input bits exceed the verification cap of " +
                          std::to_string(caps.verify_bits));
  const std::uint64_t total = std::uint64_t{1} << reference.n;
  if (reference.rows.size() != total)
    throw InputError("verify_equivalence: reference table is malformed");

  EquivalenceResult res;
  for (std::uint64_t c = 0; c < total; ++c) {
    const auto in = code_of(c, reference.n);
    if (pack_bits(net.eval_bits(in)) != reference.rows[c]) {
      res.equal = false;
      res.counterexample = in;
      return res;
    }
  }
  return res;
}

}  // namespace threshcap
