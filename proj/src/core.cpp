#include <threshcap/core.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>

namespace threshcap {

Rat parse_rat(const std::string& text) {
  if (text.empty()) throw InputError("empty rational literal");
  std::string t = text;
  std::size_t slash = t.find('/');
  auto check_int = [&](const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  try {
    if (slash == std::string::npos) {
      if (!check_int(t)) throw InputError("bad rational literal: " + text);
      return Rat(Int(t));
    }
    std::string num = t.substr(0, slash), den = t.substr(slash + 1);
    if (!check_int(num) || !check_int(den))
      throw InputError("bad rational literal: " + text);
    Int d(den);
    if (d == 0) throw InputError("zero denominator: " + text);
    Rat r(Int(num), d);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw InputError("bad rational literal: " + text);
  }
}

std::string rat_str(const Rat& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Int binomial(unsigned long n, unsigned long k) {
  if (k > n) return 0;
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

double log2_int(const Int& value) {
  if (value <= 0) throw InputError("log2 of non-positive integer");
  signed long exp2;
  double d = mpz_get_d_2exp(&exp2, value.get_mpz_t());
  return std::log2(d) + static_cast<double>(exp2);
}

Int pow2(unsigned long exponent) {
  Int r = 1;
  mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), exponent);
  return r;
}

Rat pow_rat(const Rat& base, unsigned long exponent) {
  Rat r = 1;
  Rat b = base;
  unsigned long e = exponent;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

bool PointSet::is_boolean() const {
  for (const auto& p : pts)
    for (const auto& c : p)
      if (c != 0 && c != 1) return false;
  return true;
}

void PointSet::validate() const {
  for (const auto& p : pts)
    if (static_cast<int>(p.size()) != dim)
      throw InputError("point dimension mismatch");
  std::set<std::vector<Rat>> seen;
  for (const auto& p : pts)
    if (!seen.insert(p).second) throw InputError("duplicate point in set");
}

PointSet PointSet::cube(int n) {
  if (n < 0 || n > 20) throw InputError("cube dimension out of range");
  PointSet s;
  s.dim = n;
  s.pts.reserve(std::size_t{1} << n);
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i) {
    std::vector<Rat> p(n);
    for (int j = 0; j < n; ++j) p[j] = (i >> (n - 1 - j)) & 1 ? 1 : 0;
    s.pts.push_back(std::move(p));
  }
  return s;
}

bool is_full_cube(const PointSet& s) {
  if (s.dim > 20) return false;
  if (s.size() != (std::size_t{1} << s.dim)) return false;
  if (!s.is_boolean()) return false;
  std::set<std::uint64_t> seen;
  for (const auto& p : s.pts) {
    std::uint64_t v = 0;
    for (const auto& c : p) v = (v << 1) | (c == 1 ? 1 : 0);
    seen.insert(v);
  }
  return seen.size() == s.size();
}

PointSet direct_sum(const PointSet& u, const PointSet& v) {
  PointSet s;
  s.dim = u.dim + v.dim;
  s.pts.reserve(u.size() * v.size());
  for (const auto& a : u.pts)
    for (const auto& b : v.pts) {
      std::vector<Rat> p = a;
      p.insert(p.end(), b.begin(), b.end());
      s.pts.push_back(std::move(p));
    }
  return s;
}

Rat ThresholdUnit::margin(const std::vector<Rat>& x) const {
  if (x.size() != weights.size()) throw InputError("unit input dimension mismatch");
  Rat t = bias;
  for (std::size_t i = 0; i < weights.size(); ++i) t += weights[i] * x[i];
  return t;
}

int ThresholdUnit::eval_bits(const std::vector<std::uint8_t>& x) const {
  if (x.size() != weights.size()) throw InputError("unit input dimension mismatch");
  Rat t = bias;
  for (std::size_t i = 0; i < weights.size(); ++i)
    if (x[i]) t += weights[i];
  return heaviside(t);
}

void ThresholdMap::validate() const {
  if (units.empty()) throw InputError("empty threshold map");
  for (const auto& u : units)
    if (u.in_dim() != units.front().in_dim())
      throw InputError("inconsistent unit dimensions in map");
}

std::vector<std::uint8_t> ThresholdMap::eval(const std::vector<Rat>& x) const {
  std::vector<std::uint8_t> y(units.size());
  for (std::size_t i = 0; i < units.size(); ++i)
    y[i] = static_cast<std::uint8_t>(units[i].eval(x));
  return y;
}

std::vector<std::uint8_t> ThresholdMap::eval_bits(
    const std::vector<std::uint8_t>& x) const {
  std::vector<std::uint8_t> y(units.size());
  for (std::size_t i = 0; i < units.size(); ++i)
    y[i] = static_cast<std::uint8_t>(units[i].eval_bits(x));
  return y;
}

void LayeredNetwork::validate() const {
  if (maps.empty()) throw InputError("network has no layers");
  int d = in_dim;
  for (const auto& m : maps) {
    m.validate();
    if (m.in_dim() != d) throw InputError("layer dimensions do not chain");
    d = m.out_dim();
  }
}

std::vector<long long> LayeredNetwork::architecture() const {
  std::vector<long long> a{in_dim};
  for (const auto& m : maps) a.push_back(m.out_dim());
  return a;
}

std::vector<std::uint8_t> LayeredNetwork::eval_bits(
    const std::vector<std::uint8_t>& x) const {
  std::vector<std::uint8_t> v = x;
  for (const auto& m : maps) v = m.eval_bits(v);
  return v;
}

std::vector<std::uint8_t> LayeredNetwork::eval(const std::vector<Rat>& x) const {
  if (maps.empty()) throw InputError("network has no layers");
  std::vector<std::uint8_t> v = maps.front().eval(x);
  for (std::size_t i = 1; i < maps.size(); ++i) v = maps[i].eval_bits(v);
  return v;
}

long long Architecture::nodes() const {
  long long n = 0;
  for (long long s : sizes) n += s;
  return n;
}

long long Architecture::connections() const {
  long long w = 0;
  for (std::size_t k = 0; k + 1 < sizes.size(); ++k) w += sizes[k] * sizes[k + 1];
  return w;
}

long long Architecture::parameters() const {
  long long p = connections();
  for (std::size_t k = 1; k < sizes.size(); ++k) p += sizes[k];
  return p;
}

void Architecture::validate() const {
  if (sizes.empty()) throw InputError("empty architecture");
  for (long long s : sizes)
    if (s < 1) throw InputError("architecture sizes must be >= 1");
}

std::string Architecture::str() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (i) os << ",";
    os << sizes[i];
  }
  os << ")";
  return os.str();
}

std::uint64_t pack_bits(const std::vector<std::uint8_t>& bits) {
  if (bits.size() > 64) throw InputError("too many bits to pack");
  std::uint64_t v = 0;
  for (std::uint8_t b : bits) v = (v << 1) | (b ? 1u : 0u);
  return v;
}

std::vector<std::uint8_t> unpack_bits(std::uint64_t value, int width) {
  std::vector<std::uint8_t> bits(width);
  for (int i = 0; i < width; ++i)
    bits[i] = static_cast<std::uint8_t>((value >> (width - 1 - i)) & 1);
  return bits;
}

std::vector<std::uint8_t> code_of(std::uint64_t value, int width) {
  if (width < 0 || width > 63 || (width < 63 && value >= (std::uint64_t{1} << width)))
    throw InputError("value does not fit in code width");
  return unpack_bits(value, width);
}

std::string TruthTable::row_str(std::size_t i) const {
  std::string s(m, '0');
  for (int j = 0; j < m; ++j)
    if ((rows[i] >> (m - 1 - j)) & 1) s[j] = '1';
  return s;
}

static TruthTable table_of(int n, int m,
                           const std::function<std::vector<std::uint8_t>(
                               const std::vector<std::uint8_t>&)>& f) {
  if (n < 0 || n > 20) throw InputError("truth table input dimension out of range");
  if (m < 1 || m > 64) throw InputError("truth table output dimension out of range");
  TruthTable t;
  t.n = n;
  t.m = m;
  t.rows.resize(std::size_t{1} << n);
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i)
    t.rows[i] = pack_bits(f(unpack_bits(i, n)));
  return t;
}

TruthTable truth_table(const LayeredNetwork& net) {
  net.validate();
  return table_of(net.in_dim, net.maps.back().out_dim(),
                  [&](const std::vector<std::uint8_t>& x) { return net.eval_bits(x); });
}

TruthTable truth_table(const ThresholdMap& map) {
  map.validate();
  return table_of(map.in_dim(), map.out_dim(),
                  [&](const std::vector<std::uint8_t>& x) { return map.eval_bits(x); });
}

}  // namespace threshcap
