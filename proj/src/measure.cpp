#include "ordertop/measure.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "ordertop/errors.hpp"

namespace ordertop {

namespace mp = boost::multiprecision;

struct StepFunction::Node {
  bool leaf = true;
  Rational value;
  NodePtr left, right;
};

namespace {

using Node = StepFunction::Node;
using NodePtr = StepFunction::NodePtr;

NodePtr make_leaf(const Rational& v) {
  auto n = std::make_shared<Node>();
  n->value = v;
  return n;
}

NodePtr make_split(NodePtr l, NodePtr r) {
  if (l->leaf && r->leaf && l->value == r->value) return l;
  auto n = std::make_shared<Node>();
  n->leaf = false;
  n->left = std::move(l);
  n->right = std::move(r);
  return n;
}

const NodePtr& left_of(const NodePtr& n) { return n->leaf ? n : n->left; }
const NodePtr& right_of(const NodePtr& n) { return n->leaf ? n : n->right; }

template <class Op>
NodePtr combine(const NodePtr& a, const NodePtr& b, Op& op,
                std::map<std::pair<const Node*, const Node*>, NodePtr>& memo) {
  if (a->leaf && b->leaf) return make_leaf(op(a->value, b->value));
  auto key = std::make_pair(a.get(), b.get());
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  NodePtr r = make_split(combine(left_of(a), left_of(b), op, memo),
                         combine(right_of(a), right_of(b), op, memo));
  memo.emplace(key, r);
  return r;
}

template <class Op>
NodePtr combine(const NodePtr& a, const NodePtr& b, Op op) {
  std::map<std::pair<const Node*, const Node*>, NodePtr> memo;
  return combine(a, b, op, memo);
}

template <class Op>
NodePtr transform(const NodePtr& a, Op& op, std::map<const Node*, NodePtr>& memo) {
  if (a->leaf) return make_leaf(op(a->value));
  if (auto it = memo.find(a.get()); it != memo.end()) return it->second;
  NodePtr r = make_split(transform(a->left, op, memo), transform(a->right, op, memo));
  memo.emplace(a.get(), r);
  return r;
}

template <class Op>
NodePtr transform(const NodePtr& a, Op op) {
  std::map<const Node*, NodePtr> memo;
  return transform(a, op, memo);
}

// Folds leaves bottom-up: leaf -> f(value), split -> g(left, right).
template <class T, class Leaf, class Split>
T fold(const NodePtr& a, Leaf& leaf, Split& split, std::map<const Node*, T>& memo) {
  if (a->leaf) return leaf(a->value);
  if (auto it = memo.find(a.get()); it != memo.end()) return it->second;
  T r = split(fold<T>(a->left, leaf, split, memo), fold<T>(a->right, leaf, split, memo));
  memo.emplace(a.get(), r);
  return r;
}

template <class T, class Leaf, class Split>
T fold(const NodePtr& a, Leaf leaf, Split split) {
  std::map<const Node*, T> memo;
  return fold<T>(a, leaf, split, memo);
}

bool same(const NodePtr& a, const NodePtr& b, std::set<std::pair<const Node*, const Node*>>& seen) {
  if (a == b) return true;
  if (a->leaf != b->leaf) return false;
  if (a->leaf) return a->value == b->value;
  if (!seen.insert({a.get(), b.get()}).second) return true;
  return same(a->left, b->left, seen) && same(a->right, b->right, seen);
}

NodePtr build_dense(const std::vector<Rational>& c, std::size_t lo, std::size_t count) {
  if (count == 1) return make_leaf(c[lo]);
  return make_split(build_dense(c, lo, count / 2), build_dense(c, lo + count / 2, count / 2));
}

void fill_dense(const NodePtr& a, std::vector<Rational>& out, std::size_t lo, std::size_t count) {
  if (a->leaf) {
    std::fill(out.begin() + lo, out.begin() + lo + count, a->value);
    return;
  }
  if (count == 1) throw std::invalid_argument("level below the function's minimal level");
  fill_dense(a->left, out, lo, count / 2);
  fill_dense(a->right, out, lo + count / 2, count / 2);
}

constexpr std::size_t kMaxDenseLevel = 24;

Rational dyadic(std::size_t level) {
  return Rational(1, Integer(1) << level);
}

Rational rabs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

}  // namespace

std::string to_string(const Rational& r) { return r.str(); }

Rational rational_pow(const Rational& r, unsigned k) {
  return Rational(mp::pow(mp::numerator(r), k), mp::pow(mp::denominator(r), k));
}

Rational parse_rational(const std::string& s) {
  auto parse_int = [&](const std::string& t, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && !t.empty() && (t[0] == '-' || t[0] == '+')) i = 1;
    if (i == t.size()) throw ParseError(0, "bad rational '" + s + "'");
    for (std::size_t j = i; j < t.size(); ++j)
      if (t[j] < '0' || t[j] > '9') throw ParseError(0, "bad rational '" + s + "'");
    return Integer(t[0] == '+' ? t.substr(1) : t);
  };
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(parse_int(s, true));
  Integer den = parse_int(s.substr(slash + 1), false);
  if (den == 0) throw ParseError(0, "zero denominator in '" + s + "'");
  return Rational(parse_int(s.substr(0, slash), true), den);
}

// ---- StepFunction ----

StepFunction::StepFunction() : root_(make_leaf(0)) {}
StepFunction::StepFunction(const Rational& c) : root_(make_leaf(c)) {}

StepFunction StepFunction::from_dense(std::size_t level, const std::vector<Rational>& coeffs) {
  if (level > kMaxDenseLevel) throw std::length_error("dense level too large");
  if (coeffs.size() != (std::size_t{1} << level))
    throw std::invalid_argument("expected 2^" + std::to_string(level) + " coefficients, got " +
                                std::to_string(coeffs.size()));
  return StepFunction(build_dense(coeffs, 0, coeffs.size()));
}

StepFunction StepFunction::interval(std::size_t level, std::uint64_t index, const Rational& c) {
  if (level < 64 && (index >> level) != 0) throw std::out_of_range("interval index out of range");
  NodePtr zero = make_leaf(0);
  NodePtr node = make_leaf(c);
  for (std::size_t i = 0; i < level; ++i) {
    bool right = i < 64 && ((index >> i) & 1);
    node = right ? make_split(zero, node) : make_split(node, zero);
  }
  return StepFunction(node);
}

std::size_t StepFunction::level() const {
  return fold<std::size_t>(
      root_, [](const Rational&) { return std::size_t{0}; },
      [](std::size_t a, std::size_t b) { return 1 + std::max(a, b); });
}

std::vector<Rational> StepFunction::dense(std::size_t lvl) const {
  if (lvl > kMaxDenseLevel) throw std::length_error("dense level too large");
  if (lvl < level()) throw std::invalid_argument("level below the function's minimal level");
  std::vector<Rational> out(std::size_t{1} << lvl);
  fill_dense(root_, out, 0, out.size());
  return out;
}

Rational StepFunction::value_at(std::size_t lvl, std::uint64_t index) const {
  const Node* n = root_.get();
  for (std::size_t i = lvl; i-- > 0 && !n->leaf;) {
    bool right = i < 64 && ((index >> i) & 1);
    n = right ? n->right.get() : n->left.get();
  }
  if (!n->leaf) throw std::invalid_argument("cell is not inside one piece");
  return n->value;
}

Rational StepFunction::integral() const {
  return fold<Rational>(
      root_, [](const Rational& v) { return v; },
      [](const Rational& a, const Rational& b) { return Rational((a + b) / 2); });
}

Rational StepFunction::sup_abs() const {
  return fold<Rational>(
      root_, [](const Rational& v) { return rabs(v); },
      [](const Rational& a, const Rational& b) { return std::max(a, b); });
}

bool StepFunction::is_zero() const { return root_->leaf && root_->value == 0; }

bool StepFunction::is_nonnegative() const {
  return fold<bool>(
      root_, [](const Rational& v) { return v >= 0; }, [](bool a, bool b) { return a && b; });
}

StepFunction StepFunction::operator+(const StepFunction& o) const {
  return StepFunction(combine(root_, o.root_, [](const Rational& a, const Rational& b) {
    return Rational(a + b);
  }));
}
StepFunction StepFunction::operator-(const StepFunction& o) const {
  return StepFunction(combine(root_, o.root_, [](const Rational& a, const Rational& b) {
    return Rational(a - b);
  }));
}
StepFunction StepFunction::operator*(const StepFunction& o) const {
  return StepFunction(combine(root_, o.root_, [](const Rational& a, const Rational& b) {
    return Rational(a * b);
  }));
}
StepFunction StepFunction::min(const StepFunction& o) const {
  return StepFunction(combine(root_, o.root_, [](const Rational& a, const Rational& b) {
    return std::min(a, b);
  }));
}
StepFunction StepFunction::max(const StepFunction& o) const {
  return StepFunction(combine(root_, o.root_, [](const Rational& a, const Rational& b) {
    return std::max(a, b);
  }));
}
StepFunction StepFunction::operator-() const {
  return StepFunction(transform(root_, [](const Rational& v) { return Rational(-v); }));
}
StepFunction StepFunction::scaled(const Rational& c) const {
  return StepFunction(transform(root_, [&](const Rational& v) { return Rational(c * v); }));
}
StepFunction StepFunction::abs() const {
  return StepFunction(transform(root_, [](const Rational& v) { return rabs(v); }));
}
StepFunction StepFunction::pow(unsigned k) const {
  return StepFunction(transform(root_, [k](const Rational& v) { return Rational(rational_pow(v, k)); }));
}
StepFunction StepFunction::above_cutoff(const Rational& c) const {
  return StepFunction(transform(root_, [&](const Rational& v) {
    Rational a = rabs(v);
    return a > c ? a : Rational(0);
  }));
}

bool StepFunction::operator==(const StepFunction& o) const {
  std::set<std::pair<const Node*, const Node*>> seen;
  return same(root_, o.root_, seen);
}

std::string StepFunction::to_text() const {
  std::size_t lvl = level();
  std::string out = std::to_string(lvl) + ";";
  auto c = dense(lvl);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += ',';
    out += to_string(c[i]);
  }
  return out;
}

StepFunction StepFunction::parse(const std::string& text) {
  auto trim = [](std::string s) {
    auto b = s.find_first_not_of(" \t\r\n");
    auto e = s.find_last_not_of(" \t\r\n");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  auto semi = text.find(';');
  if (semi == std::string::npos) throw ParseError(0, "step function needs 'level;c0,c1,...'");
  std::string lv = trim(text.substr(0, semi));
  if (lv.empty() || lv.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError(0, "bad level '" + lv + "'");
  std::size_t level = std::stoul(lv);
  if (level > kMaxDenseLevel) throw ParseError(0, "level " + lv + " too large");
  std::vector<Rational> c;
  std::string rest = text.substr(semi + 1);
  std::size_t pos = 0;
  while (true) {
    auto comma = rest.find(',', pos);
    c.push_back(parse_rational(trim(rest.substr(pos, comma - pos))));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (c.size() != (std::size_t{1} << level))
    throw ParseError(0, "level " + lv + " needs " + std::to_string(std::size_t{1} << level) +
                            " coefficients, got " + std::to_string(c.size()));
  return from_dense(level, c);
}

DyadicSet DyadicSet::from_membership(std::size_t level, const std::vector<bool>& in) {
  std::vector<Rational> c(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) c[i] = in[i] ? 1 : 0;
  return DyadicSet(StepFunction::from_dense(level, c));
}

std::vector<bool> DyadicSet::membership(std::size_t level) const {
  auto c = chi_.dense(level);
  std::vector<bool> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i] != 0;
  return out;
}

// ---- RootRational ----

namespace {

std::optional<Integer> integer_root(const Integer& n, unsigned k) {
  if (n < 2 || k == 1) return n;
  Integer lo = 1, hi = Integer(1) << (mp::msb(n) / k + 1);
  while (lo < hi) {
    Integer mid = (lo + hi + 1) / 2;
    if (mp::pow(mid, k) <= n)
      lo = mid;
    else
      hi = mid - 1;
  }
  if (mp::pow(lo, k) == n) return lo;
  return std::nullopt;
}

}  // namespace

std::optional<Rational> exact_root(const Rational& r, unsigned k) {
  if (k == 0) throw std::invalid_argument("zeroth root");
  if (r < 0) throw std::domain_error("root of a negative rational");
  auto n = integer_root(mp::numerator(r), k);
  if (!n) return std::nullopt;
  auto d = integer_root(mp::denominator(r), k);
  if (!d) return std::nullopt;
  return Rational(*n, *d);
}

RootRational::RootRational(const Rational& radicand, unsigned root)
    : radicand_(radicand), root_(root) {
  check();
  reduce();
}

void RootRational::check() const {
  if (root_ == 0) throw std::invalid_argument("root must be positive");
  if (radicand_ < 0) throw std::domain_error("negative radicand");
}

void RootRational::reduce() {
  bool changed = true;
  while (changed && root_ > 1) {
    changed = false;
    for (unsigned d = 2; d <= root_; ++d) {
      if (root_ % d) continue;
      if (auto r = exact_root(radicand_, d)) {
        radicand_ = *r;
        root_ /= d;
        changed = true;
        break;
      }
    }
  }
}

std::optional<Rational> RootRational::as_rational() const {
  if (root_ == 1) return radicand_;
  return std::nullopt;
}

long double RootRational::approx() const {
  long double r = radicand_.convert_to<long double>();
  return root_ == 1 ? r : std::pow(r, 1.0L / root_);
}

RootRational RootRational::operator*(const RootRational& o) const {
  unsigned l = std::lcm(root_, o.root_);
  return RootRational(rational_pow(radicand_, l / root_) * rational_pow(o.radicand_, l / o.root_), l);
}

int RootRational::compare(const RootRational& o) const {
  unsigned l = std::lcm(root_, o.root_);
  Rational a = rational_pow(radicand_, l / root_);
  Rational b = rational_pow(o.radicand_, l / o.root_);
  return a < b ? -1 : (b < a ? 1 : 0);
}

std::string RootRational::to_string() const {
  if (root_ == 1) return ordertop::to_string(radicand_);
  return "(" + ordertop::to_string(radicand_) + ")^(1/" + std::to_string(root_) + ")";
}

// ---- PowerCoefficientFunction ----

namespace {

// Dyadic intervals are nested or disjoint; returns the smaller one when nested.
std::optional<std::pair<std::size_t, std::uint64_t>> intersect(std::size_t l1, std::uint64_t i1,
                                                              std::size_t l2, std::uint64_t i2) {
  if (l1 > l2) return intersect(l2, i2, l1, i1);
  std::size_t shift = l2 - l1;
  std::uint64_t ancestor = shift >= 64 ? 0 : i2 >> shift;
  if (ancestor != i1) return std::nullopt;
  return std::make_pair(l2, i2);
}

}  // namespace

PowerCoefficientFunction::PowerCoefficientFunction(unsigned power) : power_(power) {
  if (power == 0) throw std::invalid_argument("power must be positive");
}

void PowerCoefficientFunction::add_piece(std::size_t level, std::uint64_t index,
                                         const Rational& powered) {
  if (powered < 0) throw std::domain_error("stored power must be nonnegative");
  if (level > 63 || (index >> level) != 0) throw std::out_of_range("bad dyadic interval");
  for (const auto& p : pieces_)
    if (intersect(p.level, p.index, level, index))
      throw std::invalid_argument("pieces must be disjoint");
  pieces_.push_back({level, index, powered});
}

PowerCoefficientFunction PowerCoefficientFunction::operator*(
    const PowerCoefficientFunction& o) const {
  unsigned l = std::lcm(power_, o.power_);
  PowerCoefficientFunction out(l);
  for (const auto& a : pieces_)
    for (const auto& b : o.pieces_)
      if (auto cell = intersect(a.level, a.index, b.level, b.index))
        out.pieces_.push_back({cell->first, cell->second,
                               rational_pow(a.powered, l / power_) * rational_pow(b.powered, l / o.power_)});
  return out;
}

RootRational PowerCoefficientFunction::norm_power(unsigned r) const {
  Rational sum = 0;
  std::optional<RootRational> irrational;
  std::size_t nonzero = 0;
  for (const auto& p : pieces_) {
    if (p.powered == 0) continue;
    ++nonzero;
    RootRational term(rational_pow(p.powered, r) * rational_pow(dyadic(p.level), power_), power_);
    if (term.is_rational())
      sum += term.radicand();
    else
      irrational = term;
  }
  if (!irrational) return RootRational(sum);
  if (nonzero == 1) return *irrational;
  throw std::domain_error("sum of irrational terms has no exact representation");
}

// ---- seminorms ----

Rational integral(const StepFunction& f) { return f.integral(); }

Rational pairing(const StepFunction& f, const StepFunction& g) { return (f * g).integral(); }

Rational p_power_norm(const StepFunction& f, unsigned p) {
  if (p == 0) throw std::invalid_argument("p must be positive");
  return f.abs().pow(p).integral();
}

Rational rho_E(const StepFunction& f, const DyadicSet& e) {
  return f.abs().min(e.indicator()).integral();
}

Rational gamma_K(const StepFunction& f, const std::vector<StepFunction>& generators) {
  if (generators.empty()) throw std::invalid_argument("gamma_K needs at least one generator");
  Rational best = 0;
  for (const auto& g : generators) best = std::max(best, rabs(pairing(f, g)));
  return best;
}

std::vector<UiRow> uniform_integrability_profile(const std::vector<StepFunction>& family,
                                                 const std::vector<Rational>& cutoffs) {
  std::vector<UiRow> rows;
  for (std::size_t i = 0; i < cutoffs.size(); ++i) {
    if (cutoffs[i] <= 0) throw std::invalid_argument("cutoffs must be positive");
    if (i && cutoffs[i] <= cutoffs[i - 1])
      throw std::invalid_argument("cutoffs must be strictly increasing");
    Rational tail = 0;
    for (const auto& f : family) tail = std::max(tail, f.above_cutoff(cutoffs[i]).integral());
    rows.push_back({cutoffs[i], tail});
  }
  return rows;
}

// ---- closed family of the atomless case ----


DyadicSet DyadicSet::from_indicator(StepFunction chi) {
  bool binary = fold<bool>(
      chi.root(), [](const Rational& v) { return v == 0 || v == 1; },
      [](bool a, bool b) { return a && b; });
  if (!binary) throw std::invalid_argument("indicator must take only the values 0 and 1");
  return DyadicSet(std::move(chi));
}

DyadicSet t5_a(std::size_t n) {
  if (n == 0) throw ParameterOutOfRange("A_n needs n >= 1");
  NodePtr t = make_split(make_leaf(0), make_leaf(1));
  for (std::size_t i = 1; i < n; ++i) t = make_split(t, t);
  return DyadicSet::from_indicator(StepFunction(t));
}

DyadicSet t5_b(std::size_t n) {
  if (n == 0) throw ParameterOutOfRange("B_n needs n >= 1");
  return DyadicSet::interval(n, 0);
}

T5Tree t5_tree(std::size_t levels) {
  if (levels == 0) throw ParameterOutOfRange("t5 tree needs at least one level");
  T5Tree t;
  for (std::size_t n = 1; n <= levels; ++n) {
    t.a.push_back(t5_a(n));
    t.b.push_back(t5_b(n));
  }
  return t;
}

StepFunction t5_family_element(std::uint64_t m, std::size_t n) {
  if (m == 0) throw ParameterOutOfRange("family element needs m >= 1");
  return t5_a(n).indicator().scaled(Rational(1, m)) + t5_b(n).indicator().scaled(m);
}

Certificate t5_symmetric_difference_certificate(std::size_t max_n) {
  if (max_n < 2) throw ParameterOutOfRange("symmetric difference check needs max_n >= 2");
  Certificate c;
  c.claim = "mu(A_n sym A_n') = 1/2 for all distinct n, n' <= max_n";
  c.parameters = {{"max_n", max_n}};
  auto tree = t5_tree(max_n);
  const Rational half(1, 2);
  bool ok = true;
  std::size_t pairs = 0;
  nlohmann::json failures = nlohmann::json::array();
  nlohmann::json measures = nlohmann::json::object();
  for (std::size_t n = 1; n <= max_n; ++n) {
    if (tree.a[n - 1].measure() != half || tree.b[n - 1].measure() != dyadic(n)) {
      ok = false;
      failures.push_back({{"n", n}, {"measure_A", to_string(tree.a[n - 1].measure())}});
    }
    if (!(tree.a[n - 1] ^ tree.a[n - 1]).empty()) ok = false;
    for (std::size_t m = n + 1; m <= max_n; ++m) {
      Rational mu = (tree.a[n - 1] ^ tree.a[m - 1]).measure();
      ++pairs;
      if (mu != half) {
        ok = false;
        failures.push_back({{"n", n}, {"n_prime", m}, {"measure", to_string(mu)}});
      }
      if (n <= 2 && m <= 5) measures[std::to_string(n) + "," + std::to_string(m)] = to_string(mu);
    }
  }
  c.pass = ok;
  c.evidence = {{"pairs_checked", pairs}, {"sample_measures", measures}, {"failures", failures}};
  return c;
}

namespace {

Rational solid_gauge(const StepFunction& f, const std::vector<StepFunction>& generators) {
  Rational best = 0;
  for (const auto& g : generators) best = std::max(best, (f * g).abs().integral());
  return best;
}

Integer ceil_rational(const Rational& r) {
  Integer n = mp::numerator(r), d = mp::denominator(r);
  Integer q = n / d;
  if (q * d < n) ++q;
  return q;
}

}  // namespace

EscapeWitness t5_escape_witness(const std::vector<StepFunction>& generators, std::size_t max_depth,
                                EscapeGauge gauge) {
  if (generators.empty()) throw std::invalid_argument("escape witness needs generators");
  auto gauge_of = [&](const StepFunction& f) {
    return gauge == EscapeGauge::Solid ? solid_gauge(f, generators) : gamma_K(f, generators);
  };
  EscapeWitness w;
  Integer m = ceil_rational(2 * gauge_of(StepFunction(1)));
  if (m < 1) m = 1;
  if (m > Integer(std::numeric_limits<std::uint64_t>::max()))
    throw NoEscapeWithinDepth("m does not fit in 64 bits");
  w.m = static_cast<std::uint64_t>(m);
  const Rational threshold(1, 2 * Integer(w.m));
  for (std::size_t n = 1; n <= max_depth; ++n) {
    if (gauge_of(t5_b(n).indicator()) <= threshold) {
      w.n = n;
      break;
    }
  }
  if (w.n == 0)
    throw NoEscapeWithinDepth("no B_n with n <= " + std::to_string(max_depth) +
                              " has small enough gauge");
  w.f = t5_family_element(w.m, w.n);
  w.gamma = gamma_K(w.f, generators);
  return w;
}

// ---- separations on disjoint carriers [2^-n, 2^-n+1) ----

namespace {

Rational carrier_measure(std::size_t n) { return dyadic(n); }

}  // namespace

Certificate sigma_pq_separation(unsigned p, unsigned q, const Rational& alpha, std::size_t n_max,
                                const Rational& epsilon, std::size_t search_max) {
  if (p < 1 || q <= p) throw ParameterOutOfRange("need 1 <= p < q");
  if (!(alpha > 1 && alpha < Rational(q, p)))
    throw ParameterOutOfRange("alpha = " + to_string(alpha) + " outside (1, q/p)");
  if (epsilon <= 0) throw ParameterOutOfRange("epsilon must be positive");
  if (n_max == 0 || n_max > 62 || search_max == 0 || search_max > 62 * 62)
    throw ParameterOutOfRange("depth out of range");
  const Integer a = mp::numerator(alpha);
  const unsigned d = static_cast<unsigned>(mp::denominator(alpha));
  const unsigned Q = q * d;  // e_n^Q = n^a
  const unsigned A = static_cast<unsigned>(a);

  Certificate c;
  c.claim = "{e_n} stays outside a sigma_q neighbourhood of 0 but meets every sigma_p one";
  c.parameters = {{"p", p},
                  {"q", q},
                  {"alpha", to_string(alpha)},
                  {"n_max", n_max},
                  {"epsilon", to_string(epsilon)},
                  {"search_max", search_max}};

  PowerCoefficientFunction g(Q);
  for (std::size_t n = 1; n <= n_max; ++n)
    g.add_piece(n, 1, 1 / (rational_pow(Rational(n), A) * rational_pow(carrier_measure(n), d)));

  bool q_side = true;
  nlohmann::json q_values = nlohmann::json::array();
  for (std::size_t n = 1; n <= n_max; ++n) {
    PowerCoefficientFunction e(Q);
    e.add_piece(n, 1, rational_pow(Rational(n), A));
    RootRational v = (e * g).norm_power(q);
    q_values.push_back(v.to_string());
    if (!(v == RootRational(Rational(1)))) q_side = false;
  }

  // h with |h|^p = lambda_n / mu(A_n) on A_n, lambda_n = 1/(n(n+1)).
  std::optional<std::size_t> hit;
  RootRational hit_value;
  const Rational eps_p = rational_pow(epsilon, p);
  std::size_t selected = 0;
  for (std::size_t n = 1; n <= search_max && !hit; ++n) {
    if (n > 62) break;
    Rational lambda(1, Integer(n) * (n + 1));
    if (Rational(n) * lambda > 1) continue;  // the index selection n_k lambda_{n_k} <= 1
    ++selected;
    PowerCoefficientFunction h(p), e(Q);
    h.add_piece(n, 1, lambda / carrier_measure(n));
    e.add_piece(n, 1, rational_pow(Rational(n), A));
    RootRational v = (e * h).norm_power(p);
    RootRational closed_form = RootRational(rational_pow(Rational(n), A * p), Q) * RootRational(lambda);
    if (!(v == closed_form)) throw std::logic_error("norm of e_n h disagrees with n^(alpha p/q) lambda_n");
    if (v < RootRational(eps_p)) {
      hit = n;
      hit_value = v;
    }
  }
  c.pass = q_side && hit.has_value();
  c.evidence = {
      {"e_n_g_q_norm_power", q_values},
      {"all_equal_one", q_side},
      {"h_lambda", "1/(n(n+1))"},
      {"indices_examined", selected},
      {"first_index", hit ? nlohmann::json(*hit) : nlohmann::json(nullptr)},
      {"e_n_h_p_norm_power", hit ? nlohmann::json(hit_value.to_string()) : nlohmann::json(nullptr)},
      {"e_n_h_p_norm_power_approx",
       hit ? nlohmann::json(static_cast<double>(hit_value.approx())) : nlohmann::json(nullptr)},
      {"epsilon_p", to_string(eps_p)},
  };
  return c;
}

RootRational tau_mu_pairing(std::size_t n) {
  if (n == 0 || n > 62) throw ParameterOutOfRange("n out of range");
  PowerCoefficientFunction f(2), h(2);
  f.add_piece(n, 1, rational_pow(Rational(n * n), 2));
  // h = 1/(mu(A_k) k^(3/2)) on A_k; squared: 1/(mu^2 k^3)
  for (std::size_t k = 1; k <= n; ++k)
    h.add_piece(k, 1, 1 / (rational_pow(carrier_measure(k), 2) * rational_pow(Rational(k), 3)));
  return (f * h).norm_power(1);
}

Certificate tau_mu_sigma1_separation(std::size_t n_max) {
  if (n_max < 2 || n_max > 62) throw ParameterOutOfRange("n_max must be in [2, 62]");
  Certificate c;
  c.claim = "n^2 chi_{A_n} tends to 0 in measure while its pairing with h grows like n^(1/2)";
  c.parameters = {{"n_max", n_max}, {"alpha", "3/2"}};
  bool ok = true;
  nlohmann::json rho = nlohmann::json::array(), pair = nlohmann::json::array();
  std::optional<Rational> prev_rho;
  std::optional<RootRational> prev_pair;
  const DyadicSet whole = DyadicSet::whole();
  for (std::size_t n = 1; n <= n_max; ++n) {
    StepFunction f = StepFunction::interval(n, 1, Rational(n * n));
    Rational r = rho_E(f, whole);
    if (r != carrier_measure(n)) ok = false;
    if (prev_rho && !(r < *prev_rho)) ok = false;
    RootRational pv = tau_mu_pairing(n);
    if (!(pv == RootRational(Rational(n), 2))) ok = false;
    if (prev_pair && !(*prev_pair < pv)) ok = false;
    rho.push_back(to_string(r));
    pair.push_back(pv.to_string());
    prev_rho = r;
    prev_pair = pv;
  }
  c.pass = ok;
  c.evidence = {{"rho_whole", rho}, {"pairing", pair}};
  return c;
}

// ---- Hoelder chain ----

namespace {

// Visits the common refinement of f and g in left-to-right order.
template <class F>
void for_each_common_piece(const NodePtr& f, const NodePtr& g, std::size_t depth, F& visit) {
  if (f->leaf && g->leaf) {
    visit(depth, f->value, g->value);
    return;
  }
  for_each_common_piece(left_of(f), left_of(g), depth + 1, visit);
  for_each_common_piece(right_of(f), right_of(g), depth + 1, visit);
}

}  // namespace

HolderSides holder_e4_sides(const StepFunction& f, const StepFunction& g, unsigned p, unsigned q,
                            long double tol) {
  if (p < 1 || q <= p) throw ParameterOutOfRange("need 1 <= p < q");
  if (!f.is_nonnegative() || !g.is_nonnegative())
    throw std::invalid_argument("Hoelder chain needs nonnegative f and g");
  long double left = 0, fq_gp = 0, gp = 0;
  auto visit = [&](std::size_t depth, const Rational& fv, const Rational& gv) {
    long double mu = std::ldexp(1.0L, -static_cast<int>(depth));
    long double x = fv.convert_to<long double>(), y = gv.convert_to<long double>();
    left += mu * std::pow(x * y, static_cast<long double>(p));
    fq_gp += mu * std::pow(x, static_cast<long double>(q)) * std::pow(y, static_cast<long double>(p));
    gp += mu * std::pow(y, static_cast<long double>(p));
  };
  for_each_common_piece(f.root(), g.root(), 0, visit);
  long double sup = f.sup_abs().convert_to<long double>();
  long double qd = static_cast<long double>(q);
  HolderSides s;
  s.left = left;
  s.right = std::pow(fq_gp, 1.0L / qd) * std::pow(sup, static_cast<long double>(p - 1)) *
            std::pow(gp, (qd - 1) / qd);
  s.holds = s.left <= s.right + tol;
  return s;
}

bool holder_e4_check(const StepFunction& f, const StepFunction& g, unsigned p, unsigned q,
                     long double tol) {
  return holder_e4_sides(f, g, p, q, tol).holds;
}

// ---- subsequence converging almost everywhere ----

AeSubsequence measure_ae_subsequence(const std::vector<StepFunction>& seq,
                                     const StepFunction& f_limit) {
  const DyadicSet whole = DyadicSet::whole();
  std::vector<Rational> rho;
  rho.reserve(seq.size());
  for (const auto& s : seq) rho.push_back(rho_E(s - f_limit, whole));
  AeSubsequence out;
  std::size_t next = 0, k = 1;
  while (next < seq.size()) {
    const Rational threshold = dyadic(k);
    std::size_t j = next;
    while (j < seq.size() && rho[j] > threshold) ++j;
    if (j == seq.size())
      throw NotConvergentInMeasure("no index from " + std::to_string(next) +
                                   " on has rho <= 2^-" + std::to_string(k) +
                                   " (smallest remaining rho " +
                                   to_string(*std::min_element(rho.begin() + next, rho.end())) +
                                   ")");
    out.indices.push_back(j);
    out.rho.push_back(rho[j]);
    next = j + 1;
    ++k;
  }
  // sum over k > K of 2^-ceil(k/2)
  const std::size_t k0 = out.indices.size() + 1;
  const std::size_t j0 = (k0 + 1) / 2;
  out.exceptional_measure_bound =
      k0 % 2 ? Rational(4) * dyadic(j0) : Rational(3) * dyadic(j0);
  return out;
}

}  // namespace ordertop
