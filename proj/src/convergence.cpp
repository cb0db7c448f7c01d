#include "ordertop/convergence.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <string>

#include "ordertop/errors.hpp"

namespace ordertop {

LassoSequence::LassoSequence(std::vector<Element> prefix, std::vector<Element> cycle)
    : prefix_(std::move(prefix)), cycle_(std::move(cycle)) {
  if (cycle_.empty()) throw std::invalid_argument("lasso cycle must be nonempty");
}

Element LassoSequence::at(std::size_t k) const {
  if (k < prefix_.size()) return prefix_[k];
  return cycle_[(k - prefix_.size()) % cycle_.size()];
}

void LassoSequence::check_against(const FinitePoset& p) const {
  for (Element e : prefix_)
    if (e >= p.size()) throw std::out_of_range("lasso prefix value out of range");
  for (Element e : cycle_)
    if (e >= p.size()) throw std::out_of_range("lasso cycle value out of range");
}

Subset LassoSequence::tail_values(std::size_t universe) const {
  Subset s(universe);
  for (Element e : cycle_) s.set(e);
  return s;
}

std::optional<Element> LassoSequence::eventual_constant() const {
  for (Element e : cycle_)
    if (e != cycle_.front()) return std::nullopt;
  return cycle_.front();
}

LassoSequence LassoSequence::drop(std::size_t k) const {
  if (k <= prefix_.size())
    return LassoSequence({prefix_.begin() + static_cast<std::ptrdiff_t>(k), prefix_.end()}, cycle_);
  std::size_t shift = (k - prefix_.size()) % cycle_.size();
  std::vector<Element> rotated(cycle_.begin() + static_cast<std::ptrdiff_t>(shift), cycle_.end());
  rotated.insert(rotated.end(), cycle_.begin(), cycle_.begin() + static_cast<std::ptrdiff_t>(shift));
  return LassoSequence({}, std::move(rotated));
}

Subset residual(const FinitePoset& p, const LassoSequence& s, std::size_t k) {
  s.check_against(p);
  Subset r = s.tail_values(p.size());
  for (std::size_t j = k; j < s.prefix().size(); ++j) r.set(s.prefix()[j]);
  return r;
}

std::pair<Element, Element> liminf_limsup(const FinitePoset& p, const LassoSequence& s) {
  // Residuals are constant from stable_from() on, so finitely many matter.
  Subset infs = p.empty_subset();
  Subset sups = p.empty_subset();
  for (std::size_t k = 0; k <= s.stable_from(); ++k) {
    Subset e = residual(p, s, k);
    auto lo = inf(p, e);
    auto hi = sup(p, e);
    if (!lo) throw NotALatticeError("residual " + cut_label(p, e) + " has no infimum");
    if (!hi) throw NotALatticeError("residual " + cut_label(p, e) + " has no supremum");
    infs.set(*lo);
    sups.set(*hi);
  }
  auto liminf = sup(p, infs);
  auto limsup = inf(p, sups);
  if (!liminf) throw NotALatticeError("residual infima " + cut_label(p, infs) + " have no supremum");
  if (!limsup) throw NotALatticeError("residual suprema " + cut_label(p, sups) + " have no infimum");
  return {*liminf, *limsup};
}

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::O1: return "o1";
    case Mode::O2: return "o2";
    case Mode::O3: return "o3";
    case Mode::ODM: return "odm";
  }
  return "?";
}

std::optional<Mode> parse_mode(std::string_view s) {
  std::string t(s);
  for (auto& ch : t) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (t == "o1") return Mode::O1;
  if (t == "o2") return Mode::O2;
  if (t == "o3") return Mode::O3;
  if (t == "odm") return Mode::ODM;
  return std::nullopt;
}

namespace {

ConvergenceVerdict make_verdict(Mode m, Element x) {
  ConvergenceVerdict v;
  v.mode = m;
  v.target = x;
  return v;
}

// True when some residual lies entirely inside `region`.
bool eventually_within(const FinitePoset& p, const LassoSequence& s, const Subset& region) {
  for (std::size_t k = 0; k <= s.stable_from(); ++k)
    if (residual(p, s, k).is_subset_of(region)) return true;
  return false;
}

// Lectically least subset of `pool` (|pool| <= 62) accepted by `pred`.
template <class Pred>
std::optional<Subset> least_subset(std::size_t universe, const Subset& pool, Pred&& pred) {
  auto members = pool.members();
  const std::size_t k = members.size();
  const std::uint64_t total = std::uint64_t{1} << k;
  for (std::uint64_t r = 0; r < total; ++r) {
    // Bit (k-1-i) of r selects members[i]; increasing r is lectic order.
    Subset cand(universe);
    for (std::size_t i = 0; i < k; ++i)
      if ((r >> (k - 1 - i)) & 1U) cand.set(members[i]);
    if (pred(cand)) return cand;
  }
  return std::nullopt;
}

}  // namespace

ConvergenceVerdict o1_converges(const FinitePoset& p, const LassoSequence& s, Element x) {
  s.check_against(p);
  ConvergenceVerdict v = make_verdict(Mode::O1, x);
  // A monotone lasso has a constant cycle: y_k <= y_{k+c} = y_k forces
  // equality by antisymmetry. Its supremum (infimum) is that value. So the
  // admissible sandwiches are exactly constant tails c with c eventually
  // below (above) the sequence.
  std::optional<Element> lower, upper;
  for (Element c = 0; c < p.size(); ++c) {
    if (!eventually_within(p, s, p.up_set(c))) continue;
    LassoSequence y({}, {c});
    if (sup(p, residual(p, y, 0)) == x) lower = c;
  }
  for (Element c = 0; c < p.size(); ++c) {
    if (!eventually_within(p, s, p.down_set(c))) continue;
    LassoSequence z({}, {c});
    if (inf(p, residual(p, z, 0)) == x) upper = c;
  }
  if (lower && upper) {
    v.converges = true;
    v.limit = x;
    v.witness = O1Witness{LassoSequence({}, {*lower}), LassoSequence({}, {*upper})};
  }
  return v;
}

ConvergenceVerdict o2_converges(const FinitePoset& p, const LassoSequence& s, Element x,
                                const O2Options& opts) {
  s.check_against(p);
  const std::size_t n = p.size();
  O2Search mode = opts.search;
  if (mode == O2Search::Auto)
    mode = n <= opts.exhaustive_bound ? O2Search::Exhaustive : O2Search::Cones;
  if (mode == O2Search::Exhaustive && (n > opts.exhaustive_bound || n > 62))
    throw SizeBoundExceeded("poset has " + std::to_string(n) +
                            " elements, above the exhaustive O2 bound of " +
                            std::to_string(opts.exhaustive_bound));

  Subset pool_m = mode == O2Search::Exhaustive ? p.full_subset() : p.down_set(x);
  Subset pool_n = mode == O2Search::Exhaustive ? p.full_subset() : p.up_set(x);
  if (pool_m.count() > 62 || pool_n.count() > 62)
    throw SizeBoundExceeded("O2 cone above 62 elements");

  // For (m, n) in M x N, "eventually in [m, n]" splits into "eventually >= m"
  // and "eventually <= n" because residuals are nested.
  Subset eventually_above = p.empty_subset();
  Subset eventually_below = p.empty_subset();
  for (Element c = 0; c < n; ++c) {
    if (eventually_within(p, s, p.up_set(c))) eventually_above.set(c);
    if (eventually_within(p, s, p.down_set(c))) eventually_below.set(c);
  }

  ConvergenceVerdict v = make_verdict(Mode::O2, x);
  auto m = least_subset(n, pool_m, [&](const Subset& cand) {
    return cand.is_subset_of(eventually_above) && is_directed(p, cand) && sup(p, cand) == x;
  });
  if (!m) return v;
  auto f = least_subset(n, pool_n, [&](const Subset& cand) {
    return cand.is_subset_of(eventually_below) && is_filtered(p, cand) && inf(p, cand) == x;
  });
  if (!f) return v;
  v.converges = true;
  v.limit = x;
  v.witness = O2Witness{*m, *f};
  return v;
}

ConvergenceVerdict o3_converges(const FinitePoset& p, const LassoSequence& s, Element x) {
  s.check_against(p);
  ConvergenceVerdict v = make_verdict(Mode::O3, x);
  O3Witness w;
  w.lower_union = p.empty_subset();
  w.upper_union = p.empty_subset();
  Subset cap_closure = p.full_subset();       // cap E^{+-}
  Subset cap_dual_closure = p.full_subset();  // cap E^{-+}
  for (std::size_t k = 0; k <= s.stable_from(); ++k) {
    Subset e = residual(p, s, k);
    Subset lo = lower_bounds(p, e);
    Subset hi = upper_bounds(p, e);
    w.lower_union |= lo;
    w.upper_union |= hi;
    cap_closure &= lower_bounds(p, hi);
    cap_dual_closure &= upper_bounds(p, lo);
  }
  w.sup_lower = sup(p, w.lower_union);
  w.inf_upper = inf(p, w.upper_union);
  w.criterion_bounds = w.sup_lower == x && w.inf_upper == x;
  w.criterion_closures = cap_closure == p.down_set(x) && cap_dual_closure == p.up_set(x);
  v.converges = w.criterion_bounds;
  if (v.converges) v.limit = x;
  v.witness = w;
  return v;
}

ConvergenceVerdict odm_converges(const Completion& c, const LassoSequence& s, Element x) {
  s.check_against(c.base);
  auto map = [&](const std::vector<Element>& xs) {
    std::vector<Element> out;
    out.reserve(xs.size());
    for (Element e : xs) out.push_back(c.embedding[e]);
    return out;
  };
  LassoSequence image(map(s.prefix()), map(s.cycle()));
  auto [lo, hi] = liminf_limsup(c.lattice, image);
  ConvergenceVerdict v = make_verdict(Mode::ODM, x);
  v.converges = lo == c.embedding[x] && hi == c.embedding[x];
  if (v.converges) v.limit = x;
  v.witness = ODMWitness{lo, hi, c.embedding[x]};
  return v;
}

ConvergenceVerdict odm_converges(const FinitePoset& p, const LassoSequence& s, Element x) {
  return odm_converges(dm_complete(p), s, x);
}

ConvergenceVerdict converges(const FinitePoset& p, const LassoSequence& s, Element x, Mode m) {
  switch (m) {
    case Mode::O1: return o1_converges(p, s, x);
    case Mode::O2: return o2_converges(p, s, x);
    case Mode::O3: return o3_converges(p, s, x);
    case Mode::ODM: return odm_converges(p, s, x);
  }
  throw std::invalid_argument("unknown mode");
}

}  // namespace ordertop
