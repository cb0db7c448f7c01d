#include "ordertop/topology.hpp"

#include <algorithm>
#include <stdexcept>

#include "ordertop/errors.hpp"

namespace ordertop {

ClosureEngine::ClosureEngine(const FinitePoset& p, std::size_t max_cycle)
    : p_(p), max_cycle_(max_cycle) {
  if (max_cycle_ == 0) throw std::invalid_argument("max_cycle must be positive");
}

const Completion& ClosureEngine::completion() {
  if (!completion_) completion_ = dm_complete(p_);
  return *completion_;
}

bool ClosureEngine::converges_cached(const std::vector<Element>& cycle, Element x, Mode m) {
  auto key = std::make_tuple(static_cast<int>(m), cycle, x);
  auto it = verdicts_.find(key);
  if (it != verdicts_.end()) return it->second;
  LassoSequence s({}, cycle);
  bool v = m == Mode::ODM ? odm_converges(completion(), s, x).converges
                          : converges(p_, s, x, m).converges;
  verdicts_.emplace(std::move(key), v);
  return v;
}

std::optional<Element> ClosureEngine::lattice_limit(const std::vector<Element>& cycle) {
  auto it = lattice_limits_.find(cycle);
  if (it != lattice_limits_.end()) return it->second;
  auto [lo, hi] = liminf_limsup(completion().lattice, LassoSequence({}, cycle));
  std::optional<Element> lim;
  if (lo == hi) lim = lo;
  lattice_limits_.emplace(cycle, lim);
  return lim;
}

namespace {

// Calls f on every sequence of length 1..max_len over `members`.
template <class F>
void for_each_cycle(const std::vector<Element>& members, std::size_t max_len, F&& f) {
  if (members.empty()) return;
  std::vector<std::size_t> digits;
  std::vector<Element> cycle;
  for (std::size_t len = 1; len <= max_len; ++len) {
    digits.assign(len, 0);
    cycle.assign(len, members[0]);
    while (true) {
      f(cycle);
      std::size_t pos = len;
      while (pos > 0 && ++digits[pos - 1] == members.size()) {
        digits[pos - 1] = 0;
        cycle[pos - 1] = members[0];
        --pos;
      }
      if (pos == 0) break;
      cycle[pos - 1] = members[digits[pos - 1]];
    }
  }
}

}  // namespace

Subset ClosureEngine::closure(const Subset& x, Mode m) {
  Subset cur = x;
  bool changed = true;
  while (changed) {
    changed = false;
    Subset added = p_.empty_subset();
    Subset outside = ~cur;
    for_each_cycle(cur.members(), max_cycle_, [&](const std::vector<Element>& cycle) {
      outside.for_each([&](Element y) {
        if (!added.test(y) && converges_cached(cycle, y, m)) added.set(y);
      });
    });
    if (added.any()) {
      cur |= added;
      changed = true;
    }
  }
  return cur;
}

bool ClosureEngine::is_closed_in_completion(const Subset& x) {
  const Completion& c = completion();
  Subset image = c.lattice.empty_subset();
  x.for_each([&](Element e) { image.set(c.embedding[e]); });
  Subset cur = image;
  bool changed = true;
  while (changed) {
    changed = false;
    Subset added = c.lattice.empty_subset();
    for_each_cycle(cur.members(), max_cycle_, [&](const std::vector<Element>& cycle) {
      if (auto lim = lattice_limit(cycle); lim && !cur.test(*lim)) added.set(*lim);
    });
    if (added.any()) {
      cur |= added;
      changed = true;
    }
  }
  Subset embedded = c.lattice.empty_subset();
  for (Element e = 0; e < p_.size(); ++e) embedded.set(c.embedding[e]);
  return (cur & embedded) == image;
}

Subset oi_closure(const ClosureQuery& q) {
  if (!q.poset) throw std::invalid_argument("closure query without poset");
  ClosureEngine engine(*q.poset);
  Subset c = engine.closure(q.subset, q.mode);
  if (c != q.subset)
    throw std::logic_error("closure of " + cut_label(*q.poset, q.subset) + " grew to " +
                           cut_label(*q.poset, c) + " on a finite poset");
  return c;
}

TopologyReport topology_inclusion_report(const FinitePoset& p, std::size_t bound) {
  if (p.size() > bound || p.size() > 62)
    throw SizeBoundExceeded("topology report limited to " + std::to_string(bound) + " elements");
  ClosureEngine engine(p);
  TopologyReport r;
  const std::uint64_t total = std::uint64_t{1} << p.size();
  r.subsets = total;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    Subset x = Subset::from_mask(p.size(), mask);
    bool c1 = engine.is_closed(x, Mode::O1);
    bool c2 = engine.is_closed(x, Mode::O2);
    bool c3 = engine.is_closed(x, Mode::O3);
    bool cd = engine.is_closed(x, Mode::ODM);
    bool cc = engine.is_closed_in_completion(x);
    r.closed_o1 += c1;
    r.closed_o2 += c2;
    r.closed_o3 += c3;
    r.closed_odm += cd;
    r.closed_completion += cc;
    bool bad = false;
    if (c3 && !c2) r.o3_within_o2 = false, bad = true;
    if (c2 && !c1) r.o2_within_o1 = false, bad = true;
    if (cc && !c3) r.completion_within_o3 = false, bad = true;
    if (!(c1 && c2 && c3 && cd && cc)) r.all_discrete = false;
    if (bad && !r.first_violation) r.first_violation = x;
  }
  return r;
}

nlohmann::json to_json(const FinitePoset& p, const TopologyReport& r) {
  return {
      {"elements", p.size()},
      {"subsets", r.subsets},
      {"closed",
       {{"o1", r.closed_o1},
        {"o2", r.closed_o2},
        {"o3", r.closed_o3},
        {"odm", r.closed_odm},
        {"completion", r.closed_completion}}},
      {"inclusions",
       {{"o3_closed_within_o2_closed", r.o3_within_o2},
        {"o2_closed_within_o1_closed", r.o2_within_o1},
        {"completion_closed_within_o3_closed", r.completion_within_o3}}},
      {"all_discrete", r.all_discrete},
      {"violation", r.first_violation ? nlohmann::json(p.labels_of(*r.first_violation))
                                      : nlohmann::json(nullptr)},
  };
}

std::vector<std::size_t> isotone_cofinal_restriction(const std::vector<std::size_t>& h) {
  std::vector<std::size_t> kept;
  for (std::size_t j = 0; j < h.size(); ++j)
    if (kept.empty() || h[j] >= h[kept.back()]) kept.push_back(j);
  return kept;
}

ExtractionResult extract_convergent_subsequence(const FinitePoset& p, const LassoSequence& f,
                                                const LassoSequence& g, Element x) {
  using Kind = ExtractionError::Kind;
  f.check_against(p);
  g.check_against(p);
  Subset f_values = residual(p, f, 0);
  if (!residual(p, g, 0).is_subset_of(f_values))
    throw ExtractionError(Kind::WitnessMismatch, "g takes a value that f never takes");
  if (!o3_converges(p, g, x).converges)
    throw ExtractionError(Kind::WitnessMismatch,
                          "g does not converge to " + p.label(x) + ", nothing to extract");

  const bool f_constant_x =
      f_values == Subset::from_indices(p.size(), {x});
  if (f_constant_x) {
    ExtractionResult r{f, {}, {}, 0, "unbounded fiber", o3_converges(p, f, x)};
    return r;
  }
  auto tail = f.eventual_constant();
  if (!tail)
    throw ExtractionError(Kind::UnboundedFiber,
                          "f repeats a non-constant cycle, so some value has a cofinal preimage");
  if (*tail != x)
    throw ExtractionError(Kind::WitnessMismatch,
                          "f settles at " + p.label(*tail) + " but g converges to " + p.label(x));

  ExtractionResult r{f, {}, {}, 0, "", {}};
  r.horizon = g.prefix().size() + g.cycle().size();
  for (std::size_t alpha = 0; alpha < r.horizon; ++alpha) {
    Element v = g.at(alpha);
    std::size_t beta = 0;
    while (f.at(beta) != v) ++beta;  // terminates: v is a value of f
    r.index_map.push_back(beta);
  }
  r.kept = isotone_cofinal_restriction(r.index_map);
  std::vector<Element> prefix;
  std::size_t kept_max = 0;
  for (std::size_t j : r.kept) {
    prefix.push_back(f.at(r.index_map[j]));
    kept_max = std::max(kept_max, r.index_map[j]);
  }
  if (kept_max != *std::max_element(r.index_map.begin(), r.index_map.end()))
    throw std::logic_error("isotone restriction lost the maximum of h");
  r.subsequence = LassoSequence(std::move(prefix), f.cycle());
  r.verdict = o3_converges(p, r.subsequence, x);
  if (!r.verdict.converges)
    throw ExtractionError(Kind::WitnessMismatch, "extracted subsequence does not converge");
  r.status = "cofinal within horizon " + std::to_string(r.horizon);
  return r;
}

}  // namespace ordertop
