#include "ordertop/poset.hpp"

#include <algorithm>
#include <random>

#include "ordertop/errors.hpp"

namespace ordertop {

namespace {

std::unordered_map<std::string, Element> build_index(const std::vector<std::string>& labels) {
  std::unordered_map<std::string, Element> index;
  index.reserve(labels.size());
  for (Element i = 0; i < labels.size(); ++i) {
    if (!index.emplace(labels[i], i).second)
      throw DuplicateLabelError("duplicate label '" + labels[i] + "'");
  }
  return index;
}

// Warshall closure over bit rows; rows must already be reflexive.
void close_transitively(std::vector<Bitset>& up) {
  const std::size_t n = up.size();
  for (Element k = 0; k < n; ++k)
    for (Element i = 0; i < n; ++i)
      if (i != k && up[i].test(k)) up[i] |= up[k];
}

}  // namespace

FinitePoset::FinitePoset(std::vector<std::string> labels, std::vector<Bitset> up)
    : labels_(std::move(labels)), up_(std::move(up)) {
  index_ = build_index(labels_);
  const std::size_t n = labels_.size();
  down_.assign(n, Bitset(n));
  for (Element i = 0; i < n; ++i) up_[i].for_each([&](Element j) { down_[j].set(i); });
}

FinitePoset FinitePoset::from_relation_unchecked(std::vector<std::string> labels,
                                                 std::vector<Bitset> up) {
  if (up.size() != labels.size()) throw InvalidPosetError("relation has wrong number of rows");
  for (const auto& row : up)
    if (row.size() != labels.size()) throw InvalidPosetError("relation row has wrong width");
  return FinitePoset(std::move(labels), std::move(up));
}

FinitePoset FinitePoset::from_relation(std::vector<std::string> labels, std::vector<Bitset> up) {
  FinitePoset p = from_relation_unchecked(std::move(labels), std::move(up));
  if (auto why = p.check_axioms()) throw InvalidPosetError(*why);
  return p;
}

FinitePoset FinitePoset::from_edges(std::vector<std::string> labels,
                                    const std::vector<std::pair<Element, Element>>& edges) {
  const std::size_t n = labels.size();
  build_index(labels);  // duplicate check before any other diagnostics
  std::vector<Bitset> up(n, Bitset(n));
  for (Element i = 0; i < n; ++i) up[i].set(i);
  for (auto [a, b] : edges) {
    if (a >= n || b >= n) throw InvalidPosetError("edge endpoint out of range");
    up[a].set(b);
  }
  close_transitively(up);
  for (Element i = 0; i < n; ++i)
    for (Element j = i + 1; j < n; ++j)
      if (up[i].test(j) && up[j].test(i))
        throw CycleError("cover edges form a cycle through '" + labels[i] + "' and '" +
                         labels[j] + "'");
  return FinitePoset(std::move(labels), std::move(up));
}

FinitePoset FinitePoset::from_covers(std::vector<std::string> labels,
                                     const std::vector<std::pair<std::string, std::string>>& covers) {
  auto index = build_index(labels);
  std::vector<std::pair<Element, Element>> edges;
  edges.reserve(covers.size());
  auto lookup = [&](const std::string& l) {
    auto it = index.find(l);
    if (it == index.end()) throw UnknownLabelError("unknown label '" + l + "'");
    return it->second;
  };
  for (const auto& [lo, hi] : covers) edges.emplace_back(lookup(lo), lookup(hi));
  return from_edges(std::move(labels), edges);
}

std::optional<Element> FinitePoset::find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Element FinitePoset::index_of(std::string_view label) const {
  if (auto e = find(label)) return *e;
  throw UnknownLabelError("unknown label '" + std::string(label) + "'");
}

Subset FinitePoset::subset_of(const std::vector<std::string>& labels) const {
  Subset s = empty_subset();
  for (const auto& l : labels) s.set(index_of(l));
  return s;
}

std::vector<std::string> FinitePoset::labels_of(const Subset& s) const {
  std::vector<std::string> out;
  s.for_each([&](Element e) { out.push_back(labels_[e]); });
  return out;
}

std::vector<std::pair<Element, Element>> FinitePoset::covers() const {
  std::vector<std::pair<Element, Element>> out;
  const std::size_t n = size();
  for (Element a = 0; a < n; ++a) {
    // b covers a iff a < b and no c with a < c < b.
    Bitset strict_up = up_[a];
    strict_up.reset(a);
    strict_up.for_each([&](Element b) {
      Bitset between = strict_up & down_[b];
      between.reset(b);
      if (between.none()) out.emplace_back(a, b);
    });
  }
  return out;
}

std::optional<std::string> FinitePoset::check_axioms() const {
  const std::size_t n = size();
  for (Element i = 0; i < n; ++i)
    if (!up_[i].test(i)) return "not reflexive at '" + labels_[i] + "'";
  for (Element i = 0; i < n; ++i)
    for (Element j = i + 1; j < n; ++j)
      if (up_[i].test(j) && up_[j].test(i))
        return "not antisymmetric: '" + labels_[i] + "' and '" + labels_[j] + "'";
  for (Element i = 0; i < n; ++i) {
    std::optional<std::string> bad;
    up_[i].for_each([&](Element j) {
      if (!bad && !up_[j].is_subset_of(up_[i]))
        bad = "not transitive through '" + labels_[i] + "' <= '" + labels_[j] + "'";
    });
    if (bad) return bad;
  }
  return std::nullopt;
}

Subset upper_bounds(const FinitePoset& p, const Subset& a) {
  Subset ub = p.full_subset();
  a.for_each([&](Element d) { ub &= p.up_set(d); });
  return ub;
}

Subset lower_bounds(const FinitePoset& p, const Subset& a) {
  Subset lb = p.full_subset();
  a.for_each([&](Element d) { lb &= p.down_set(d); });
  return lb;
}

std::optional<Element> least_element(const FinitePoset& p, const Subset& s) {
  for (Element c = s.first(); c < s.size(); c = s.next(c + 1))
    if (s.is_subset_of(p.up_set(c))) return c;
  return std::nullopt;
}

std::optional<Element> greatest_element(const FinitePoset& p, const Subset& s) {
  for (Element c = s.first(); c < s.size(); c = s.next(c + 1))
    if (s.is_subset_of(p.down_set(c))) return c;
  return std::nullopt;
}

std::optional<Element> sup(const FinitePoset& p, const Subset& a) {
  return least_element(p, upper_bounds(p, a));
}

std::optional<Element> inf(const FinitePoset& p, const Subset& a) {
  return greatest_element(p, lower_bounds(p, a));
}

bool is_directed(const FinitePoset& p, const Subset& a) {
  if (a.none()) return false;
  auto m = a.members();
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j)
      if (!(p.up_set(m[i]) & p.up_set(m[j])).intersects(a)) return false;
  return true;
}

bool is_filtered(const FinitePoset& p, const Subset& a) {
  if (a.none()) return false;
  auto m = a.members();
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j)
      if (!(p.down_set(m[i]) & p.down_set(m[j])).intersects(a)) return false;
  return true;
}

std::optional<std::pair<Element, Element>> find_non_lattice_pair(const FinitePoset& p) {
  const std::size_t n = p.size();
  for (Element i = 0; i < n; ++i)
    for (Element j = i + 1; j < n; ++j) {
      if (p.comparable(i, j)) continue;
      Subset pair = Subset::from_indices(n, {i, j});
      if (!sup(p, pair) || !inf(p, pair)) return std::make_pair(i, j);
    }
  return std::nullopt;
}

bool is_lattice(const FinitePoset& p) { return !p.empty() && !find_non_lattice_pair(p); }

bool is_monotone_order_separable(const FinitePoset& p) {
  // A finite directed set with a supremum is itself a finite sequence whose
  // supremum is that bound; dually for filtered sets.
  (void)p;
  return true;
}

FinitePoset induced_subposet(const FinitePoset& p, const Subset& keep) {
  auto members = keep.members();
  const std::size_t m = members.size();
  std::vector<std::string> labels;
  labels.reserve(m);
  std::vector<Bitset> up(m, Bitset(m));
  for (std::size_t i = 0; i < m; ++i) {
    labels.push_back(p.label(members[i]));
    for (std::size_t j = 0; j < m; ++j)
      if (p.leq(members[i], members[j])) up[i].set(j);
  }
  return FinitePoset::from_relation_unchecked(std::move(labels), std::move(up));
}

FinitePoset random_poset(std::size_t n, double density, std::uint64_t seed) {
  // mt19937_64's output sequence is fixed by the standard; distributions are
  // not, so the draws below avoid <random> distributions.
  std::mt19937_64 rng(seed);
  std::vector<Element> perm(n);
  for (Element i = 0; i < n; ++i) perm[i] = i;
  for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng() % i]);

  std::vector<std::pair<Element, Element>> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      if (u < density) edges.emplace_back(perm[i], perm[j]);
    }
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
  return FinitePoset::from_edges(std::move(labels), edges);
}

bool is_order_isomorphism(const FinitePoset& a, const FinitePoset& b,
                          const std::vector<Element>& map) {
  if (a.size() != b.size() || map.size() != a.size()) return false;
  Bitset hit(b.size());
  for (Element x : map) {
    if (x >= b.size() || hit.test(x)) return false;
    hit.set(x);
  }
  for (Element x = 0; x < a.size(); ++x)
    for (Element y = 0; y < a.size(); ++y)
      if (a.leq(x, y) != b.leq(map[x], map[y])) return false;
  return true;
}

}  // namespace ordertop
