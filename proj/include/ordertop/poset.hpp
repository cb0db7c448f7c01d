#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ordertop/bitset.hpp"

namespace ordertop {

using Element = std::size_t;
using Subset = Bitset;

/// A finite partial order stored as bit-packed up-set and down-set rows.
///
/// Immutable after construction. Element indices follow label order; labels
/// are unique.
class FinitePoset {
 public:
  FinitePoset() = default;

  /// `up[i]` holds every j with i <= j. Throws InvalidPosetError unless the
  /// relation is reflexive, antisymmetric and transitive.
  static FinitePoset from_relation(std::vector<std::string> labels, std::vector<Bitset> up);

  /// Same as from_relation without the order-axiom check (labels must still
  /// be unique). Exists for fault-injection tests.
  static FinitePoset from_relation_unchecked(std::vector<std::string> labels,
                                             std::vector<Bitset> up);

  /// Reflexive-transitive closure of the cover edges (lower, upper).
  /// Throws DuplicateLabelError, UnknownLabelError or CycleError.
  static FinitePoset from_covers(std::vector<std::string> labels,
                                 const std::vector<std::pair<std::string, std::string>>& covers);

  /// Index-based variant of from_covers.
  static FinitePoset from_edges(std::vector<std::string> labels,
                                const std::vector<std::pair<Element, Element>>& edges);

  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }

  const std::string& label(Element e) const { return labels_[e]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<Element> find(std::string_view label) const;
  /// Throws UnknownLabelError.
  Element index_of(std::string_view label) const;

  bool leq(Element a, Element b) const { return up_[a].test(b); }
  bool less(Element a, Element b) const { return a != b && leq(a, b); }
  bool comparable(Element a, Element b) const { return leq(a, b) || leq(b, a); }

  /// [a, ->)
  const Bitset& up_set(Element a) const { return up_[a]; }
  /// (<-, a]
  const Bitset& down_set(Element a) const { return down_[a]; }

  Subset empty_subset() const { return Subset(size()); }
  Subset full_subset() const { return Subset::full(size()); }
  Subset subset_of(const std::vector<std::string>& labels) const;
  std::vector<std::string> labels_of(const Subset& s) const;

  /// Hasse diagram edges (lower, upper), sorted.
  std::vector<std::pair<Element, Element>> covers() const;

  /// Description of the first violated order axiom, if any.
  std::optional<std::string> check_axioms() const;

 private:
  FinitePoset(std::vector<std::string> labels, std::vector<Bitset> up);

  std::vector<std::string> labels_;
  std::vector<Bitset> up_;
  std::vector<Bitset> down_;
  std::unordered_map<std::string, Element> index_;
};

/// {x : x >= d for all d in a}; the whole poset when a is empty.
Subset upper_bounds(const FinitePoset& p, const Subset& a);
/// {x : x <= d for all d in a}; the whole poset when a is empty.
Subset lower_bounds(const FinitePoset& p, const Subset& a);

/// Least element of `s`, if it has one.
std::optional<Element> least_element(const FinitePoset& p, const Subset& s);
/// Greatest element of `s`, if it has one.
std::optional<Element> greatest_element(const FinitePoset& p, const Subset& s);

std::optional<Element> sup(const FinitePoset& p, const Subset& a);
std::optional<Element> inf(const FinitePoset& p, const Subset& a);

/// Nonempty and every pair has an upper bound inside `a`.
bool is_directed(const FinitePoset& p, const Subset& a);
/// Nonempty and every pair has a lower bound inside `a`.
bool is_filtered(const FinitePoset& p, const Subset& a);

/// A pair without supremum or infimum, if one exists.
std::optional<std::pair<Element, Element>> find_non_lattice_pair(const FinitePoset& p);
/// Nonempty and every pair has a supremum and an infimum.
bool is_lattice(const FinitePoset& p);

/// Every directed (filtered) subset with a supremum (infimum) contains a
/// sequence with the same bound. Finite subsets are sequences, so this holds
/// for every finite poset.
bool is_monotone_order_separable(const FinitePoset& p);

/// Order induced on the elements of `keep`, preserving relative index order.
FinitePoset induced_subposet(const FinitePoset& p, const Subset& keep);

/// Random poset on labels p0..p{n-1}: edges of a strict upper-triangular
/// relation are drawn with probability `density` on a random permutation,
/// then closed transitively. Deterministic in (n, density, seed) on every
/// platform.
FinitePoset random_poset(std::size_t n, double density, std::uint64_t seed);

/// Verifies an explicit order isomorphism `map : a -> b` (bijective, and
/// x <= y iff map(x) <= map(y)).
bool is_order_isomorphism(const FinitePoset& a, const FinitePoset& b,
                          const std::vector<Element>& map);

}  // namespace ordertop
