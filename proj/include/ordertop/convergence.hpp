#pragma once

#include <optional>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "ordertop/completion.hpp"
#include "ordertop/poset.hpp"

namespace ordertop {

/// Eventually periodic sequence: `prefix` followed by `cycle` repeated forever.
class LassoSequence {
 public:
  /// Throws std::invalid_argument when the cycle is empty.
  LassoSequence(std::vector<Element> prefix, std::vector<Element> cycle);

  const std::vector<Element>& prefix() const { return prefix_; }
  const std::vector<Element>& cycle() const { return cycle_; }

  /// Value at position k.
  Element at(std::size_t k) const;
  /// Positions at or beyond this index all lie in the repeating part.
  std::size_t stable_from() const { return prefix_.size(); }

  /// Throws std::out_of_range if an index is not an element of `p`.
  void check_against(const FinitePoset& p) const;

  /// Value set of the cycle, i.e. every residual from stable_from() on.
  Subset tail_values(std::size_t universe) const;
  /// The eventual value when the cycle is constant.
  std::optional<Element> eventual_constant() const;

  /// Drops the first k terms (a cofinal subsequence).
  LassoSequence drop(std::size_t k) const;

  friend bool operator==(const LassoSequence&, const LassoSequence&) = default;

 private:
  std::vector<Element> prefix_;
  std::vector<Element> cycle_;
};

/// {s_j : j >= k}, exact.
Subset residual(const FinitePoset& p, const LassoSequence& s, std::size_t k);

/// (sup_k inf E(k), inf_k sup E(k)). Throws NotALatticeError when a required
/// bound does not exist in `p`.
std::pair<Element, Element> liminf_limsup(const FinitePoset& p, const LassoSequence& s);

enum class Mode { O1, O2, O3, ODM };
std::string_view to_string(Mode m);
/// Accepts o1/o2/o3/odm (case-insensitive).
std::optional<Mode> parse_mode(std::string_view s);

/// Monotone sandwich sequences given as lassos.
struct O1Witness {
  LassoSequence lower;
  LassoSequence upper;
};

struct O2Witness {
  Subset directed;  // M
  Subset filtered;  // N
};

/// Both criteria of the residual characterization, evaluated independently.
struct O3Witness {
  Subset lower_union;  // union of E(k)^-
  Subset upper_union;  // union of E(k)^+
  std::optional<Element> sup_lower;
  std::optional<Element> inf_upper;
  bool criterion_bounds = false;    // sup(union E^-) = x = inf(union E^+)
  bool criterion_closures = false;  // cap E^{+-} = (<-,x] and cap E^{-+} = [x,->)
};

struct ODMWitness {
  Element liminf_cut;  // indices into the completion lattice
  Element limsup_cut;
  Element target_cut;
};

using Witness = std::variant<std::monostate, O1Witness, O2Witness, O3Witness, ODMWitness>;

struct ConvergenceVerdict {
  Mode mode;
  Element target;
  bool converges = false;
  std::optional<Element> limit;
  Witness witness;
};

/// Sandwich decider: searches monotone lasso sandwiches y <= s <= z with
/// sup y = inf z = x.
ConvergenceVerdict o1_converges(const FinitePoset& p, const LassoSequence& s, Element x);

enum class O2Search {
  Auto,        // exhaustive when |p| <= bound, cones otherwise
  Exhaustive,  // every pair of subsets of p; SizeBoundExceeded above the bound
  Cones,       // M within (<-,x], N within [x,->)
};

struct O2Options {
  O2Search search = O2Search::Auto;
  std::size_t exhaustive_bound = 8;
};

/// Directed/filtered witness search. Reports the lectically least witness.
///
/// Restricting candidates to the cones (<-,x] and [x,->) loses nothing: if
/// (M, N) is a witness then sup M = x forces M within (<-,x] already, and the
/// same for N, so every witness is found by the cone search.
ConvergenceVerdict o2_converges(const FinitePoset& p, const LassoSequence& s, Element x,
                                const O2Options& opts = {});

/// Residual-bound criterion, cross-checked against the closure criterion.
ConvergenceVerdict o3_converges(const FinitePoset& p, const LassoSequence& s, Element x);

/// liminf/limsup of the embedded sequence in the completion.
ConvergenceVerdict odm_converges(const FinitePoset& p, const LassoSequence& s, Element x);
ConvergenceVerdict odm_converges(const Completion& c, const LassoSequence& s, Element x);

ConvergenceVerdict converges(const FinitePoset& p, const LassoSequence& s, Element x, Mode m);

}  // namespace ordertop
