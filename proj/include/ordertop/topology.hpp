#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "ordertop/completion.hpp"
#include "ordertop/convergence.hpp"

namespace ordertop {

struct ClosureQuery {
  const FinitePoset* poset = nullptr;
  Subset subset;
  Mode mode = Mode::O3;
};

/// Computes closures by fixpoint iteration: repeatedly adds every limit of a
/// lasso valued in the current set. Lassos have an empty prefix (a prefix
/// never changes a verdict) and cycle length <= max_cycle. Verdicts and the
/// completion are cached, so one engine answers many queries on one poset.
class ClosureEngine {
 public:
  explicit ClosureEngine(const FinitePoset& p, std::size_t max_cycle = 2);

  const FinitePoset& poset() const { return p_; }
  const Completion& completion();

  Subset closure(const Subset& x, Mode m);
  bool is_closed(const Subset& x, Mode m) { return closure(x, m) == x; }

  /// X is closed in the topology that the completion's order topology induces
  /// on P: the closure of phi[X] inside the completion meets phi[P] exactly
  /// in phi[X].
  bool is_closed_in_completion(const Subset& x);

 private:
  bool converges_cached(const std::vector<Element>& cycle, Element x, Mode m);
  std::optional<Element> lattice_limit(const std::vector<Element>& cycle);

  const FinitePoset& p_;
  std::size_t max_cycle_;
  std::optional<Completion> completion_;
  std::map<std::tuple<int, std::vector<Element>, Element>, bool> verdicts_;
  std::map<std::vector<Element>, std::optional<Element>> lattice_limits_;
};

/// Closure of q.subset under q.mode. On finite posets every mode collapses to
/// eventual constancy, so the closure is the subset itself; a violation
/// throws std::logic_error.
Subset oi_closure(const ClosureQuery& q);

struct TopologyReport {
  std::size_t subsets = 0;
  // Number of closed subsets per topology.
  std::size_t closed_o1 = 0, closed_o2 = 0, closed_o3 = 0, closed_odm = 0, closed_completion = 0;
  bool o3_within_o2 = true;          // every O3-closed set is O2-closed
  bool o2_within_o1 = true;          // every O2-closed set is O1-closed
  bool completion_within_o3 = true;  // every set closed in the induced topology is O3-closed
  bool all_discrete = true;          // every subset closed in every topology
  std::optional<Subset> first_violation;
  bool inclusions_hold() const { return o3_within_o2 && o2_within_o1 && completion_within_o3; }
};

/// Enumerates all subsets of p. Throws SizeBoundExceeded when |p| > bound.
TopologyReport topology_inclusion_report(const FinitePoset& p, std::size_t bound = 8);
nlohmann::json to_json(const FinitePoset& p, const TopologyReport& r);

/// Greedy running maxima with ties kept: index j stays iff h[j] is at least
/// the largest value kept so far.
std::vector<std::size_t> isotone_cofinal_restriction(const std::vector<std::size_t>& h);

struct ExtractionResult {
  LassoSequence subsequence;
  /// h(alpha) for alpha below the horizon.
  std::vector<std::size_t> index_map;
  /// Positions kept by the isotone restriction.
  std::vector<std::size_t> kept;
  std::size_t horizon = 0;
  /// "cofinal within horizon H", or "unbounded fiber" on the constant fast path.
  std::string status;
  ConvergenceVerdict verdict;
};

/// Subsequence of f converging to x, built from g (valued in f's range and
/// converging to x) via h(alpha) = least beta with f(beta) = g(alpha).
///
/// Throws ExtractionError::WitnessMismatch when g takes a value f never
/// takes, when g does not converge to x, or when f's tail cannot follow g's
/// limit; ExtractionError::UnboundedFiber when f's cycle is not constant, so
/// some value has a cofinal preimage.
ExtractionResult extract_convergent_subsequence(const FinitePoset& p, const LassoSequence& f,
                                                const LassoSequence& g, Element x);

}  // namespace ordertop
