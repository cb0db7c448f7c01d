#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ordertop/poset.hpp"

namespace ordertop {

/// Dedekind-MacNeille completion of a finite poset.
///
/// `cuts[i]` is the subset of the base behind lattice element i; the lattice
/// orders cuts by inclusion. `embedding[x]` is the lattice index of the
/// principal cut (<-, x].
struct Completion {
  FinitePoset base;
  std::vector<Subset> cuts;
  FinitePoset lattice;
  std::vector<Element> embedding;

  /// Lattice index of a cut, if `s` is one.
  std::optional<Element> index_of_cut(const Subset& s) const;
};

/// A^{+-}.
Subset cut_closure(const FinitePoset& p, const Subset& a);

/// Every A with A^{+-} = A, each once, in lectic order. Uses NextClosure over
/// the closure operator A -> A^{+-}.
std::vector<Subset> enumerate_cuts(const FinitePoset& p);

Completion dm_complete(const FinitePoset& p);

/// Readable label of a cut, e.g. "{a,b}" or "{}".
std::string cut_label(const FinitePoset& p, const Subset& cut);

struct PropertyResult {
  int property = 0;  // 1..7
  bool pass = true;
  std::string description;
  // Present on failure.
  std::optional<std::vector<std::string>> witness_subset;
  std::string expected;
  std::string got;
};

struct CompletionReport {
  std::vector<PropertyResult> properties;
  bool exhaustive = true;
  std::size_t subsets_checked = 0;
  bool all_pass() const;
};

struct VerifyOptions {
  /// Subsets of the base are enumerated exhaustively up to this size.
  std::size_t exhaustive_bound = 12;
  /// Random subsets used above the bound.
  std::size_t samples = 4096;
  /// Random families of cuts checked for property 2 (pairs are exhaustive).
  std::size_t family_samples = 256;
  std::uint64_t seed = 1;
};

/// Checks the seven listed properties of the completion. Failures carry a
/// witness instead of throwing.
CompletionReport verify_completion_properties(const Completion& c, const VerifyOptions& opts = {});

/// [{ "property", "status", "witness" }, ...]
nlohmann::json to_json(const CompletionReport& r);

}  // namespace ordertop
