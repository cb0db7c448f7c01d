#pragma once

// Shared fixtures, generators and brute-force oracles for the test suites.
// The oracles deliberately avoid the library's bound operators and scan the
// raw relation instead.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ordertop/convergence.hpp"
#include "ordertop/poset.hpp"

namespace ordertop::testing {

inline FinitePoset chain(std::size_t n) {
  std::vector<std::string> labels;
  std::vector<std::pair<Element, Element>> edges;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back("c" + std::to_string(i));
    if (i) edges.emplace_back(i - 1, i);
  }
  return FinitePoset::from_edges(labels, edges);
}

inline FinitePoset antichain(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::string(1, static_cast<char>('a' + i)));
  return FinitePoset::from_edges(labels, {});
}

inline FinitePoset diamond() {
  return FinitePoset::from_covers({"0", "a", "b", "1"},
                                  {{"0", "a"}, {"0", "b"}, {"a", "1"}, {"b", "1"}});
}

// Subsets of {0..k-1} under inclusion, labelled by their bit masks.
inline FinitePoset boolean_lattice(std::size_t k) {
  std::vector<std::string> labels;
  std::vector<std::pair<Element, Element>> edges;
  for (std::size_t m = 0; m < (std::size_t{1} << k); ++m) {
    labels.push_back("s" + std::to_string(m));
    for (std::size_t b = 0; b < k; ++b)
      if (!(m >> b & 1U)) edges.emplace_back(m, m | (std::size_t{1} << b));
  }
  return FinitePoset::from_edges(labels, edges);
}

// A^{+-} by scanning the relation directly.
inline std::uint64_t naive_closure(const FinitePoset& p, std::uint64_t a) {
  const std::size_t n = p.size();
  std::uint64_t upper = 0;
  for (std::size_t x = 0; x < n; ++x) {
    bool ok = true;
    for (std::size_t d = 0; d < n && ok; ++d)
      if ((a >> d & 1U) && !p.leq(d, x)) ok = false;
    if (ok) upper |= std::uint64_t{1} << x;
  }
  std::uint64_t lower = 0;
  for (std::size_t x = 0; x < n; ++x) {
    bool ok = true;
    for (std::size_t u = 0; u < n && ok; ++u)
      if ((upper >> u & 1U) && !p.leq(x, u)) ok = false;
    if (ok) lower |= std::uint64_t{1} << x;
  }
  return lower;
}

// Every fixed point of A -> A^{+-}, found by filtering all 2^n subsets,
// sorted lectically.
inline std::vector<Subset> brute_force_cuts(const FinitePoset& p) {
  std::vector<Subset> out;
  const std::size_t n = p.size();
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m)
    if (naive_closure(p, m) == m) out.push_back(Subset::from_mask(n, m));
  std::sort(out.begin(), out.end(), [](const Subset& a, const Subset& b) {
    return Bitset::lectic_less(a, b);
  });
  return out;
}

// Unrolls the sequence far enough to see the cycle twice after the prefix and
// checks that everything from there on equals x.
inline bool naive_eventually_constant_at(const LassoSequence& s, Element x) {
  std::size_t start = s.prefix().size();
  std::size_t len = s.cycle().size();
  for (std::size_t k = start; k < start + 2 * len; ++k)
    if (s.at(k) != x) return false;
  return true;
}

inline LassoSequence random_lasso(std::mt19937_64& rng, std::size_t n, std::size_t max_prefix = 3,
                                  std::size_t max_cycle = 3) {
  std::vector<Element> prefix(rng() % (max_prefix + 1));
  std::vector<Element> cycle(1 + rng() % max_cycle);
  for (auto& e : prefix) e = rng() % n;
  for (auto& e : cycle) e = rng() % n;
  // Bias toward eventually constant sequences so that true verdicts occur.
  if (rng() % 3 == 0) std::fill(cycle.begin(), cycle.end(), cycle.front());
  return LassoSequence(prefix, cycle);
}

inline double random_density(std::mt19937_64& rng) {
  static constexpr double kDensities[] = {0.0, 0.15, 0.3, 0.45, 0.6, 0.8, 1.0};
  return kDensities[rng() % 7];
}

}  // namespace ordertop::testing
