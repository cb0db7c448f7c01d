#pragma once

#include <cstddef>
#include <string>

#include "ordertop/certificate.hpp"
#include "ordertop/poset.hpp"

namespace ordertop {

// Wolk's poset restricted to indices 1..N:
//   bot <= everything <= top, a_n <= b_m iff n <= m,
//   the a's and the b's are antichains.
// Labels: a1..aN, b1..bN, bot, top.
struct WolkTruncation {
  std::size_t N = 0;
  FinitePoset poset;

  Element a(std::size_t n) const { return poset.index_of("a" + std::to_string(n)); }
  Element b(std::size_t n) const { return poset.index_of("b" + std::to_string(n)); }
  Element bot() const { return poset.index_of("bot"); }
  Element top() const { return poset.index_of("top"); }
};

/// Throws ParameterOutOfRange when N == 0.
WolkTruncation wolk_truncate(std::size_t N);

/// Exhaustive over all subsets: every directed subset with supremum top
/// contains top. Throws SizeBoundExceeded when N > bound.
Certificate wolk_no_directed_sup_one(std::size_t N, std::size_t bound = 8);
/// Same check on a supplied (possibly altered) truncation carrying the Wolk
/// labels. The outcome is recorded, not asserted.
Certificate wolk_no_directed_sup_one(const FinitePoset& p, std::size_t N, std::size_t bound = 8);

/// The b-sequence b1, ..., bN (held at bN) against target top, with M = A and
/// the filtered family {top}. bN is a truncation artifact: it is an upper
/// bound of A only because the index range stops at N, so the checks that
/// stand for the infinite poset exclude it. Throws ParameterOutOfRange for N < 2.
Certificate wolk_o3_to_top(std::size_t N);

// Olejcek's lattice restricted to K copies and indices 1 <= |i| <= N.
// Labels: a{k}({i}), b{k}({i}) with i in +-1..+-N, 0_{k}, e, bot, top.
// Per copy: a(1) > a(2) > ... > a(N) > 0 > a(-N) > ... > a(-1), the same for
// b, a(i) <= b(i) for i >= 1 and a(i) >= b(i) for i <= -1. Across copies:
// a_k(-1) <= a_{k+1}(-1), a_{k+1}(1) <= a_k(1), a_k(-1) <= e <= a_k(1).
struct OlejcekRules {
  /// Fault injection: leave out every a_k(-1) <= e.
  bool drop_a_minus_one_below_e = false;
};

struct OlejcekTruncation {
  std::size_t K = 0;
  std::size_t N = 0;
  FinitePoset poset_L_hat;  // with the 0_k
  FinitePoset poset_L;      // without them

  /// Copy K, or |i| = N. Undefined for e, bot, top and 0_k (never boundary).
  bool is_boundary(const std::string& label) const;
};

std::string olejcek_label(char letter, std::size_t k, long i);
std::string olejcek_zero_label(std::size_t k);

/// Throws ParameterOutOfRange for K or N equal to 0, and TruncationNotLattice
/// (naming a pair) if the ordered set with the 0_k is not a lattice.
OlejcekTruncation olejcek_truncate(std::size_t K, std::size_t N, const OlejcekRules& rules = {});

/// poset_L with a_k(+-N) removed as well (N >= 2). Removing only the 0_k
/// leaves a_k(-N) <= a_k(N) as a direct comparison, so no gap opens; after
/// this removal every copy has two maximal negative and two minimal positive
/// elements and the completion must put a new cut between them.
FinitePoset olejcek_boundary_opened(const OlejcekTruncation& t);

/// Finite facts behind "0_k converges to e", checked over the window of
/// truncations K' = window_start..K with the same N. Throws WindowTooSmall
/// when K - window_start < 2.
Certificate olejcek_zero_sequence_converges(std::size_t K, std::size_t N,
                                            std::size_t window_start = 2,
                                            const OlejcekRules& rules = {});

/// Chain and limit facts for the b-set in poset_L. Throws SizeBoundExceeded
/// when K or N exceeds `bound` or the chain count exceeds `max_chains`.
Certificate olejcek_b_set_o1_closed(std::size_t K, std::size_t N, std::size_t bound = 4,
                                    std::size_t max_chains = 2000000);

}  // namespace ordertop
