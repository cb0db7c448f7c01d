#include <gtest/gtest.h>

#include "ordertop/completion.hpp"
#include "ordertop/convergence.hpp"
#include "ordertop/errors.hpp"
#include "ordertop/gallery.hpp"

using namespace ordertop;

TEST(Wolk, SmallTruncations) {
  auto t1 = wolk_truncate(1);
  EXPECT_EQ(t1.poset.size(), 4U);
  EXPECT_TRUE(t1.poset.leq(t1.a(1), t1.b(1)));

  auto t2 = wolk_truncate(2);
  const auto& p = t2.poset;
  EXPECT_TRUE(p.leq(t2.a(1), t2.b(1)));
  EXPECT_TRUE(p.leq(t2.a(1), t2.b(2)));
  EXPECT_TRUE(p.leq(t2.a(2), t2.b(2)));
  EXPECT_FALSE(p.leq(t2.a(2), t2.b(1)));
  EXPECT_FALSE(p.comparable(t2.a(1), t2.a(2)));
  EXPECT_FALSE(p.comparable(t2.b(1), t2.b(2)));
  EXPECT_THROW(wolk_truncate(0), ParameterOutOfRange);
}

TEST(Wolk, LatticeOnlyForSmallN) {
  // {a1, a2} has the upper bounds b2..bN and top; for N >= 3 b2 and b3 are
  // both minimal among them.
  EXPECT_TRUE(is_lattice(wolk_truncate(1).poset));
  EXPECT_TRUE(is_lattice(wolk_truncate(2).poset));
  for (std::size_t N = 3; N <= 6; ++N) {
    auto t = wolk_truncate(N);
    EXPECT_FALSE(is_lattice(t.poset)) << N;
    Subset pair = Subset::from_indices(t.poset.size(), {t.a(1), t.a(2)});
    EXPECT_FALSE(sup(t.poset, pair).has_value());
  }
}

TEST(Wolk, TruncationCoherence) {
  for (std::size_t N = 1; N < 6; ++N) {
    auto small = wolk_truncate(N);
    auto big = wolk_truncate(N + 1);
    for (Element x = 0; x < small.poset.size(); ++x)
      for (Element y = 0; y < small.poset.size(); ++y)
        EXPECT_EQ(small.poset.leq(x, y), big.poset.leq(big.poset.index_of(small.poset.label(x)),
                                                       big.poset.index_of(small.poset.label(y))));
  }
}

TEST(Wolk, NoDirectedSupOne) {
  auto c1 = wolk_no_directed_sup_one(1);
  EXPECT_TRUE(c1.pass);
  EXPECT_EQ(c1.evidence["subsets_enumerated"], 16);
  auto c3 = wolk_no_directed_sup_one(3);
  EXPECT_TRUE(c3.pass);
  auto largest = c3.evidence["largest_directed_without_top"];
  EXPECT_EQ(largest["sup"], "b3");
  EXPECT_EQ(largest["subset"], nlohmann::json({"a1", "a2", "a3", "b3", "bot"}));
  EXPECT_THROW(wolk_no_directed_sup_one(9), SizeBoundExceeded);
  EXPECT_EQ(c3.to_json().dump(), wolk_no_directed_sup_one(3).to_json().dump());
}

TEST(Wolk, AlteredTruncationStillRuns) {
  auto t = wolk_truncate(3);
  std::vector<std::pair<std::string, std::string>> covers;
  for (auto [x, y] : t.poset.covers()) covers.emplace_back(t.poset.label(x), t.poset.label(y));
  covers.emplace_back("b1", "b2");
  auto altered = FinitePoset::from_covers(t.poset.labels(), covers);
  auto c = wolk_no_directed_sup_one(altered, 3);
  auto base = wolk_no_directed_sup_one(3);
  EXPECT_NE(c.evidence["directed_subsets"], base.evidence["directed_subsets"]);
}

TEST(Wolk, O3ToTop) {
  for (std::size_t N : {2, 5}) {
    auto c = wolk_o3_to_top(N);
    EXPECT_TRUE(c.pass) << c.to_json().dump(2);
    EXPECT_EQ(c.evidence["upper_bounds_of_A_without_boundary"], nlohmann::json({"top"}));
    EXPECT_EQ(c.evidence["sup_A_without_boundary"], "top");
    EXPECT_EQ(c.evidence["N_family"], nlohmann::json({"top"}));
    EXPECT_TRUE(c.evidence["truncated_sequence_o3_to_bN"].get<bool>());
    EXPECT_FALSE(c.evidence["truncated_sequence_o3_to_top"].get<bool>());
  }
  auto c2 = wolk_o3_to_top(2);
  EXPECT_EQ(c2.evidence["upper_bounds_of_A"], nlohmann::json({"b2", "top"}));
  EXPECT_THROW(wolk_o3_to_top(1), ParameterOutOfRange);
}

TEST(Wolk, O2OnTruncatedBSequence) {
  for (std::size_t N = 2; N <= 4; ++N) {
    auto t = wolk_truncate(N);
    std::vector<Element> prefix;
    for (std::size_t n = 1; n < N; ++n) prefix.push_back(t.b(n));
    LassoSequence s(prefix, {t.b(N)});
    EXPECT_FALSE(o2_converges(t.poset, s, t.top()).converges);
    EXPECT_TRUE(o2_converges(t.poset, s, t.b(N)).converges);
  }
}

TEST(Olejcek, Rules) {
  auto t = olejcek_truncate(1, 2);
  const auto& p = t.poset_L_hat;
  auto id = [&](const std::string& l) { return p.index_of(l); };
  auto ub = upper_bounds(p, Subset::from_indices(p.size(), {id("b1(1)")}));
  EXPECT_EQ(p.labels_of(ub), std::vector<std::string>({"b1(1)", "top"}));
  EXPECT_TRUE(p.leq(id("a1(1)"), id("b1(1)")));
  EXPECT_TRUE(p.leq(id("e"), id("a1(1)")));
  EXPECT_TRUE(p.leq(id("a1(-1)"), id("a1(-2)")));
  EXPECT_TRUE(p.leq(id("b1(-2)"), id("a1(-2)")));
  EXPECT_TRUE(p.leq(id("a1(2)"), id("a1(1)")));

  auto t2 = olejcek_truncate(2, 2);
  const auto& q = t2.poset_L_hat;
  EXPECT_TRUE(q.leq(q.index_of("a1(-1)"), q.index_of("a2(-1)")));
  EXPECT_TRUE(q.leq(q.index_of("a2(1)"), q.index_of("a1(1)")));
  EXPECT_FALSE(q.comparable(q.index_of("b1(1)"), q.index_of("b2(1)")));
}

TEST(Olejcek, LatticeAndSeparable) {
  for (std::size_t K = 1; K <= 3; ++K)
    for (std::size_t N = 1; N <= 3; ++N) {
      auto t = olejcek_truncate(K, N);
      EXPECT_TRUE(is_lattice(t.poset_L_hat));
      EXPECT_TRUE(is_monotone_order_separable(t.poset_L));
      EXPECT_EQ(t.poset_L_hat.size(), 4 * K * N + K + 3);
    }
}

TEST(Olejcek, TruncationCoherence) {
  auto small = olejcek_truncate(2, 2);
  for (auto [K, N] : {std::pair{3, 2}, std::pair{2, 3}}) {
    auto big = olejcek_truncate(K, N);
    const auto& s = small.poset_L_hat;
    const auto& b = big.poset_L_hat;
    for (Element x = 0; x < s.size(); ++x)
      for (Element y = 0; y < s.size(); ++y)
        EXPECT_EQ(s.leq(x, y), b.leq(b.index_of(s.label(x)), b.index_of(s.label(y))));
  }
}

TEST(Olejcek, CompletionRediscoversZeros) {
  for (std::size_t K = 1; K <= 3; ++K)
    for (std::size_t N = 2; N <= 3; ++N) {
      auto t = olejcek_truncate(K, N);
      auto opened = olejcek_boundary_opened(t);
      auto c = dm_complete(opened);
      const auto& hat = t.poset_L_hat;
      for (std::size_t k = 1; k <= K; ++k) {
        // (<-, 0_k] of the full lattice, restricted to what is left.
        Subset cut = opened.empty_subset();
        hat.down_set(hat.index_of(olejcek_zero_label(k))).for_each([&](Element x) {
          if (auto y = opened.find(hat.label(x))) cut.set(*y);
        });
        auto idx = c.index_of_cut(cut);
        ASSERT_TRUE(idx.has_value()) << K << "," << N << "," << k;
        bool principal = false;
        for (Element x = 0; x < opened.size(); ++x) principal |= c.embedding[x] == *idx;
        EXPECT_FALSE(principal);
      }
    }
}

TEST(Olejcek, ZeroSequence) {
  auto c = olejcek_zero_sequence_converges(4, 2);
  EXPECT_TRUE(c.pass) << c.to_json().dump(2);
  EXPECT_EQ(c.evidence["sup_a_minus_one_family"], "a4(-1)");
  EXPECT_EQ(c.evidence["least_persistent_upper_bound"], "e");
  EXPECT_EQ(c.evidence["persistent_upper_bounds"],
            nlohmann::json({"a1(1)", "b1(1)", "e", "top"}));
  EXPECT_THROW(olejcek_zero_sequence_converges(2, 2), WindowTooSmall);

  OlejcekRules faulty;
  faulty.drop_a_minus_one_below_e = true;
  auto f = olejcek_zero_sequence_converges(4, 2, 2, faulty);
  EXPECT_FALSE(f.pass);
  for (const auto& l : f.evidence["persistent_upper_bounds"]) EXPECT_NE(l, "e");
}

TEST(Olejcek, BSet) {
  auto c = olejcek_b_set_o1_closed(3, 3);
  EXPECT_TRUE(c.pass) << c.to_json().dump(2);
  EXPECT_FALSE(c.evidence["e_in_b"].get<bool>());
  EXPECT_FALSE(c.evidence["chain_spanning_copies"].is_null());
  EXPECT_EQ(c.evidence["zero_sequence"]["least_persistent_upper_bound"], "e");
  EXPECT_TRUE(olejcek_b_set_o1_closed(1, 1).pass);
  EXPECT_THROW(olejcek_b_set_o1_closed(5, 1), SizeBoundExceeded);
}
