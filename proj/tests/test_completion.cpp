#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "ordertop/completion.hpp"
#include "ordertop/errors.hpp"
#include "support.hpp"

using namespace ordertop;
using namespace ordertop::testing;

TEST(EnumerateCuts, Antichain) {
  auto p = antichain(2);
  auto cuts = enumerate_cuts(p);
  ASSERT_EQ(cuts.size(), 4U);
  // lectic: {}, {b}, {a}, {a,b}
  EXPECT_EQ(cuts[0].to_bit_string(), "00");
  EXPECT_EQ(cuts[1].to_bit_string(), "01");
  EXPECT_EQ(cuts[2].to_bit_string(), "10");
  EXPECT_EQ(cuts[3].to_bit_string(), "11");
}

TEST(EnumerateCuts, EmptyPoset) {
  auto p = FinitePoset::from_edges({}, {});
  auto cuts = enumerate_cuts(p);
  ASSERT_EQ(cuts.size(), 1U);
  EXPECT_EQ(cuts[0].size(), 0U);
}

TEST(EnumerateCuts, LatticeHasOnlyPrincipalCuts) {
  for (auto p : {diamond(), boolean_lattice(3), chain(6)}) {
    auto cuts = enumerate_cuts(p);
    ASSERT_EQ(cuts.size(), p.size());
    for (Element x = 0; x < p.size(); ++x)
      EXPECT_NE(std::find(cuts.begin(), cuts.end(), p.down_set(x)), cuts.end());
  }
}

TEST(EnumerateCuts, MatchesBruteForceOracle) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = rng() % 13;
    auto p = random_poset(n, random_density(rng), rng());
    auto cuts = enumerate_cuts(p);
    ASSERT_EQ(cuts, brute_force_cuts(p)) << "n=" << n << " trial=" << trial;
    // |cuts| = n exactly for lattices (which have top and bottom when finite)
    if (n > 0) EXPECT_EQ(cuts.size() == n, is_lattice(p));
  }
}

TEST(DmComplete, AntichainGivesDiamond) {
  auto c = dm_complete(antichain(2));
  ASSERT_EQ(c.lattice.size(), 4U);
  EXPECT_TRUE(is_lattice(c.lattice));
  auto d = diamond();
  // diamond labels 0,a,b,1 map to cuts {}, {a}, {b}, {a,b}
  std::vector<Element> map = {*c.index_of_cut(Subset(2)), *c.index_of_cut(Subset::from_indices(2, {0})),
                              *c.index_of_cut(Subset::from_indices(2, {1})),
                              *c.index_of_cut(Subset::full(2))};
  EXPECT_TRUE(is_order_isomorphism(d, c.lattice, map));
  EXPECT_EQ(c.lattice.label(c.embedding[0]), "{a}");
}

TEST(DmComplete, IdempotentUpToIsomorphism) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = 1 + rng() % 8;
    auto c1 = dm_complete(random_poset(n, random_density(rng), rng()));
    auto c2 = dm_complete(c1.lattice);
    ASSERT_EQ(c2.lattice.size(), c1.lattice.size());
    EXPECT_TRUE(is_order_isomorphism(c1.lattice, c2.lattice, c2.embedding));
  }
}

TEST(Verify, DiamondCompletionAllPass) {
  auto c = dm_complete(antichain(2));
  auto r = verify_completion_properties(c);
  ASSERT_EQ(r.properties.size(), 7U);
  EXPECT_TRUE(r.all_pass());
  EXPECT_TRUE(r.exhaustive);
  EXPECT_EQ(r.subsets_checked, 4U);
  auto j = to_json(r);
  ASSERT_EQ(j.size(), 7U);
  EXPECT_EQ(j[0]["status"], "pass");
  EXPECT_TRUE(j[0]["witness"].is_null());
}

TEST(Verify, RandomPosetsAllPass) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = rng() % 9;
    auto r = verify_completion_properties(dm_complete(random_poset(n, random_density(rng), rng())));
    EXPECT_TRUE(r.all_pass()) << to_json(r).dump();
  }
}

TEST(Verify, SampledAboveBound) {
  auto c = dm_complete(random_poset(14, 0.3, 8));
  VerifyOptions opts;
  opts.exhaustive_bound = 10;
  opts.samples = 300;
  auto r = verify_completion_properties(c, opts);
  EXPECT_FALSE(r.exhaustive);
  EXPECT_EQ(r.subsets_checked, 300U);
  EXPECT_TRUE(r.all_pass());
}

TEST(Verify, CorruptedLatticeIsCaught) {
  auto c = dm_complete(antichain(2));
  // Flip one relation bit: make {a} <= {b}.
  std::vector<Bitset> up;
  for (Element i = 0; i < c.lattice.size(); ++i) up.push_back(c.lattice.up_set(i));
  Element a = c.embedding[0], b = c.embedding[1];
  up[a].flip(b);
  c.lattice = FinitePoset::from_relation_unchecked(c.lattice.labels(), up);
  auto r = verify_completion_properties(c);
  EXPECT_FALSE(r.all_pass());
  auto j = to_json(r);
  bool has_witness = false;
  for (const auto& e : j)
    if (e["status"] == "fail") has_witness |= !e["witness"].is_null();
  EXPECT_TRUE(has_witness);
}

TEST(Verify, SupOfImageIsClosure) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 1 + rng() % 8;
    auto p = random_poset(n, random_density(rng), rng());
    auto c = dm_complete(p);
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
      Subset a = Subset::from_mask(n, m);
      Subset img(c.lattice.size());
      a.for_each([&](Element x) { img.set(c.embedding[x]); });
      auto s = sup(c.lattice, img);
      ASSERT_TRUE(s.has_value());
      EXPECT_EQ(c.cuts[*s], Subset::from_mask(n, naive_closure(p, m)));
    }
  }
}
