#include <gtest/gtest.h>

#include <random>

#include "ordertop/errors.hpp"
#include "ordertop/measure.hpp"

using namespace ordertop;

namespace {

Rational R(long n, long d = 1) { return Rational(n, d); }

StepFunction dense(std::size_t level, std::initializer_list<Rational> c) {
  return StepFunction::from_dense(level, std::vector<Rational>(c));
}

StepFunction random_step(std::mt19937_64& rng, std::size_t max_level = 5, long span = 6) {
  std::size_t level = rng() % (max_level + 1);
  std::vector<Rational> c(std::size_t{1} << level);
  for (auto& v : c) v = Rational(static_cast<long>(rng() % (2 * span + 1)) - span, 1 + rng() % 3);
  return StepFunction::from_dense(level, c);
}

// Sum of a few scaled dyadic intervals down to `depth`.
StepFunction random_generator(std::mt19937_64& rng, std::size_t depth) {
  StepFunction g;
  for (int k = 0, pieces = 1 + rng() % 4; k < pieces; ++k) {
    std::size_t level = rng() % (depth + 1);
    std::uint64_t index = level ? rng() % (std::uint64_t{1} << level) : 0;
    g = g + StepFunction::interval(level, index, Rational(static_cast<long>(rng() % 21) - 10, 1 + rng() % 4));
  }
  return g;
}

// Integral straight from the dense coefficients.
Rational dense_integral(const StepFunction& f, std::size_t level) {
  Rational s = 0;
  for (const auto& v : f.dense(level)) s += v;
  return s / Rational(Integer(1) << level);
}

}  // namespace

TEST(StepFunction, CanonicalForm) {
  auto f = dense(2, {1, 1, 3, 3});
  EXPECT_EQ(f.level(), 1U);
  EXPECT_EQ(f.to_text(), "1;1,3");
  EXPECT_EQ(dense(3, {5, 5, 5, 5, 5, 5, 5, 5}).level(), 0U);
  EXPECT_EQ(dense(2, {1, 2, 3, 4}).level(), 2U);
  EXPECT_EQ(f, StepFunction::parse("2;1,1,3,3"));
  EXPECT_EQ(StepFunction::parse("1;1/2,-3").dense(), (std::vector<Rational>{R(1, 2), R(-3)}));
  EXPECT_THROW(StepFunction::parse("2;1,2,3"), ParseError);
  EXPECT_THROW(StepFunction::parse("x;1"), ParseError);
  EXPECT_THROW(StepFunction::parse("0;1/0"), ParseError);
  EXPECT_THROW(StepFunction::parse("0;abc"), ParseError);
  EXPECT_EQ(StepFunction::interval(2, 1, 7).to_text(), "2;0,7,0,0");
  EXPECT_EQ(StepFunction::interval(2, 1, 7).value_at(2, 1), 7);
  EXPECT_EQ(StepFunction::interval(2, 1, 7).value_at(1, 1), 0);
  EXPECT_THROW(StepFunction::interval(2, 1, 7).value_at(1, 0), std::invalid_argument);
}

TEST(StepFunction, RoundTripAndRefinement) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 300; ++t) {
    auto f = random_step(rng);
    EXPECT_EQ(StepFunction::parse(f.to_text()), f);
    // Re-evaluating at a finer level changes nothing.
    auto fine = StepFunction::from_dense(f.level() + 2, f.dense(f.level() + 2));
    EXPECT_EQ(fine, f);
    EXPECT_EQ(dense_integral(f, f.level() + 3), f.integral());
    EXPECT_EQ(fine.level(), f.level());
  }
}

TEST(Measure, IntegralExamples) {
  EXPECT_EQ(integral(StepFunction(1)), 1);
  EXPECT_EQ(integral(StepFunction::interval(1, 0)), R(1, 2));
  EXPECT_EQ(integral(dense(2, {1, 2, 3, 4})), R(10, 4));
}

TEST(Measure, PairingExamples) {
  auto a = StepFunction::interval(3, 5);
  EXPECT_EQ(pairing(a, a), R(1, 8));
  EXPECT_EQ(pairing(dense(2, {1, 2, 3, 4}), StepFunction()), 0);
  auto left = StepFunction::interval(1, 0);
  auto mid = dense(2, {0, 1, 1, 0});
  EXPECT_EQ(pairing(left, mid), R(1, 4));
}

TEST(Measure, PowerNormExamples) {
  auto a = StepFunction::interval(2, 3);
  for (unsigned p = 1; p <= 4; ++p) EXPECT_EQ(p_power_norm(a, p), R(1, 4));
  EXPECT_EQ(p_power_norm(StepFunction::interval(1, 0, 2), 2), 2);
  EXPECT_EQ(p_power_norm(StepFunction(), 3), 0);
  EXPECT_EQ(p_power_norm(dense(1, {-1, 2}), 3), R(9, 2));
}

TEST(Measure, RhoExamples) {
  auto e = DyadicSet::interval(2, 2);
  EXPECT_EQ(rho_E(e.indicator().scaled(5), e), R(1, 4));
  EXPECT_EQ(rho_E(e.indicator().scaled(R(1, 2)), e), R(1, 8));
  EXPECT_EQ(rho_E(dense(1, {3, 4}), DyadicSet()), 0);
}

TEST(Measure, GammaExamples) {
  std::vector<StepFunction> k{StepFunction(1)};
  EXPECT_EQ(gamma_K(StepFunction(1), k), 1);
  EXPECT_EQ(gamma_K(StepFunction(), k), 0);
  EXPECT_EQ(gamma_K(t5_family_element(2, 2), k), R(3, 4));
  EXPECT_THROW(gamma_K(StepFunction(1), {}), std::invalid_argument);
}

TEST(Measure, UniformIntegrabilityProfile) {
  auto rows = uniform_integrability_profile({StepFunction(1)}, {R(2)});
  ASSERT_EQ(rows.size(), 1U);
  EXPECT_EQ(rows[0].tail, 0);
  std::vector<StepFunction> fam;
  for (int m = 1; m <= 5; ++m) fam.push_back(t5_b(m).indicator().scaled(m));
  rows = uniform_integrability_profile(fam, {R(1), R(2), R(3), R(5)});
  EXPECT_EQ(rows[0].tail, R(1, 2));
  EXPECT_EQ(rows[1].tail, R(3, 8));
  EXPECT_EQ(rows[2].tail, R(1, 4));
  EXPECT_EQ(rows[3].tail, 0);
  EXPECT_TRUE(uniform_integrability_profile(fam, {}).empty());
  EXPECT_THROW(uniform_integrability_profile(fam, {R(2), R(1)}), std::invalid_argument);
  EXPECT_THROW(uniform_integrability_profile(fam, {R(0)}), std::invalid_argument);
}

TEST(Tree, Shapes) {
  auto t = t5_tree(3);
  EXPECT_EQ(t.a[0].membership(1), (std::vector<bool>{false, true}));
  EXPECT_EQ(t.b[0].membership(1), (std::vector<bool>{true, false}));
  EXPECT_EQ(t.a[1].membership(2), (std::vector<bool>{false, true, false, true}));
  EXPECT_EQ(t.b[1].membership(2), (std::vector<bool>{true, false, false, false}));
  for (std::size_t n = 1; n <= 60; ++n) {
    EXPECT_EQ(t5_a(n).measure(), R(1, 2));
    EXPECT_EQ(t5_b(n).measure(), Rational(1, Integer(1) << n));
    EXPECT_EQ(t5_a(n).level(), n);
  }
  EXPECT_THROW(t5_tree(0), ParameterOutOfRange);
}

TEST(Tree, FamilyElements) {
  EXPECT_EQ(t5_family_element(1, 1), StepFunction(1));
  auto f = t5_family_element(2, 2);
  EXPECT_EQ(f.dense(2), (std::vector<Rational>{R(2), R(1, 2), R(0), R(1, 2)}));
  for (std::uint64_t m = 1; m <= 5; ++m)
    for (std::size_t n = 1; n <= 8; ++n)
      EXPECT_EQ(integral(t5_family_element(m, n)),
                Rational(1, 2 * m) + Rational(m, Integer(1) << n));
}

TEST(Tree, SymmetricDifferences) {
  EXPECT_EQ((t5_a(1) ^ t5_a(2)).measure(), R(1, 2));
  EXPECT_EQ((t5_a(2) ^ t5_a(5)).measure(), R(1, 2));
  EXPECT_EQ((t5_a(4) ^ t5_a(4)).measure(), 0);
  EXPECT_EQ((t5_a(3) ^ t5_a(64)).measure(), R(1, 2));
  auto c = t5_symmetric_difference_certificate(12);
  EXPECT_TRUE(c.pass);
  EXPECT_EQ(c.evidence["pairs_checked"], 66);
  EXPECT_EQ(c.evidence["sample_measures"]["1,2"], "1/2");
  EXPECT_THROW(t5_symmetric_difference_certificate(1), ParameterOutOfRange);
}

TEST(Escape, Traces) {
  auto w = t5_escape_witness({StepFunction(1)});
  EXPECT_EQ(w.m, 2U);
  EXPECT_EQ(w.n, 2U);
  EXPECT_EQ(w.gamma, R(3, 4));
  w = t5_escape_witness({StepFunction(2)});
  EXPECT_EQ(w.m, 4U);
  EXPECT_EQ(w.n, 4U);
  EXPECT_EQ(w.gamma, R(3, 4));
  EXPECT_EQ(w.f, t5_family_element(4, 4));
  w = t5_escape_witness({StepFunction()});
  EXPECT_EQ(w.m, 1U);
  EXPECT_EQ(w.n, 1U);
  EXPECT_EQ(w.gamma, 0);
  EXPECT_THROW(t5_escape_witness({}), std::invalid_argument);
  EXPECT_THROW(t5_escape_witness({StepFunction::interval(40, 0, Rational(Integer(1) << 40))}, 20),
               NoEscapeWithinDepth);
}

TEST(Escape, HullGaugeCanOvershoot) {
  // Signed generator with zero mean: the hull recipe picks m = 1 and lands on
  // an element with gamma 5/2. The solid gauge does not.
  std::vector<StepFunction> k{dense(2, {0, 10, -10, 0})};
  auto hull = t5_escape_witness(k, 32, EscapeGauge::Hull);
  EXPECT_EQ(hull.m, 1U);
  EXPECT_EQ(hull.n, 2U);
  EXPECT_EQ(hull.gamma, R(5, 2));
  auto solid = t5_escape_witness(k);
  EXPECT_EQ(solid.m, 10U);
  EXPECT_EQ(solid.gamma, R(1, 4));
}

TEST(Escape, GammaAtMostOneOnRandomGenerators) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    std::vector<StepFunction> k;
    for (int i = 0, c = 1 + rng() % 3; i < c; ++i) k.push_back(random_generator(rng, 12));
    auto w = t5_escape_witness(k);
    EXPECT_LE(w.gamma, 1);
    EXPECT_EQ(w.gamma, gamma_K(w.f, k));
    // nonnegative generators: both gauges agree
    std::vector<StepFunction> pos;
    for (auto& g : k) pos.push_back(g.abs());
    auto a = t5_escape_witness(pos), b = t5_escape_witness(pos, 128, EscapeGauge::Hull);
    EXPECT_EQ(a.m, b.m);
    EXPECT_EQ(a.n, b.n);
  }
}

TEST(Seminorms, GammaIsSeminorm) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 200; ++t) {
    std::vector<StepFunction> k{random_step(rng), random_step(rng)};
    auto f = random_step(rng), g = random_step(rng);
    Rational c(static_cast<long>(rng() % 11) - 5, 1 + rng() % 4);
    Rational abs_c = c < 0 ? Rational(-c) : c;
    EXPECT_EQ(gamma_K(f.scaled(c), k), abs_c * gamma_K(f, k));
    EXPECT_LE(gamma_K(f + g, k), gamma_K(f, k) + gamma_K(g, k));
  }
}

TEST(Seminorms, DominationShadows) {
  std::mt19937_64 rng(10);
  for (int t = 0; t < 300; ++t) {
    auto f = random_step(rng), g = random_step(rng);
    Rational pr = pairing(f, g);
    EXPECT_LE(pr < 0 ? Rational(-pr) : pr, (f * g).abs().integral());
    std::size_t level = rng() % 5;
    std::vector<bool> in(std::size_t{1} << level);
    for (std::size_t i = 0; i < in.size(); ++i) in[i] = rng() % 2;
    auto e = DyadicSet::from_membership(level, in);
    EXPECT_LE(rho_E(f, e), (f.abs() * e.indicator()).integral());
    EXPECT_LE(rho_E(f, e), e.measure());
  }
}

TEST(DyadicSetOps, Algebra) {
  auto a = DyadicSet::from_membership(2, {true, true, false, false});
  auto b = DyadicSet::from_membership(2, {false, true, true, false});
  EXPECT_EQ((a | b).measure(), R(3, 4));
  EXPECT_EQ((a & b).measure(), R(1, 4));
  EXPECT_EQ((a - b).measure(), R(1, 4));
  EXPECT_EQ((a ^ b).measure(), R(1, 2));
  EXPECT_THROW(DyadicSet::from_indicator(StepFunction(2)), std::invalid_argument);
}

TEST(RootRationalTest, Arithmetic) {
  EXPECT_TRUE(RootRational(R(4), 2).is_rational());
  EXPECT_EQ(RootRational(R(4), 2), RootRational(R(2)));
  EXPECT_EQ(RootRational(R(9, 4), 2).to_string(), "3/2");
  EXPECT_EQ(RootRational(R(64), 6), RootRational(R(2)));
  EXPECT_EQ(RootRational(R(2), 2).to_string(), "(2)^(1/2)");
  EXPECT_LT(RootRational(R(2), 2), RootRational(R(3, 2)));
  EXPECT_LT(RootRational(R(2), 2) * RootRational(R(1)), RootRational(R(3), 3));
  EXPECT_EQ(RootRational(R(2), 2) * RootRational(R(2), 2), RootRational(R(2)));
  EXPECT_EQ(RootRational(R(8), 3).pow(2), RootRational(R(4)));
  EXPECT_THROW(RootRational(R(-1), 2), std::domain_error);
  EXPECT_EQ(exact_root(R(27, 8), 3), R(3, 2));
  EXPECT_FALSE(exact_root(R(2), 2).has_value());
  EXPECT_NEAR(static_cast<double>(RootRational(R(2), 2).approx()), 1.41421356237, 1e-10);
}

TEST(PowerCoefficients, ProductsAndNorms) {
  PowerCoefficientFunction a(2), b(3);
  a.add_piece(1, 0, R(2));  // sqrt 2 on [0,1/2)
  b.add_piece(2, 1, R(2));  // cbrt 2 on [1/4,1/2)
  EXPECT_THROW(a.add_piece(2, 0, R(1)), std::invalid_argument);
  auto ab = a * b;
  EXPECT_EQ(ab.power(), 6U);
  ASSERT_EQ(ab.pieces().size(), 1U);
  EXPECT_EQ(ab.pieces()[0].level, 2U);
  EXPECT_EQ(ab.pieces()[0].powered, R(8 * 4));
  EXPECT_EQ(a.norm_power(2), RootRational(R(1)));
  EXPECT_EQ(a.norm_power(1), RootRational(R(1, 2), 2));  // sqrt(2) * 1/2
}

TEST(Separation, SigmaPQ) {
  auto c = sigma_pq_separation(1, 2, R(3, 2), 50, R(1, 10));
  EXPECT_TRUE(c.pass);
  EXPECT_TRUE(c.evidence["all_equal_one"]);
  EXPECT_EQ(c.evidence["first_index"], 6);
  for (const auto& v : c.evidence["e_n_g_q_norm_power"]) EXPECT_EQ(v, "1");
  EXPECT_THROW(sigma_pq_separation(1, 2, R(3), 10, R(1, 10)), ParameterOutOfRange);
  EXPECT_THROW(sigma_pq_separation(1, 2, R(1), 10, R(1, 10)), ParameterOutOfRange);
  EXPECT_THROW(sigma_pq_separation(2, 2, R(3, 2), 10, R(1, 10)), ParameterOutOfRange);
  EXPECT_TRUE(sigma_pq_separation(2, 5, R(9, 4), 20, R(1, 3)).pass);
  // epsilon too small for the search range: the certificate reports failure
  EXPECT_FALSE(sigma_pq_separation(1, 2, R(3, 2), 5, R(1, 1000), 10).pass);
}

TEST(Separation, SigmaPQIndexMatchesFloatingOracle) {
  // independent check: n^(3/4) / (n (n+1)) < 1/10 first at n = 6
  std::size_t first = 0;
  for (std::size_t n = 1; n < 100 && !first; ++n)
    if (std::pow(static_cast<double>(n), 0.75) / (n * (n + 1.0)) < 0.1) first = n;
  EXPECT_EQ(first, 6U);
}

TEST(Separation, TauMuSigma1) {
  EXPECT_EQ(tau_mu_pairing(4), RootRational(R(2)));
  EXPECT_EQ(tau_mu_pairing(9), RootRational(R(3)));
  EXPECT_EQ(tau_mu_pairing(2).to_string(), "(2)^(1/2)");
  auto c = tau_mu_sigma1_separation(12);
  EXPECT_TRUE(c.pass);
  EXPECT_EQ(c.evidence["pairing"][3], "2");
  EXPECT_EQ(c.evidence["pairing"][8], "3");
  EXPECT_EQ(c.evidence["rho_whole"][2], "1/8");
  EXPECT_THROW(tau_mu_sigma1_separation(1), ParameterOutOfRange);
}

TEST(Holder, Examples) {
  auto s = holder_e4_sides(StepFunction(1), StepFunction(1), 1, 2);
  EXPECT_DOUBLE_EQ(static_cast<double>(s.left), 1.0);
  EXPECT_DOUBLE_EQ(static_cast<double>(s.right), 1.0);
  EXPECT_TRUE(holder_e4_check(StepFunction(), dense(1, {3, 1}), 2, 3));
  EXPECT_THROW(holder_e4_check(StepFunction(-1), StepFunction(1), 1, 2), std::invalid_argument);
  EXPECT_THROW(holder_e4_check(StepFunction(1), StepFunction(1), 2, 2), ParameterOutOfRange);
}

TEST(Holder, RandomPairs) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 1000; ++t) {
    auto f = random_step(rng).abs(), g = random_step(rng).abs();
    unsigned p = 1 + rng() % 3, q = p + 1 + rng() % 3;
    EXPECT_TRUE(holder_e4_check(f, g, p, q)) << f.to_text() << " " << g.to_text();
  }
}

TEST(AeSubsequence, Examples) {
  std::vector<StepFunction> seq;
  for (std::size_t j = 0; j < 8; ++j) seq.push_back(StepFunction::interval(j, 0));
  auto r = measure_ae_subsequence(seq, StepFunction());
  EXPECT_EQ(r.indices, (std::vector<std::size_t>{1, 2, 3, 4, 5, 6, 7}));
  EXPECT_EQ(r.rho.front(), R(1, 2));
  EXPECT_EQ(r.exceptional_measure_bound, Rational(3, 16));  // k from 8: 2^-4 + 2 * 2^-5 + 2 * 2^-6 ...

  std::vector<StepFunction> constant(5, dense(1, {1, 2}));
  r = measure_ae_subsequence(constant, dense(1, {1, 2}));
  EXPECT_EQ(r.indices, (std::vector<std::size_t>{0, 1, 2, 3, 4}));

  std::vector<StepFunction> alternating;
  for (int j = 0; j < 6; ++j) alternating.push_back(StepFunction::interval(1, j % 2));
  EXPECT_THROW(measure_ae_subsequence(alternating, StepFunction()), NotConvergentInMeasure);
  EXPECT_TRUE(measure_ae_subsequence({}, StepFunction()).indices.empty());
}

TEST(AeSubsequence, BoundFormula) {
  // sum over k > K of 2^-ceil(k/2), against a long partial sum
  for (std::size_t kk = 0; kk < 6; ++kk) {
    std::vector<StepFunction> seq(kk, StepFunction());
    auto r = measure_ae_subsequence(seq, StepFunction());
    Rational partial = 0;
    for (std::size_t k = kk + 1; k < kk + 200; ++k)
      partial += Rational(1, Integer(1) << ((k + 1) / 2));
    EXPECT_LT(r.exceptional_measure_bound - partial, Rational(1, Integer(1) << 90));
    EXPECT_GE(r.exceptional_measure_bound, partial);
  }
}
