#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "ksetlab/harness.hpp"

using namespace ksetlab;

namespace {

Rational q(std::int64_t p, std::int64_t d = 1) { return make_rational(p, d); }

}  // namespace

TEST(Thresholds, BEq1Examples) {
  EXPECT_EQ(b_eq1(1, 9), 1);
  EXPECT_EQ(b_eq1(3, 9), 2);
  EXPECT_EQ(b_eq1(5, 12), 4);
  EXPECT_THROW(b_eq1(4, 9), UndefinedWindow);
}

TEST(Thresholds, BinomialThresholdBrackets) {
  for (std::int64_t num = 1; num <= 200; ++num)
    for (std::int64_t den = 1; den <= 7; ++den) {
      const Rational x = q(num, den);
      const std::int64_t b = binomial_threshold(x);
      EXPECT_LT(Rational(binom(b + 1, 2)), x);
      EXPECT_LE(x, Rational(binom(b + 2, 2)));
    }
}

TEST(Bqr, Examples) {
  EXPECT_EQ(bqr(3, 10), (BqrDecomposition{3, 10, 2, 0, 1}));
  EXPECT_EQ(bqr(1, 4), (BqrDecomposition{1, 4, 2, 0, 1}));
  EXPECT_EQ(bqr(2, 5), (BqrDecomposition{2, 5, 1, 1, 1}));
}

TEST(Bqr, ReconstructsAndStaysInRange) {
  for (std::int64_t i = 1; i <= 30; ++i)
    for (std::int64_t j = i; j <= 200; ++j) {
      const auto d = bqr(i, j);
      EXPECT_EQ(i * binom(d.b + 1, 2) + d.q * (d.b + 1) + d.r, j);
      EXPECT_GE(d.q, 0);
      EXPECT_LT(d.q, i);
      EXPECT_GE(d.r, 1);
      EXPECT_LE(d.r, d.b + 1);
    }
  EXPECT_THROW(bqr(3, 2), DomainError);
  EXPECT_THROW(bqr(0, 2), DomainError);
}

TEST(YBound, Examples) {
  EXPECT_EQ(y_bound(1, 9), q(8, 3));
  EXPECT_EQ(y_bound(3, 9), q(53, 3));
  EXPECT_EQ(y_bound(5, 12), q(143, 3));
  EXPECT_THROW(y_bound(4, 9), UndefinedWindow);
  EXPECT_THROW(y_bound(1, 10), DomainError);
}

TEST(YBound, MonotoneInK) {
  for (std::int64_t n = 6; n <= 90; n += 3)
    for (std::int64_t k = 2; 2 * k + 1 < n; ++k) EXPECT_LT(y_bound(k - 1, n), y_bound(k, n)) << n << " " << k;
}

TEST(YBound, AtLeastHeterogeneousBelowThird) {
  // For k <= n/3 only the first term survives and Y = het - 1/3.
  for (std::int64_t n = 6; n <= 60; n += 3)
    for (std::int64_t k = 1; 3 * k <= n && 2 * k + 1 < n; ++k) EXPECT_EQ(y_bound(k, n), het_exact(k, n) - q(1, 3));
}

TEST(HetExact, Examples) {
  EXPECT_EQ(het_exact(2, 9), 9);
  EXPECT_EQ(het_exact(4, 12), 30);
  EXPECT_EQ(het_exact(5, 12), 42);
}

TEST(HetExact, TopLevelCountsEveryHeterogeneousPair) {
  // Even n leaves out the n/2 heterogeneous swaps at the halving position.
  for (std::int64_t n = 3; n <= 60; n += 3) {
    const std::int64_t all = 3 * (n / 3) * (n / 3);
    EXPECT_EQ(het_exact((n - 1) / 2, n), n % 2 == 1 ? all : all - n / 2) << n;
  }
}

TEST(Dkn, Examples) {
  EXPECT_EQ(build_dkn(5, 12).edge_count(), 4u);
  EXPECT_EQ(build_dkn(6, 15).edge_count(), 8u);
  const auto e = e_kn(5, 12);
  EXPECT_EQ(e.total, 4);
  EXPECT_EQ(e.decomposition, (BqrDecomposition{1, 4, 2, 0, 1}));
  EXPECT_EQ(e.a, 2);
  EXPECT_EQ(e.b, 0);
  EXPECT_EQ(e.c, 2);
  const auto f = e_kn(6, 15);
  EXPECT_EQ(f.total, 8);
  EXPECT_EQ(f.decomposition, (BqrDecomposition{2, 5, 1, 1, 1}));
}

TEST(Dkn, RangeChecks) {
  EXPECT_THROW(build_dkn(3, 9), DomainError);
  EXPECT_THROW(e_kn(2, 12), DomainError);
  EXPECT_EQ(e_kn(4, 9).total, 0);
  EXPECT_EQ(build_dkn(4, 9).edge_count(), 0u);
}

TEST(Dkn, EdgeCountMatchesClosedForm) {
  for (std::int64_t n = 6; n <= 120; n += 3)
    for (std::int64_t k = n / 3 + 1; 2 * k < n; ++k) {
      const auto g = build_dkn(k, n);
      EXPECT_EQ(static_cast<std::int64_t>(g.edge_count()), e_kn(k, n).total) << n << " " << k;
      EXPECT_TRUE(satisfies_degree_bounds(g, static_cast<std::size_t>(n - 2 * k - 1)));
    }
}

TEST(Dkn, IndegreeFormulaSumsToEdgeCount) {
  for (std::int64_t n = 6; n <= 120; n += 3)
    for (std::int64_t k = n / 3 + 1; 2 * k + 1 < n; ++k) {
      const std::int64_t m = n - 2 * k - 1, s = n / 3;
      std::vector<std::int64_t> formula;
      for (std::int64_t i = 1; i <= s; ++i) formula.push_back(dkn_indegree_formula(i, m));
      std::int64_t sum = 0;
      for (auto v : formula) sum += v;
      EXPECT_EQ(sum, e_kn(k, n).total) << n << " " << k;
      const auto g = build_dkn(k, n);
      std::vector<std::int64_t> greedy(g.indegrees().begin(), g.indegrees().end());
      std::sort(formula.begin(), formula.end());
      std::sort(greedy.begin(), greedy.end());
      EXPECT_EQ(formula, greedy) << n << " " << k;
    }
}

TEST(Dkn, LiteralSenderBoundDoesNotHold) {
  // Indegree at most s - j (the literal reading) fails on the extremal graph
  // itself; the lower-index reading j - 1 holds.
  const auto g = build_dkn(6, 15);
  EXPECT_TRUE(satisfies_degree_bounds(g, 2, SenderConvention::lower_indices));
  EXPECT_FALSE(satisfies_degree_bounds(g, 2, SenderConvention::literal));
}

TEST(Dkn, DegreeBoundsRejectOverfullVertex) {
  ValidSwapDigraph g(DigraphKind::synthetic, 4);
  g.add_edge(0, 3);
  g.add_edge(1, 3);
  g.add_edge(2, 3);
  EXPECT_TRUE(satisfies_degree_bounds(g, 3));
  EXPECT_FALSE(satisfies_degree_bounds(g, 2));
}

TEST(HomLower, Examples) {
  EXPECT_THROW(hom_lower(4, 9), UndefinedWindow);
  EXPECT_EQ(hom_lower(3, 9), 0);
  EXPECT_EQ(hom_lower(5, 12), q(143, 3) - 42);
  EXPECT_EQ(l_bound(5, 12) - het_exact(5, 12), 3 * (binom(4, 2) - e_kn(5, 12).total));
}

TEST(LBound, Examples) {
  EXPECT_EQ(l_bound(5, 12), 48);
  EXPECT_EQ(l_bound(5, 12) - y_bound(5, 12), q(1, 3));
  EXPECT_EQ(l_bound(2, 9), 9);
  EXPECT_EQ(l_bound(6, 15), 66);
  EXPECT_THROW(l_bound(4, 9), UndefinedWindow);
}

TEST(LBound, NeverBelowY) {
  for (std::int64_t n = 3; n <= 300; n += 3)
    for (std::int64_t k = 1; 2 * k + 1 < n; ++k) EXPECT_GE(l_bound(k, n), y_bound(k, n)) << n << " " << k;
}

TEST(SlackQuartic, Examples) {
  EXPECT_EQ(claim1_f(0, 1), 0);
  EXPECT_EQ(claim1_f(1, 1), 0);
  // at b = 1 the numerator is 12(r-1)^2
  EXPECT_EQ(claim1_f(1, 2), q(3, 4));
  EXPECT_EQ(claim1_f(Rational(1), Rational(3)), 3);
  EXPECT_THROW(claim1_f(std::int64_t{2}, std::int64_t{4}), DomainError);
}

TEST(SlackQuartic, ContinuousMinimum) {
  for (std::int64_t b = 0; b <= 200; ++b) {
    const Rational rb(b);
    const Rational r0 = (rb + 1) / 2;
    EXPECT_EQ(claim1_f(rb, r0), claim1_f_minimum(rb)) << b;
    // f is a parabola in r with its vertex at r0
    EXPECT_GE(claim1_f(rb, r0 + q(1, 7)), claim1_f(rb, r0));
    EXPECT_GE(claim1_f(rb, r0 - q(1, 7)), claim1_f(rb, r0));
  }
}

TEST(SlackQuartic, IdentityWithUnclampedY) {
  // L - Y - 1/3 = f(b, r) with (b, q, r) = bqr(m, s) when Y keeps the
  // unclamped binomials.
  for (std::int64_t n = 6; n <= 150; n += 3)
    for (std::int64_t k = n / 3 + 1; 2 * k + 1 < n; ++k) {
      const auto d = bqr(n - 2 * k - 1, n / 3);
      const Rational lhs = l_bound(k, n) - y_bound_unclamped(k, n) - q(1, 3);
      EXPECT_EQ(lhs, claim1_f(d.b, d.r)) << n << " " << k;
    }
}

TEST(NleLower, Examples) {
  EXPECT_EQ(nle_lower(3, 9), 18);
  EXPECT_EQ(nle_lower(1, 9), 3);
  EXPECT_EQ(nle_lower(5, 12), 48);
  EXPECT_EQ(nle_lower(4, 9), 36);
}

TEST(CrLower, SmallValuesAndBand) {
  EXPECT_EQ(cr_lower(3), 0);
  // n = 6: k = 1, 2 with windows 3, 1.
  EXPECT_EQ(cr_lower(6), 3 * nle_lower(1, 6) + 1 * nle_lower(2, 6));
  const double coef = cr_coefficient();
  double previous = 1e9;
  for (std::int64_t n = 30; n <= 300; n += 30) {
    const double ratio = to_double(Rational(cr_lower(n), binom(n, 4)));
    const double err = std::abs(ratio - coef);
    EXPECT_LE(err * static_cast<double>(n), 3.0) << n;
    EXPECT_LT(err, previous);
    previous = err;
  }
}

TEST(Coefficient, Value) {
  EXPECT_EQ(decimal(cr_coefficient(), 6), "0.380029");
  EXPECT_NEAR(cr_coefficient(), cr_coefficient_exact().convert_to<double>(), 1e-12);
  EXPECT_LT(abs(cr_coefficient_sum() - cr_coefficient_exact()), HighPrecision("1e-45"));
  EXPECT_GT(gap_closure(0.380029), 0.40);
}

TEST(SeriesIntegrals, Report) {
  const auto rep = series_and_integral_checks();
  EXPECT_LT(rep.series_error, 1e-9);
  ASSERT_EQ(rep.integrals.size(), 13u);
  for (const auto& c : rep.integrals) EXPECT_LT(c.error, 1e-12) << c.name;
  EXPECT_EQ(rep.integrals[0].exact, q(1, 96));
  EXPECT_EQ(rep.integrals[1].exact, q(1, 7776));
  EXPECT_EQ(rep.integrals[2].exact, q(1, 486 * 16 * 81));
  EXPECT_EQ(rep.normalized_first, q(3, 8));
  EXPECT_EQ(rep.normalized_second, q(1, 216));
  EXPECT_NEAR(rep.assembled_coefficient, cr_coefficient(), 1e-9);
}

TEST(SeriesIntegrals, WindowClosedForm) {
  EXPECT_EQ(window_integral(q(1, 2) - q(1, 18)), q(1, 6 * 18 * 18 * 18 * 18));
  EXPECT_EQ(window_integral(0), q(1, 96));
  EXPECT_EQ(window_integral(q(1, 3)), q(1, 7776));
}

TEST(Rationals, BinomialsAndCodec) {
  EXPECT_EQ(binom2(q(5, 2)), q(15, 8));
  EXPECT_EQ(binom2(q(3, 2)), 0);
  EXPECT_EQ(binom2_unclamped(q(3, 2)), q(3, 8));
  EXPECT_EQ(binom(3, 5), 0);
  EXPECT_EQ(to_fraction_string(q(-6, 4)), "-3/2");
  EXPECT_EQ(to_fraction_string(q(4)), "4/1");
  EXPECT_EQ(parse_rational("-3/2"), q(-3, 2));
  EXPECT_EQ(parse_rational("+7"), q(7));
  EXPECT_EQ(parse_rational("10/4"), q(5, 2));
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("1.5"), ParseError);
  EXPECT_THROW(parse_rational(""), ParseError);
  EXPECT_EQ(ksetlab::ceil(q(143, 3)), 48);
  EXPECT_EQ(ksetlab::ceil(q(-1, 3)), 0);
}
