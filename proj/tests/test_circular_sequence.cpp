#include <gtest/gtest.h>

#include <algorithm>

#include "ksetlab/harness.hpp"
#include "oracles.hpp"

using namespace ksetlab;

namespace {

Point pt(std::int64_t x, std::int64_t y) { return {Rational(x), Rational(y)}; }

std::vector<Point> hexagon() {
  return {pt(1000, 0), pt(500, 867), pt(-499, 866), pt(-1000, 3), pt(-502, -866), pt(500, -865)};
}

std::vector<std::size_t> reversed(std::vector<std::size_t> v) {
  std::reverse(v.begin(), v.end());
  return v;
}

}  // namespace

TEST(Halfperiod, Triangle) {
  const auto h = build_halfperiod(std::vector{pt(0, 0), pt(1, 0), pt(0, 1)});
  ASSERT_EQ(h.length(), 3u);
  for (const auto& t : h.transpositions()) EXPECT_TRUE(t.position == 1 || t.position == 2);
  EXPECT_EQ(h.permutation(3), reversed(h.initial_permutation()));
}

TEST(Halfperiod, EveryPairSwapsOnce) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto s = random_point_set(10, seed);
    const auto h = build_halfperiod(s);
    EXPECT_EQ(h.length(), 45u);
    std::set<std::pair<std::size_t, std::size_t>> pairs;
    for (const auto& t : h.transpositions())
      pairs.insert({std::min(t.elements[0], t.elements[1]), std::max(t.elements[0], t.elements[1])});
    EXPECT_EQ(pairs.size(), 45u);
    EXPECT_EQ(h.permutation(h.length()), reversed(h.initial_permutation()));
  }
}

TEST(Halfperiod, InitialPermutationIsProjectionOrder) {
  const auto s = random_point_set(9, 5);
  const auto h = build_halfperiod(s);
  EXPECT_EQ(h.initial_permutation(), projection_order(s.points, h.start_direction()));
}

TEST(Halfperiod, ConvexHexagonCriticalPositions) {
  const auto h = build_halfperiod(hexagon());
  std::int64_t outer = 0;
  for (const auto& t : h.transpositions()) {
    const std::size_t i = std::min(t.position, 6 - t.position);
    EXPECT_TRUE(i >= 1 && i <= 3);
    if (t.position == 1 || t.position == 5) ++outer;
  }
  EXPECT_EQ(outer, 6);
  const auto e = kset_vector_from_halfperiod(h);
  EXPECT_EQ(e.e_le(2), 12);
  EXPECT_EQ(e, k_set_oracle(hexagon()));
}

TEST(Halfperiod, RejectsPerpendicularStart) {
  const std::vector<Point> p{pt(0, 0), pt(2, 1), pt(1, 3)};
  // (0,0)-(2,1) has normal direction (-1, 2); a start there hits a tie.
  EXPECT_THROW(build_halfperiod(p, Direction{Rational(-1), Rational(2)}), DomainError);
  EXPECT_NO_THROW(build_halfperiod(p, Direction{Rational(1), Rational(0)}));
}

TEST(Halfperiod, ParallelPairLinesAreOrdered) {
  // Unit square corners: two pairs of parallel sides flip at the same angle.
  const std::vector<Point> p{pt(0, 0), pt(3, 0), pt(3, 3), pt(0, 3)};
  ASSERT_TRUE(is_general_position(p));
  const auto h = build_halfperiod(p);
  EXPECT_EQ(h.length(), 6u);
  EXPECT_EQ(kset_vector_from_halfperiod(h), k_set_oracle(p));
}

TEST(Halfperiod, BothRotationsGiveTheSameCounts) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto s = random_point_set(9, 40 + seed);
    const Direction d = default_start_direction(s.points);
    const auto ccw = build_halfperiod(s.points, d, Rotation::counterclockwise);
    const auto cw = build_halfperiod(s.points, d, Rotation::clockwise);
    EXPECT_EQ(kset_vector_from_halfperiod(ccw), kset_vector_from_halfperiod(cw));
  }
}

TEST(Halfperiod, FromPositionsValidates) {
  // n = 3: positions 1, 2, 1 reverse (0 1 2).
  const std::vector<std::size_t> ok{1, 2, 1};
  const auto h = Halfperiod::from_positions({0, 1, 2}, ok);
  EXPECT_EQ(h.permutation(3), (std::vector<std::size_t>{2, 1, 0}));
  const std::vector<std::size_t> twice{1, 1, 2};
  EXPECT_THROW(Halfperiod::from_positions({0, 1, 2}, twice), DomainError);
  const std::vector<std::size_t> short_seq{1, 2};
  EXPECT_THROW(Halfperiod::from_positions({0, 1, 2}, short_seq), DomainError);
  EXPECT_THROW(Halfperiod::from_positions({0, 0, 2}, ok), DomainError);
}

TEST(CriticalCounts, Triangle) {
  const auto h = build_halfperiod(std::vector{pt(0, 0), pt(1, 0), pt(0, 1)});
  EXPECT_EQ(critical_counts(h, 1).le_k, 3);
  EXPECT_EQ(kset_vector_from_halfperiod(h).e_le(1), 3);
  EXPECT_THROW(critical_counts(h, 2), DomainError);
  EXPECT_THROW(critical_counts(h, 0), DomainError);
}

TEST(CriticalCounts, TopLevelCoversEverything) {
  // For odd n every position is critical at k = (n-1)/2; for even n only the
  // halving position n/2 escapes.
  for (std::size_t n = 4; n <= 11; ++n) {
    const auto h = build_halfperiod(random_point_set(n, n));
    const std::size_t k = (n - 1) / 2;
    const auto all = binom(static_cast<std::int64_t>(n), 2);
    const auto halving = n % 2 == 0 ? position_histogram(h)[n / 2 - 1] : 0;
    EXPECT_EQ(critical_counts(h, k).le_k, all - halving) << n;
  }
}

TEST(CriticalCounts, MatchesKSetPrefix) {
  const auto h = build_halfperiod(random_point_set(11, 9));
  const auto e = kset_vector_from_halfperiod(h);
  for (std::size_t k = 1; k <= 5; ++k) EXPECT_EQ(critical_counts(h, k).le_k, e.e_le(k));
}

TEST(CriticalCounts, NinePointClusterHeterogeneous) {
  const auto s = generate(9, 1);
  const auto h = build_halfperiod(s);
  const auto r = critical_counts(h, 2, *s.labels);
  EXPECT_EQ(*r.het_le_k, 9);
  EXPECT_EQ(*r.het_le_k + *r.hom_le_k, r.le_k);
}

TEST(CriticalCounts, TranspositionConservation) {
  for (std::size_t n : {6u, 9u, 12u, 15u}) {
    const auto s = generate(n, 7);
    const auto h = build_halfperiod(s);
    const auto r = critical_counts(h, 1, *s.labels);
    std::int64_t het = 0, all = 0;
    for (auto v : r.het_i_critical) het += v;
    for (auto v : r.i_critical) all += v;
    const auto sz = static_cast<std::int64_t>(n / 3);
    EXPECT_EQ(het, 3 * sz * sz);
    EXPECT_EQ(all - het, 3 * binom(sz, 2));
    EXPECT_EQ(all, binom(static_cast<std::int64_t>(n), 2));
  }
}

TEST(Correspondence, RandomTenPointSets) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto s = random_point_set(10, 1000 + seed);
    EXPECT_EQ(kset_vector_from_halfperiod(build_halfperiod(s)), k_set_oracle(s)) << seed;
  }
}

TEST(Correspondence, SmallGridsAgainstHullOracle) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto s = random_point_set(8, seed, 12);
    EXPECT_EQ(kset_vector_from_halfperiod(build_halfperiod(s)).counts(), oracle::k_sets_by_hulls(s.points)) << seed;
  }
}

TEST(BlockOrder, Detects) {
  const std::vector<Label> labels{Label::B, Label::A, Label::C, Label::A, Label::B, Label::C};
  const std::vector<std::size_t> perm{1, 3, 0, 4, 2, 5};
  const auto order = block_order(perm, labels);
  ASSERT_TRUE(order);
  EXPECT_EQ((*order)[0], Label::A);
  EXPECT_EQ((*order)[1], Label::B);
  EXPECT_EQ((*order)[2], Label::C);
  const std::vector<std::size_t> mixed{0, 1, 3, 4, 2, 5};
  EXPECT_FALSE(block_order(mixed, labels));
}

namespace {

DecomposableHalfperiod normalized(std::size_t n, std::uint64_t seed) {
  const auto s = generate(n, seed);
  auto dh = decomposable_halfperiod(s, *s.labels);
  if (!dh) throw std::logic_error("no block-form halfperiod");
  return *dh;
}

}  // namespace

TEST(ValidDigraphs, EdgesPlusCriticalEqualAllHomogeneous) {
  for (std::size_t n : {9u, 12u, 15u}) {
    const auto s = generate(n, 3);
    const auto dh = decomposable_halfperiod(s, *s.labels);
    ASSERT_TRUE(dh);
    const auto form = block_normal_form(dh->halfperiod, *s.labels);
    for (std::size_t k = n / 3 + 1; 2 * k < n; ++k) {
      const auto g = build_valid_digraphs(dh->halfperiod, *s.labels, k);
      const auto r = critical_counts(dh->halfperiod, k, form.labels);
      const auto pairs = binom(static_cast<std::int64_t>(n / 3), 2);
      EXPECT_EQ(static_cast<std::int64_t>(g.aa.edge_count()) + (*r.hom_le_k_by_class)[0], pairs);
      EXPECT_EQ(static_cast<std::int64_t>(g.bb.edge_count()) + (*r.hom_le_k_by_class)[1], pairs);
      EXPECT_EQ(static_cast<std::int64_t>(g.cc.edge_count()) + (*r.hom_le_k_by_class)[2], pairs);
    }
  }
}

TEST(ValidDigraphs, EmptyWindowHasNoEdges) {
  const auto dh = normalized(9, 2);
  const auto g = build_valid_digraphs(dh.halfperiod, *generate(9, 2).labels, 4);
  EXPECT_EQ(g.aa.edge_count() + g.bb.edge_count() + g.cc.edge_count(), 0u);
}

TEST(ValidDigraphs, DegreeInequalities) {
  for (std::size_t n : {12u, 15u, 18u}) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const auto s = generate(n, seed);
      const auto dh = decomposable_halfperiod(s, *s.labels);
      ASSERT_TRUE(dh);
      for (std::size_t k = n / 3 + 1; 2 * k < n; ++k) {
        const auto g = build_valid_digraphs(dh->halfperiod, *s.labels, k);
        const std::size_t m = n - 2 * k - 1;
        EXPECT_TRUE(satisfies_degree_bounds(g.aa, m));
        EXPECT_TRUE(satisfies_degree_bounds(g.bb, m));
        EXPECT_TRUE(satisfies_degree_bounds(g.cc, m));
      }
    }
  }
}

TEST(ValidDigraphs, NeedsLabelsAndRange) {
  const auto s = generate(9, 1);
  const auto dh = decomposable_halfperiod(s, *s.labels);
  ASSERT_TRUE(dh);
  EXPECT_THROW(build_valid_digraphs(dh->halfperiod, {}, 4), DomainError);
  EXPECT_THROW(build_valid_digraphs(dh->halfperiod, *s.labels, 3), DomainError);
}
