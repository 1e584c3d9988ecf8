#include <gtest/gtest.h>

#include "panmagic/decomp.hpp"
#include "panmagic/gallery.hpp"

using namespace panmagic;

namespace {

std::set<int> column_support(const SquareMatrix& a, int j) {
  std::set<int> rows;
  for (int i = 0; i < a.order(); ++i)
    if (a(i, j) != 0)
      rows.insert(i);
  return rows;
}

} // namespace

TEST(Fixtures, AllPanstochastic) {
  for (const auto& name : fixture_names())
    EXPECT_TRUE(check_panstochastic(fixture(name))) << name;
  EXPECT_THROW(fixture("nope"), Error);
}

TEST(Fixtures, PermTwoXMatchesAffineMap) { EXPECT_EQ(fixture("perm2x_5"), perm_matrix(affine_perm({2, 0}, 5))); }

TEST(Fixtures, TwentyFiveColumnZeroSupport) {
  // Column 0 of the 25 x 25 matrix is positive at rows 2 and 17.
  EXPECT_EQ(column_support(fixture("thm12_25"), 0), (std::set<int>{2, 17}));
  const SquareMatrix a = fixture("thm12_25");
  for (const auto& [i, j] : support(a))
    EXPECT_EQ(a(i, j), make_scalar(1, 2));
}

TEST(Uniform, Basics) {
  EXPECT_TRUE(check_panstochastic(uniform(6)));
  EXPECT_EQ(uniform(5), fixture("uniform5"));
  EXPECT_THROW(uniform(0), Error);
}

TEST(Lemma41Matrix, Panstochastic) {
  for (int n : {7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 49})
    EXPECT_TRUE(check_panstochastic(lemma41_matrix(n))) << n;
  EXPECT_THROW(lemma41_matrix(5), Error);
  EXPECT_THROW(lemma41_matrix(9), Error);
  EXPECT_THROW(lemma41_matrix(25), Error);
}

TEST(Lemma41Matrix, ElevenColumnZeroSupport) {
  EXPECT_EQ(column_support(lemma41_matrix(11), 0), (std::set<int>{2, 7}));
}

TEST(Lemma41Matrix, SevenFixtureMatchesGeneralShape) {
  // Column 0 of the 7 x 7 matrix holds rows 1 and 2, as for 2x+1 and 2x-4.
  EXPECT_EQ(column_support(lemma41_matrix(7), 0), (std::set<int>{1, 2}));
}

TEST(Lemma41Matrix, EntryTwoZeroUncoverable) {
  for (int n : {11, 13, 17}) {
    const SquareMatrix a = lemma41_matrix(n);
    EXPECT_GT(a(2, 0), 0);
    EXPECT_FALSE(find_covering_perm(a, 2, 0).witness) << n;
  }
}

TEST(Lemma41Matrix, ThirteenIsCertified) { EXPECT_TRUE(non_decomp_certificate(lemma41_matrix(13))); }

TEST(Lift, Examples) {
  const SquareMatrix l = lift(fixture("uniform5"), 7);
  EXPECT_EQ(l.order(), 35);
  EXPECT_TRUE(check_panstochastic(l));
  EXPECT_EQ(lift(fixture("magic60"), 1), fixture("magic60"));
  EXPECT_THROW(lift(fixture("uniform5"), 9), Error);
}

TEST(Lift, PreservesCertificates) {
  const SquareMatrix l = lift(lemma41_matrix(7), 5);
  EXPECT_TRUE(check_panstochastic(l));
  EXPECT_TRUE(non_decomp_certificate(l));
}

TEST(Counterexample, Dispatch) {
  EXPECT_EQ(build_counterexample(2).kind, CounterexampleKind::Uniform);
  EXPECT_EQ(build_counterexample(9).kind, CounterexampleKind::Uniform);
  EXPECT_EQ(build_counterexample(7).kind, CounterexampleKind::Direct);
  EXPECT_EQ(build_counterexample(49).kind, CounterexampleKind::Direct);
  const Counterexample c25 = build_counterexample(25);
  EXPECT_EQ(c25.kind, CounterexampleKind::Lifted25);
  EXPECT_EQ(c25.factor, 1);
  EXPECT_EQ(c25.matrix, fixture("thm12_25"));
  const Counterexample c35 = build_counterexample(35);
  EXPECT_EQ(c35.kind, CounterexampleKind::Lifted5);
  EXPECT_EQ(c35.base, 7);
  EXPECT_EQ(c35.factor, 5);
  EXPECT_EQ(c35.matrix.order(), 35);
  EXPECT_THROW(build_counterexample(5), Error);
  EXPECT_THROW(build_counterexample(1), Error);
}

TEST(Counterexample, OrderAndPanstochastic) {
  for (int n = 2; n <= 30; ++n) {
    if (n == 5)
      continue;
    const SquareMatrix m = counterexample(n);
    EXPECT_EQ(m.order(), n);
    EXPECT_TRUE(check_panstochastic(m)) << n;
  }
}

TEST(TwentyFive, TraceOfForcedChain) {
  const CoverResult r = find_covering_perm(fixture("thm12_25"), 2, 0, true);
  EXPECT_FALSE(r.witness);
  ASSERT_GE(r.trace.size(), 5u);
  using K = SearchEvent::Kind;
  EXPECT_EQ(r.trace[0].kind, K::Fixed);
  EXPECT_EQ(r.trace[0].column, 0);
  EXPECT_EQ(r.trace[0].row, 2);
  const std::pair<int, int> chain[] = {{13, 18}, {8, 17}, {21, 4}};
  for (int k = 0; k < 3; ++k) {
    EXPECT_EQ(r.trace[k + 1].kind, K::Forced);
    EXPECT_EQ(r.trace[k + 1].column, chain[k].first);
    EXPECT_EQ(r.trace[k + 1].row, chain[k].second);
  }
  EXPECT_EQ(r.trace[4].kind, K::Conflict);
  EXPECT_EQ(r.trace[4].detail, "up-diagonal 0 already taken by column 8");
  EXPECT_EQ(r.nodes, 1u);
}
