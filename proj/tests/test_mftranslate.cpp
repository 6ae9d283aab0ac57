#include "mfhess/mftranslate.hpp"

#include <gtest/gtest.h>

using namespace mfhess;

namespace {

struct Fixture
{
  LieAlgebra L;
  GradientContext ctx;
  InvariantFamily inv;
  PrincipalTriple t;
  Vec y;
  ShiftFamily F;
  explicit Fixture(const std::string &label, std::uint64_t seed = 7)
      : L(chevalley_algebra(build_root_system(cartan_from_label(label)))), ctx(L), inv(invariant_generators(ctx)),
        t(principal_triple(L)), y(choose_regular_y(L, seed)), F(shift_family(L, inv, y))
  {
  }
};

// Rank of a polynomial list through its values at many points.
std::size_t evaluation_rank(const std::vector<Polynomial> &polys, std::size_t nvars, std::size_t points)
{
  Rng rng(99);
  std::vector<Vec> rows;
  for (std::size_t s = 0; s < points; ++s) {
    Vec x = rng.vec(nvars, 5, 3);
    Vec row;
    for (const auto &p : polys)
      row.push_back(p.evaluate(x));
    rows.push_back(row);
  }
  return rank_of(rows);
}

std::size_t roots_of_height(const RootSystem &rs, int height)
{
  std::size_t n = 0;
  for (const auto &r : rs.positive_roots) {
    int s = 0;
    for (int c : r)
      s += c;
    if (s == height)
      ++n;
  }
  return n;
}

std::vector<Vec> basis_of(const LieAlgebra &L, const std::vector<std::size_t> &idx)
{
  std::vector<Vec> out;
  for (auto a : idx)
    out.push_back(L.basis_vector(a));
  return out;
}

const char *kLabels[] = {"A1", "A2", "B2", "A1xA1", "A3"};

} // namespace

TEST(Translate, RegularDirectionIsDeterministicAndRegular)
{
  for (const auto *label : kLabels) {
    Fixture F(label);
    EXPECT_EQ(choose_regular_y(F.L, 7), F.y);
    EXPECT_TRUE(is_regular_in_cartan(F.L, F.y)) << label;
    EXPECT_TRUE(F.L.is_regular(F.y)) << label;
  }
}

TEST(Translate, NonRegularDirectionRejected)
{
  Fixture F("A2");
  // alpha_1(h_1 + 2 h_2) = 0
  Vec y0 = F.L.cartan_element(Vec{1, 2});
  EXPECT_FALSE(is_regular_in_cartan(F.L, y0));
  EXPECT_THROW(shift_family(F.L, F.inv, y0), DependentFamily);
  EXPECT_FALSE(is_regular_in_cartan(F.L, F.t.f));
}

TEST(Translate, FamilyHasBorelDimension)
{
  for (const auto *label : kLabels) {
    Fixture F(label);
    const std::size_t b = (F.L.dim() + F.L.rank()) / 2;
    EXPECT_EQ(F.F.size(), b) << label;
    EXPECT_EQ(evaluation_rank(F.F.q, F.L.dim(), 2 * b + 4), b) << label;
    EXPECT_EQ(F.F.index_I.size(), F.L.rank());
    EXPECT_EQ(F.F.index_I.size() + F.F.index_N.size(), b);
  }
}

TEST(Translate, GradedDimensionsMatchLayers)
{
  for (const auto *label : kLabels) {
    Fixture F(label);
    auto dims = graded_dimensions(F.F);
    auto ranks = graded_ranks(F.F);
    ASSERT_EQ(static_cast<int>(dims.size()), F.L.roots().coxeter_number) << label;
    for (std::size_t m = 1; m <= dims.size(); ++m) {
      std::size_t expected = m == 1 ? F.L.rank() : roots_of_height(F.L.roots(), static_cast<int>(m) - 1);
      EXPECT_EQ(static_cast<std::size_t>(dims[m - 1]), expected) << label << " m=" << m;
      EXPECT_EQ(static_cast<std::size_t>(ranks[m - 1]), expected) << label << " m=" << m;
    }
  }
}

TEST(Translate, OrderingIsByDegreeThenInvariant)
{
  Fixture F("A3");
  for (std::size_t i = 0; i + 1 < F.F.size(); ++i) {
    const auto &a = F.F.members[i], &b = F.F.members[i + 1];
    EXPECT_TRUE(a.m < b.m || (a.m == b.m && a.j < b.j));
  }
  for (std::size_t i = 0; i < F.F.size(); ++i)
    EXPECT_EQ(F.F.q[i].degree(), F.F.members[i].m);
}

TEST(Translate, ShiftExpansionOracle)
{
  // I(x + s y) = sum_k s^k I_{y,k}(x) checked at sample points.
  Fixture F("B2");
  Rng rng(3);
  for (int trial = 0; trial < 4; ++trial) {
    Vec x = rng.vec(F.L.dim(), 4, 2);
    Rational s = rng.rational(5, 3);
    for (std::size_t j = 0; j < F.inv.generators.size(); ++j) {
      Rational lhs = F.inv.generators[j].evaluate(x + s * F.y);
      Rational rhs = 0, power = 1;
      for (int k = 0; k <= F.inv.degrees[j]; ++k) {
        rhs += power * shift_raw(F.inv.generators[j], F.y, k).evaluate(x);
        power *= s;
      }
      EXPECT_EQ(lhs, rhs);
    }
  }
}

TEST(Translate, FamilyPairwiseCommutes)
{
  for (const auto *label : kLabels) {
    Fixture F(label);
    auto r = pairwise_commute(F.ctx, F.F);
    EXPECT_TRUE(r.all_zero) << label;
    EXPECT_EQ(r.pairs_checked, F.F.size() * (F.F.size() - 1) / 2);
  }
}

TEST(Translate, PointwiseBracketOracle)
{
  // (x, [dp(x), dq(x)]) vanishes at random points.
  Fixture F("A2");
  Rng rng(11);
  for (int trial = 0; trial < 3; ++trial) {
    Vec x = rng.vec(F.L.dim(), 4, 3);
    for (std::size_t i = 0; i < F.F.size(); ++i)
      for (std::size_t j = i + 1; j < F.F.size(); ++j) {
        Vec br = F.L.bracket(F.ctx.gradient(F.F.q[i], x), F.ctx.gradient(F.F.q[j], x));
        EXPECT_EQ(F.L.killing(x, br), 0);
      }
  }
}

TEST(Translate, CommutationDetectsNonInvolutiveFamily)
{
  Fixture F("A2");
  ShiftFamily bad = F.F;
  bad.q.push_back(F.ctx.linear_function(F.L.basis_vector(0)));
  bad.q.push_back(F.ctx.linear_function(F.L.basis_vector(F.L.neg_index(0))));
  auto r = pairwise_commute(F.ctx, bad);
  EXPECT_FALSE(r.all_zero);
  ASSERT_TRUE(r.witness_pair.has_value());
  EXPECT_FALSE(r.witness_bracket.is_zero());
}

TEST(Translate, ZetaChainAtPrincipalNilpotent)
{
  for (const auto *label : kLabels) {
    Fixture F(label);
    const int h = F.L.roots().coxeter_number;
    for (const Vec *x0 : {&F.t.e, &F.t.e1})
      for (const auto &I : F.inv.generators) {
        auto zc = zeta_chain(F.ctx, *x0, F.y, I, h);
        EXPECT_TRUE(zc.y_centralizes_v0) << label;
        EXPECT_TRUE(zc.e_kills_last) << label;
        EXPECT_TRUE(zc.chain_relation) << label;
        EXPECT_TRUE(zc.layers_respected) << label;
        // Independent reconstruction: dI(x0 + s y) from the chain.
        Rational s = 3;
        Vec expected = zero_vec(F.L.dim());
        Rational power = 1;
        for (int j = 0; j < zc.degree; ++j) {
          expected = expected + power * zc.v[static_cast<std::size_t>(zc.degree - 1 - j)];
          power *= s;
        }
        EXPECT_EQ(F.ctx.gradient(I, *x0 + s * F.y), expected);
      }
  }
}

TEST(Translate, ZetaRequiresRegularDirection)
{
  Fixture F("A2");
  Vec y0 = F.L.cartan_element(Vec{1, 2});
  EXPECT_THROW(zeta_chain(F.ctx, F.t.e, y0, F.inv.generators[0], 3), NotInvertible);
}

TEST(Translate, GradientSpanAtNilpotentIsBorel)
{
  for (const auto *label : kLabels) {
    Fixture F(label);
    auto borel = basis_of(F.L, F.L.borel_indices());
    for (const Vec *x0 : {&F.t.e, &F.t.e1}) {
      auto span = gradient_span(F.ctx, F.F.q, *x0);
      EXPECT_EQ(span.size(), borel.size()) << label;
      EXPECT_TRUE(same_span(span, borel)) << label;
      EXPECT_TRUE(is_strongly_regular(F.ctx, F.F, *x0)) << label;
    }
  }
}

TEST(Translate, ShiftByFAtSemisimpleGivesNegativeBorel)
{
  for (const auto *label : kLabels) {
    Fixture F(label);
    auto space = shifted_space(F.inv, F.t.f);
    auto span = gradient_span(F.ctx, space, F.t.w);
    auto target = basis_of(F.L, F.L.negative_borel_indices());
    EXPECT_TRUE(same_span(span, target)) << label;
  }
}

TEST(Translate, ZeroIsNotStronglyRegular)
{
  Fixture F("B2");
  EXPECT_FALSE(is_strongly_regular(F.ctx, F.F, zero_vec(F.L.dim())));
  auto v = phi(F.F, zero_vec(F.L.dim()));
  for (const auto &c : v)
    EXPECT_EQ(c, 0);
}

TEST(Translate, MembershipSearch)
{
  for (const auto *label : {"A2", "B2"}) {
    Fixture F(label);
    const std::size_t b = (F.L.dim() + F.L.rank()) / 2;
    auto rf = mv_membership(F.ctx, F.inv, F.t.f, {F.t.w}, 0, 1);
    EXPECT_TRUE(rf.certified) << label;
    EXPECT_EQ(rf.best_dimension, b);
    ASSERT_TRUE(rf.witness.has_value());
    EXPECT_EQ(*rf.witness, F.t.w);

    auto ry = mv_membership(F.ctx, F.inv, F.y, {}, 20, 1);
    EXPECT_TRUE(ry.certified) << label;

    auto r0 = mv_membership(F.ctx, F.inv, zero_vec(F.L.dim()), {}, 5, 1, true);
    EXPECT_FALSE(r0.certified);
    EXPECT_EQ(r0.samples_tried, 5u);
    EXPECT_LE(r0.best_dimension, F.L.rank());
  }
}
