#include "mfhess/invariants.hpp"
#include "mfhess/principal.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace mfhess;

namespace {

struct Fixture
{
  LieAlgebra L;
  GradientContext ctx;
  InvariantFamily inv;
  explicit Fixture(const std::string &label)
      : L(chevalley_algebra(build_root_system(cartan_from_label(label)))), ctx(L), inv(invariant_generators(ctx))
  {
  }
};

Vec random_vec(std::mt19937_64 &rng, std::size_t n)
{
  Vec v(n);
  for (auto &c : v)
    c = make_rational(static_cast<long>(rng() % 9) - 4, static_cast<long>(rng() % 3) + 1);
  return v;
}

std::vector<Vec> gradients(const Fixture &F, const Vec &x)
{
  std::vector<Vec> out;
  for (const auto &I : F.inv.generators)
    out.push_back(F.ctx.gradient(I, x));
  return out;
}

} // namespace

TEST(Invariants, DegreesMatchRootData)
{
  for (const auto &label : {"A1", "A2", "B2", "C2", "A1xA1", "A3"}) {
    Fixture F(label);
    EXPECT_EQ(F.inv.degrees, F.L.roots().degrees) << label;
    ASSERT_EQ(F.inv.generators.size(), F.L.rank());
    for (std::size_t j = 0; j < F.inv.generators.size(); ++j) {
      EXPECT_TRUE(F.inv.generators[j].is_homogeneous());
      EXPECT_EQ(F.inv.generators[j].degree(), F.inv.degrees[j]);
    }
  }
}

TEST(Invariants, CommuteWithEveryLinearFunction)
{
  for (const auto &label : {"A2", "B2", "A1xA1"}) {
    Fixture F(label);
    for (std::size_t a = 0; a < F.L.dim(); ++a)
      for (const auto &I : F.inv.generators)
        EXPECT_TRUE(F.ctx.poisson_bracket(F.ctx.linear_function(F.L.basis_vector(a)), I).is_zero()) << label;
  }
}

TEST(Invariants, QuadraticIsKillingForm)
{
  for (const auto &label : {"A1", "A2", "B2"}) {
    Fixture F(label);
    // (x, x) = sum_ab K_ab x_a x_b
    std::vector<Term> terms;
    for (std::size_t a = 0; a < F.L.dim(); ++a)
      for (std::size_t b = 0; b < F.L.dim(); ++b) {
        std::vector<unsigned> e(F.L.dim(), 0);
        e[a] += 1;
        e[b] += 1;
        terms.emplace_back(Monomial::from_exponents(e), F.L.killing_gram()(a, b));
      }
    auto q = Polynomial::from_terms(F.L.dim(), terms);
    EXPECT_EQ(q.primitive(), F.inv.generators[0]) << label;
  }
}

TEST(Invariants, DegreeTwoSpaceIsOneDimensionalForSimple)
{
  auto L = chevalley_algebra(build_root_system(cartan_from_label("A2")));
  GradientContext ctx(L);
  EXPECT_EQ(invariant_space(ctx, 2).size(), 1u);
  EXPECT_EQ(invariant_space(ctx, 3).size(), 1u);
}

TEST(Invariants, TraceOracleAgreesWithSolver)
{
  for (const auto &label : {"A1", "A2", "A3"}) {
    Fixture F(label);
    auto oracle = trace_oracle_type_A(F.L);
    EXPECT_TRUE(equivalent_modulo_decomposables(F.inv, oracle, F.L.dim())) << label;
    EXPECT_TRUE(trace_linear_type_A(F.L).is_zero());
  }
  Fixture B("B2");
  EXPECT_THROW(trace_oracle_type_A(B.L), UnsupportedType);
}

TEST(Invariants, GradientCriterionForRegularity)
{
  for (const auto &label : {"A2", "B2"}) {
    Fixture F(label);
    std::mt19937_64 rng(11);
    int regular = 0;
    while (regular < 10) {
      auto x = random_vec(rng, F.L.dim());
      if (!F.L.is_regular(x))
        continue;
      ++regular;
      auto g = gradients(F, x);
      EXPECT_EQ(rank_of(g), F.L.rank()) << label;
      // dI(x) lies in the centre of g^x.
      for (const auto &k : F.L.centralizer(x))
        for (const auto &d : g)
          EXPECT_TRUE(is_zero(F.L.bracket(d, k)));
    }
    EXPECT_LT(rank_of(gradients(F, zero_vec(F.L.dim()))), F.L.rank());
    // A single simple root vector is nilpotent and not regular.
    auto x = F.L.basis_vector(F.L.pos_index(0));
    EXPECT_FALSE(F.L.is_regular(x));
    EXPECT_LT(rank_of(gradients(F, x)), F.L.rank());
    auto t = principal_triple(F.L);
    EXPECT_EQ(rank_of(gradients(F, t.w)), F.L.rank());
  }
}

TEST(Invariants, InvariantsHaveZeroHamiltonian)
{
  Fixture F("A2");
  std::mt19937_64 rng(12);
  for (int k = 0; k < 5; ++k) {
    auto x = random_vec(rng, F.L.dim());
    for (const auto &I : F.inv.generators)
      EXPECT_TRUE(is_zero(F.ctx.hamiltonian_at(I, x)));
  }
}

TEST(Invariants, VandermondeSpan)
{
  for (const auto &label : {"A1", "A2", "B2"}) {
    Fixture F(label);
    auto t = principal_triple(F.L);
    const int h = F.L.roots().coxeter_number;
    Vec ts;
    for (int i = 0; i < h; ++i)
      ts.push_back(Rational(i + 1, 3));
    auto span = vandermonde_span(F.ctx, t, F.inv.generators, ts);
    EXPECT_EQ(span.size(), F.L.roots().borel_dim()) << label;
    for (const auto &v : span)
      EXPECT_TRUE(F.L.supported_on(v, F.L.negative_borel_indices()));
    auto single = vandermonde_span(F.ctx, t, F.inv.generators, Vec{Rational(0)});
    EXPECT_EQ(single.size(), F.L.rank());
    if (h > 2) {
      ts.pop_back();
      EXPECT_LT(vandermonde_span(F.ctx, t, F.inv.generators, ts).size(), F.L.roots().borel_dim());
    }
  }
}
