#include "mfhess/hessenberg.hpp"

#include <gtest/gtest.h>

using namespace mfhess;

namespace {

struct Fixture
{
  LieAlgebra L;
  GradientContext ctx;
  InvariantFamily inv;
  PrincipalTriple t;
  ShiftFamily F;
  HessChart chart;
  explicit Fixture(const std::string &label)
      : L(chevalley_algebra(build_root_system(cartan_from_label(label)))), ctx(L), inv(invariant_generators(ctx)),
        t(principal_triple(L)), F(shift_family(L, inv, choose_regular_y(L, 5))), chart(build_chart(ctx, t, F))
  {
  }

  Vec random_hess_point(Rng &rng) const
  {
    Vec v = t.e1;
    for (auto a : L.negative_borel_indices())
      v[a] += rng.rational(3, 2);
    return v;
  }
};

int height_of(const std::vector<int> &r)
{
  int s = 0;
  for (int c : r)
    s += c;
  return s;
}

// Coefficient of t in p(x + t u).
Rational first_order(const Polynomial &p, const Vec &x, const Vec &u)
{
  std::vector<Polynomial> line;
  for (std::size_t a = 0; a < x.size(); ++a)
    line.push_back(Polynomial::constant(1, x[a]) + Polynomial::variable(1, 0).scaled(u[a]));
  return p.substitute(line).coefficient(Monomial::variable(0));
}

const char *kLabels[] = {"A1", "A2", "B2", "A1xA1", "A3"};

} // namespace

TEST(Hessenberg, GradientsAtE1FormLayeredBasisOfB)
{
  for (const auto *label : kLabels) {
    Fixture F(label);
    const std::size_t b = F.L.roots().borel_dim();
    ASSERT_EQ(F.chart.size(), b);
    EXPECT_EQ(rank_of(F.chart.z), b) << label;
    for (std::size_t beta = 0; beta < b; ++beta)
      for (std::size_t a = 0; a < F.L.dim(); ++a) {
        if (sgn(F.chart.z[beta][a]) == 0)
          continue;
        int expected = F.chart.m[beta] - 1;
        if (expected == 0)
          EXPECT_TRUE(F.L.is_cartan_index(a)) << label;
        else {
          ASSERT_TRUE(F.L.is_positive_index(a)) << label;
          EXPECT_EQ(height_of(F.L.roots().positive_roots[a]), expected) << label;
        }
      }
  }
}

TEST(Hessenberg, LeadingTermFromLineExpansion)
{
  for (const auto *label : {"A2", "B2"}) {
    Fixture F(label);
    for (std::size_t beta = 0; beta < F.chart.size(); ++beta)
      for (auto a : F.L.negative_borel_indices()) {
        Vec u = F.L.basis_vector(a);
        EXPECT_EQ(first_order(F.F.q[beta], F.t.e1, u), F.L.killing(F.chart.z[beta], u)) << label;
      }
  }
}

TEST(Hessenberg, DualBasisPairing)
{
  Fixture F("B2");
  for (std::size_t i = 0; i < F.chart.size(); ++i)
    for (std::size_t j = 0; j < F.chart.size(); ++j)
      EXPECT_EQ(F.L.killing(F.chart.z[i], F.chart.dual[j]), i == j ? 1 : 0);
  for (const auto &u : F.chart.dual)
    EXPECT_TRUE(F.L.supported_on(u, F.L.negative_borel_indices()));
}

TEST(Hessenberg, RestrictionBasics)
{
  Fixture F("A2");
  const std::size_t b = F.chart.size();
  EXPECT_EQ(restrict_to_hess(F.chart, F.ctx.linear_function(F.t.f)), Polynomial::constant(b, 1));
  EXPECT_EQ(restrict_to_hess(F.chart, Polynomial::constant(F.L.dim(), 7)), Polynomial::constant(b, 7));
  // A linear function of b restricts to a degree-1 polynomial with the dual pairing as coefficients.
  Vec zb = F.L.basis_vector(F.L.pos_index(0));
  Polynomial r = restrict_to_hess(F.chart, F.ctx.linear_function(zb));
  EXPECT_LE(r.degree(), 1);
  for (std::size_t g = 0; g < b; ++g)
    EXPECT_EQ(r.coefficient(Monomial::variable(g)), F.L.killing(zb, F.chart.dual[g]));
  EXPECT_EQ(r.evaluate(zero_vec(b)), F.L.killing(zb, F.t.e1));
}

TEST(Hessenberg, FirstLayerRestrictsToCoordinate)
{
  for (const auto *label : kLabels) {
    Fixture F(label);
    const std::size_t b = F.chart.size();
    for (std::size_t beta = 0; beta < b; ++beta)
      if (F.chart.m[beta] == 1) {
        EXPECT_EQ(F.chart.restricted[beta], restrict_to_hess(F.chart, F.ctx.linear_function(F.chart.z[beta])));
        EXPECT_EQ(F.chart.restricted[beta], Polynomial::variable(b, beta)) << label;
      }
  }
}

TEST(Hessenberg, JacobianIsLowerUnitriangular)
{
  for (const auto *label : kLabels) {
    Fixture F(label);
    const std::size_t b = F.chart.size();
    for (std::size_t beta = 0; beta < b; ++beta) {
      EXPECT_EQ(F.chart.restricted[beta].derivative(beta), Polynomial::constant(b, 1)) << label;
      for (std::size_t gamma = beta + 1; gamma < b; ++gamma)
        EXPECT_TRUE(F.chart.restricted[beta].derivative(gamma).is_zero()) << label;
    }
  }
}

TEST(Hessenberg, ViolationDetected)
{
  std::vector<Polynomial> good{Polynomial::variable(2, 0), Polynomial::variable(2, 1) + Polynomial::variable(2, 0).pow(2)};
  EXPECT_FALSE(unitriangularity_violation(good).has_value());
  std::vector<Polynomial> upper{Polynomial::variable(2, 0) + Polynomial::variable(2, 1), Polynomial::variable(2, 1)};
  auto v = unitriangularity_violation(upper);
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->first, 0u);
  EXPECT_EQ(v->second, 1u);
  std::vector<Polynomial> scaled{Polynomial::variable(2, 0).scaled(2), Polynomial::variable(2, 1)};
  EXPECT_TRUE(unitriangularity_violation(scaled).has_value());
}

TEST(Hessenberg, SectionRoundTrips)
{
  for (const auto *label : kLabels) {
    Fixture F(label);
    Rng rng(17);
    for (int i = 0; i < 20; ++i) {
      Vec v = F.random_hess_point(rng);
      EXPECT_EQ(hess_section(F.chart, phi(F.F, v)), v) << label;
      Vec c = rng.vec(F.chart.size(), 5, 3);
      Vec w = hess_section(F.chart, c);
      EXPECT_TRUE(in_hess(F.L, F.t.e1, w));
      EXPECT_EQ(phi(F.F, w), c) << label;
    }
    EXPECT_EQ(hess_section(F.chart, phi(F.F, F.t.e1)), F.t.e1);
  }
}

TEST(Hessenberg, CoordinatesInvertPoint)
{
  Fixture F("A3");
  Rng rng(2);
  Vec s = rng.vec(F.chart.size(), 4, 3);
  EXPECT_EQ(hess_coordinates(F.L, F.chart, F.chart.point(s)), s);
  EXPECT_THROW(hess_coordinates(F.L, F.chart, F.t.f), DimensionMismatch);
}

TEST(Hessenberg, PhiSeparatesHessPoints)
{
  Fixture F("A2");
  Rng rng(23);
  std::vector<Vec> pts, images;
  for (int i = 0; i < 8; ++i) {
    pts.push_back(F.random_hess_point(rng));
    images.push_back(phi(F.F, pts.back()));
  }
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      EXPECT_EQ(pts[i] == pts[j], images[i] == images[j]);
}

TEST(Hessenberg, HessIsStronglyRegular)
{
  for (const auto *label : kLabels) {
    Fixture F(label);
    Rng rng(31);
    for (int i = 0; i < 20; ++i) {
      Vec v = F.random_hess_point(rng);
      EXPECT_TRUE(is_strongly_regular(F.ctx, F.F, v)) << label;
      EXPECT_TRUE(F.L.is_regular(v)) << label;
    }
  }
}

TEST(Hessenberg, SliceMembershipAndNegativeUnipotentAction)
{
  for (const auto *label : {"A1", "A2", "B2", "A3"}) {
    Fixture F(label);
    Rng rng(41);
    for (int i = 0; i < 4; ++i) {
      Vec v0 = F.random_hess_point(rng);
      OrbitSlice slice = orbit_slice(F.inv, v0);
      EXPECT_TRUE(slice_member(F.L, F.t.e1, F.inv, slice, v0));
      Vec n = zero_vec(F.L.dim());
      for (std::size_t k = 0; k < F.L.num_positive(); ++k)
        n[F.L.neg_index(k)] = rng.rational(2, 2);
      Vec moved = F.L.exp_ad(n, v0);
      EXPECT_TRUE(in_hess(F.L, F.t.e1, moved)) << label;
      EXPECT_TRUE(slice_member(F.L, F.t.e1, F.inv, slice, moved)) << label;
      // I-components of Phi are conserved.
      Vec p0 = phi(F.F, v0), p1 = phi(F.F, moved);
      for (auto b : F.F.index_I)
        EXPECT_EQ(p0[b], p1[b]);
      EXPECT_TRUE(n_minus_isotropy(F.L, v0).empty()) << label;
      EXPECT_EQ(n_minus_tangent_dim(F.L, v0), F.L.num_positive()) << label;
    }
  }
}

TEST(Hessenberg, SlicesSeparateByInvariantValues)
{
  Fixture F("A2");
  Rng rng(43);
  Vec v0 = F.random_hess_point(rng);
  OrbitSlice slice = orbit_slice(F.inv, v0);
  Vec c = phi(F.F, v0);
  // Keep the I-values and move the N-values: same slice, different point.
  Vec c2 = c;
  for (auto b : F.F.index_N)
    c2[b] += 1;
  Vec v2 = hess_section(F.chart, c2);
  EXPECT_NE(v2, v0);
  EXPECT_TRUE(slice_member(F.L, F.t.e1, F.inv, slice, v2));
  Vec c3 = c;
  c3[F.F.index_I.back()] += 1;
  EXPECT_FALSE(slice_member(F.L, F.t.e1, F.inv, slice, hess_section(F.chart, c3)));
  EXPECT_FALSE(slice_member(F.L, F.t.e1, F.inv, slice, F.t.f));
}

TEST(Hessenberg, IsotropyNonzeroOffHess)
{
  // At x = 0 every element of n_- centralizes.
  Fixture F("A2");
  EXPECT_EQ(n_minus_isotropy(F.L, zero_vec(F.L.dim())).size(), F.L.num_positive());
  EXPECT_EQ(n_minus_tangent_dim(F.L, zero_vec(F.L.dim())), 0u);
}

TEST(Hessenberg, PoincareFormsAgree)
{
  for (const auto *label : {"A1", "A2", "B2", "A1xA1", "A3", "C2", "G2"}) {
    auto rs = build_root_system(cartan_from_label(label));
    auto p = poincare_series(rs, 2 * rs.coxeter_number);
    EXPECT_TRUE(p.agree()) << label;
    EXPECT_EQ(p.by_degrees[0], 1);
    EXPECT_EQ(p.by_degrees[1], static_cast<long>(rs.rank));
  }
}

TEST(Hessenberg, PoincareNaiveExpansion)
{
  // Product of geometric series by direct multiplication, A2 to order 10.
  auto rs = build_root_system(cartan_from_label("A2"));
  const int N = 10;
  std::vector<Rational> acc(N + 1, Rational(0));
  acc[0] = 1;
  for (int d : rs.degrees)
    for (int i = 1; i <= d; ++i) {
      std::vector<Rational> next(N + 1, Rational(0));
      for (int a = 0; a <= N; ++a)
        for (int k = 0; a + k * i <= N; ++k)
          next[a + k * i] += acc[a];
      acc = next;
    }
  auto p = poincare_series(rs, N);
  EXPECT_EQ(p.by_layers, acc);
  EXPECT_EQ(acc[2], 5);
}
