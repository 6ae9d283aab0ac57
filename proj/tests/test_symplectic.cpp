#include "mfhess/symplectic.hpp"

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
        t(principal_triple(L)), F(shift_family(L, inv, choose_regular_y(L, 9))), chart(build_chart(ctx, t, F))
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

const char *kLabels[] = {"A1", "A2", "B2", "A1xA1", "A3"};

} // namespace

TEST(Symplectic, OmegaIsAntisymmetricAndWellDefined)
{
  for (const auto *label : {"A2", "B2"}) {
    Fixture F(label);
    Rng rng(5);
    for (int trial = 0; trial < 5; ++trial) {
      Vec x = rng.vec(F.L.dim(), 3, 2);
      Vec z1 = rng.vec(F.L.dim(), 3, 2), z2 = rng.vec(F.L.dim(), 3, 2);
      EXPECT_EQ(omega(F.L, x, z1, z1), 0);
      EXPECT_EQ(omega(F.L, x, z1, z2), -omega(F.L, x, z2, z1));
      for (const auto &k : F.L.centralizer(x)) {
        EXPECT_EQ(omega(F.L, x, z1 + k, z2), omega(F.L, x, z1, z2)) << label;
        EXPECT_EQ(omega(F.L, x, z1, z2 + k), omega(F.L, x, z1, z2)) << label;
      }
    }
  }
}

TEST(Symplectic, OmegaMatchesKillingPairingOfBracket)
{
  // Direct expansion: (x, [y, z]) summed over Chevalley coordinates.
  Fixture F("A2");
  Rng rng(8);
  Vec x = rng.vec(F.L.dim(), 3, 2), y = rng.vec(F.L.dim(), 3, 2), z = rng.vec(F.L.dim(), 3, 2);
  Rational direct = 0;
  for (std::size_t a = 0; a < F.L.dim(); ++a)
    for (std::size_t b = 0; b < F.L.dim(); ++b) {
      if (sgn(y[a]) == 0 || sgn(z[b]) == 0)
        continue;
      for (const auto &[c, v] : F.L.bracket_basis(a, b))
        for (std::size_t d = 0; d < F.L.dim(); ++d)
          direct += x[d] * F.L.killing_gram()(d, c) * y[a] * z[b] * v;
    }
  EXPECT_EQ(omega(F.L, x, z, y), direct);
}

TEST(Symplectic, NegativeNilradicalIsIsotropicOnHess)
{
  for (const auto *label : kLabels) {
    Fixture F(label);
    Rng rng(13);
    for (int trial = 0; trial < 10; ++trial) {
      Vec v = F.random_hess_point(rng);
      for (std::size_t i = 0; i < F.L.num_positive(); ++i)
        for (std::size_t j = 0; j < F.L.num_positive(); ++j)
          EXPECT_EQ(omega(F.L, v, F.L.basis_vector(F.L.neg_index(i)), F.L.basis_vector(F.L.neg_index(j))), 0);
      auto verdict = hess_lagrangian_check(F.L, v);
      EXPECT_EQ(verdict.dimension, F.L.num_positive()) << label;
      EXPECT_TRUE(verdict.isotropic);
      EXPECT_TRUE(verdict.ok());
    }
  }
}

TEST(Symplectic, IsotropyViolationDetected)
{
  Fixture F("A2");
  auto frame = frame_from_preimages(F.L, F.t.w, {F.L.basis_vector(0), F.L.basis_vector(F.L.neg_index(0))});
  EXPECT_EQ(frame.dimension, 2u);
  EXPECT_TRUE(isotropy_violation(F.L, frame).has_value());
}

TEST(Symplectic, ZxIsLagrangianOnHess)
{
  for (const auto *label : kLabels) {
    Fixture F(label);
    Rng rng(19);
    for (int trial = 0; trial < 20; ++trial) {
      Vec x = F.random_hess_point(rng);
      ZxFrame z = zx_frame(F.ctx, F.F, x);
      EXPECT_EQ(z.frame.dimension, F.L.num_positive()) << label;
      EXPECT_TRUE(z.isotropic) << label;
      EXPECT_TRUE(z.invariants_vanish) << label;
      // Independent evaluation of the pairing on Hamiltonian vectors.
      for (auto i : F.F.index_N)
        for (auto j : F.F.index_N) {
          Vec gi = F.ctx.gradient(F.F.q[i], x), gj = F.ctx.gradient(F.F.q[j], x);
          EXPECT_EQ(F.L.killing(x, F.L.bracket(gi, gj)), 0);
        }
    }
  }
}

TEST(Symplectic, ZxRequiresStrongRegularity)
{
  Fixture F("A2");
  EXPECT_THROW(zx_frame(F.ctx, F.F, zero_vec(F.L.dim())), NotStronglyRegular);
  EXPECT_THROW(transversality_check(F.ctx, F.F, zero_vec(F.L.dim())), NotStronglyRegular);
}

TEST(Symplectic, TransversalityOnHess)
{
  for (const auto *label : kLabels) {
    Fixture F(label);
    Rng rng(29);
    for (int trial = 0; trial < 10; ++trial) {
      Vec x = F.random_hess_point(rng);
      auto r = transversality_check(F.ctx, F.F, x);
      EXPECT_EQ(r.orbit_dimension, 2 * F.L.num_positive()) << label;
      EXPECT_EQ(r.sum_dimension, 2 * F.L.num_positive()) << label;
      EXPECT_TRUE(r.fills_orbit);
      EXPECT_NE(sgn(r.pairing_determinant), 0) << label;
      EXPECT_EQ(r.phi_rank_on_hess, F.L.num_positive());
      EXPECT_TRUE(r.ok());
    }
  }
}

TEST(Symplectic, OrbitDimensionDropsOffRegularLocus)
{
  Fixture F("A2");
  const std::size_t n2 = 2 * F.L.num_positive();
  EXPECT_EQ(orbit_tangent_frame(F.L, zero_vec(F.L.dim())).dimension, 0u);
  EXPECT_LT(orbit_tangent_frame(F.L, F.L.basis_vector(0)).dimension, n2);
  EXPECT_EQ(orbit_tangent_frame(F.L, F.t.e1).dimension, n2);
  EXPECT_EQ(orbit_tangent_frame(F.L, F.t.w).dimension, n2);
}

TEST(Symplectic, PolarizationNilpotentSlice)
{
  Fixture F("A1");
  auto r = polarization_report(F.ctx, F.F, F.chart, F.inv, F.t.e1, 5, 1);
  EXPECT_EQ(r.points, 5u);
  EXPECT_TRUE(r.ok());
  EXPECT_FALSE(r.first_failure.has_value());
}

TEST(Symplectic, PolarizationSemisimpleSlice)
{
  for (const auto *label : {"A2", "B2"}) {
    Fixture F(label);
    Rng rng(3);
    Vec v0 = hess_section(F.chart, rng.vec(F.chart.size(), 4, 1));
    auto r = polarization_report(F.ctx, F.F, F.chart, F.inv, v0, 5, 2);
    EXPECT_TRUE(r.ok()) << label;
    EXPECT_EQ(r.in_slice, 5u);
  }
}
