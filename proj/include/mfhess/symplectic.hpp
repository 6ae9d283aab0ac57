#pragma once

#include "mfhess/errors.hpp"
#include "mfhess/hessenberg.hpp"
#include "mfhess/liealgebra.hpp"
#include "mfhess/linalg.hpp"
#include "mfhess/mftranslate.hpp"
#include "mfhess/poisson.hpp"
#include "mfhess/random.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace mfhess {

/// omega_x(-[z1, x], -[z2, x]) = (x, [z2, z1]).
inline Rational omega(const LieAlgebra &L, const Vec &x, const Vec &z1, const Vec &z2)
{
  return L.killing(x, L.bracket(z2, z1));
}

/// Orbit tangent vectors at x, each with its bracket preimage.
struct TangentFrame
{
  Vec x;
  std::vector<Vec> preimages;
  std::vector<Vec> tangents; ///< tangents[i] = -[preimages[i], x]
  std::size_t dimension = 0;
};

inline TangentFrame frame_from_preimages(const LieAlgebra &L, const Vec &x, std::vector<Vec> preimages)
{
  TangentFrame t;
  t.x = x;
  for (const auto &z : preimages)
    t.tangents.push_back(-L.bracket(z, x));
  t.preimages = std::move(preimages);
  t.dimension = rank_of(t.tangents);
  return t;
}

/// T_x(O) spanned by the images of the whole basis.
inline TangentFrame orbit_tangent_frame(const LieAlgebra &L, const Vec &x)
{
  std::vector<Vec> pre;
  for (std::size_t a = 0; a < L.dim(); ++a)
    pre.push_back(L.basis_vector(a));
  return frame_from_preimages(L, x, std::move(pre));
}

/// First pair of preimages with nonzero omega, if any.
inline std::optional<std::pair<std::size_t, std::size_t>> isotropy_violation(const LieAlgebra &L,
                                                                              const TangentFrame &t)
{
  for (std::size_t i = 0; i < t.preimages.size(); ++i)
    for (std::size_t j = i + 1; j < t.preimages.size(); ++j)
      if (sgn(omega(L, t.x, t.preimages[i], t.preimages[j])) != 0)
        return std::make_pair(i, j);
  return std::nullopt;
}

/// Z_x spanned by the Hamiltonian vectors of q_i, i in N.
struct ZxFrame
{
  TangentFrame frame;
  bool invariants_vanish = false; ///< xi_{q_beta}(x) = 0 for beta in I
  bool isotropic = false;
};

inline ZxFrame zx_frame(const GradientContext &ctx, const ShiftFamily &F, const Vec &x)
{
  const LieAlgebra &L = ctx.algebra();
  std::vector<Vec> grads;
  for (const auto &q : F.q)
    grads.push_back(ctx.gradient(q, x));
  if (rank_of(grads) != F.size())
    throw NotStronglyRegular("gradients of q_1..q_b are dependent at the point");
  ZxFrame z;
  std::vector<Vec> pre;
  for (auto b : F.index_N)
    pre.push_back(grads[b]);
  z.frame = frame_from_preimages(L, x, std::move(pre));
  z.invariants_vanish = true;
  for (auto b : F.index_I)
    if (!is_zero(L.bracket(grads[b], x)))
      z.invariants_vanish = false;
  z.isotropic = !isotropy_violation(L, z.frame).has_value();
  return z;
}

struct LagrangianVerdict
{
  std::size_t dimension = 0;
  std::size_t expected = 0;
  bool isotropic = false;
  bool ok() const { return dimension == expected && isotropic; }
};

/// Hess(O) at v: [n_-, v] has dimension n and is isotropic.
inline LagrangianVerdict hess_lagrangian_check(const LieAlgebra &L, const Vec &v)
{
  std::vector<Vec> pre;
  for (const auto &p : n_minus_tangents(L, v))
    pre.push_back(p.first);
  TangentFrame t = frame_from_preimages(L, v, std::move(pre));
  LagrangianVerdict r;
  r.dimension = t.dimension;
  r.expected = L.num_positive();
  r.isotropic = !isotropy_violation(L, t).has_value();
  return r;
}

struct TransversalityVerdict
{
  std::size_t orbit_dimension = 0; ///< dim T_x(O)
  std::size_t sum_dimension = 0;   ///< dim (Z_x + [n_-, x])
  bool fills_orbit = false;        ///< the sum equals T_x(O)
  Rational pairing_determinant;    ///< det omega(Z_x, [n_-, x])
  std::size_t phi_rank_on_hess = 0;
  std::size_t n = 0;

  bool ok() const
  {
    return orbit_dimension == 2 * n && sum_dimension == 2 * n && fills_orbit && sgn(pairing_determinant) != 0 &&
           phi_rank_on_hess == n;
  }
};

inline TransversalityVerdict transversality_check(const GradientContext &ctx, const ShiftFamily &F, const Vec &x)
{
  const LieAlgebra &L = ctx.algebra();
  ZxFrame zx = zx_frame(ctx, F, x);
  std::vector<Vec> pre;
  for (const auto &p : n_minus_tangents(L, x))
    pre.push_back(p.first);
  TangentFrame hess = frame_from_preimages(L, x, std::move(pre));
  TangentFrame orbit = orbit_tangent_frame(L, x);

  TransversalityVerdict r;
  r.n = L.num_positive();
  r.orbit_dimension = orbit.dimension;
  std::vector<Vec> sum = zx.frame.tangents;
  sum.insert(sum.end(), hess.tangents.begin(), hess.tangents.end());
  r.sum_dimension = rank_of(sum);
  r.fills_orbit = same_span(sum, orbit.tangents);

  const std::size_t nz = zx.frame.preimages.size(), nh = hess.preimages.size();
  if (nz == nh) {
    Matrix pairing(nz, nh);
    for (std::size_t i = 0; i < nz; ++i)
      for (std::size_t j = 0; j < nh; ++j)
        pairing(i, j) = omega(L, x, zx.frame.preimages[i], hess.preimages[j]);
    r.pairing_determinant = determinant(pairing);
  }

  // d Phi restricted to [n_-, x].
  std::vector<Vec> rows;
  for (const auto &q : F.q) {
    Vec g = ctx.gradient(q, x), row;
    for (const auto &t : hess.tangents)
      row.push_back(L.killing(g, t));
    rows.push_back(std::move(row));
  }
  r.phi_rank_on_hess = rank_of(rows);
  return r;
}

struct PolarizationReport
{
  std::size_t points = 0;
  std::size_t strongly_regular = 0;
  std::size_t zx_lagrangian = 0;
  std::size_t hess_lagrangian = 0;
  std::size_t transversal = 0;
  std::size_t orbit_dimension_2n = 0;
  std::size_t in_slice = 0;
  std::optional<Vec> first_failure;

  bool ok() const
  {
    return points > 0 && strongly_regular == points && zx_lagrangian == points && hess_lagrangian == points &&
           transversal == points && orbit_dimension_2n == points && in_slice == points;
  }
};

/// Pointwise checks at points of Hess(O) for the orbit through v0. Slice
/// points are produced by the section with the I-values of v0 held fixed.
inline PolarizationReport polarization_report(const GradientContext &ctx, const ShiftFamily &F,
                                              const HessChart &chart, const InvariantFamily &inv, const Vec &v0,
                                              std::size_t samples, std::uint64_t seed)
{
  const LieAlgebra &L = ctx.algebra();
  const std::size_t n = L.num_positive();
  OrbitSlice slice = orbit_slice(inv, v0);
  Vec base = phi(F, v0);
  Rng rng = Rng::stream(seed, 0x706f);
  PolarizationReport r;
  for (std::size_t s = 0; s < samples; ++s) {
    Vec c = base;
    for (auto b : F.index_N)
      c[b] = rng.rational(4, 3);
    Vec x = s == 0 ? v0 : hess_section(chart, c);
    ++r.points;
    bool good = slice_member(L, chart.e1, inv, slice, x);
    r.in_slice += good;
    bool sreg = is_strongly_regular(ctx, F, x);
    r.strongly_regular += sreg;
    good = good && sreg;
    if (sreg) {
      ZxFrame z = zx_frame(ctx, F, x);
      bool zl = z.frame.dimension == n && z.isotropic && z.invariants_vanish;
      r.zx_lagrangian += zl;
      bool tr = transversality_check(ctx, F, x).ok();
      r.transversal += tr;
      good = good && zl && tr;
    }
    bool hl = hess_lagrangian_check(L, x).ok();
    r.hess_lagrangian += hl;
    bool od = orbit_tangent_frame(L, x).dimension == 2 * n;
    r.orbit_dimension_2n += od;
    good = good && hl && od;
    if (!good && !r.first_failure)
      r.first_failure = x;
  }
  return r;
}

} // namespace mfhess
