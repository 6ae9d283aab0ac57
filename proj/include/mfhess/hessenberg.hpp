#pragma once

#include "mfhess/errors.hpp"
#include "mfhess/invariants.hpp"
#include "mfhess/liealgebra.hpp"
#include "mfhess/linalg.hpp"
#include "mfhess/mftranslate.hpp"
#include "mfhess/poisson.hpp"
#include "mfhess/principal.hpp"
#include "mfhess/rootdata.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace mfhess {

/// Triangular coordinates on Hess = e1 + b_-.
struct HessChart
{
  Vec e1;
  std::vector<Vec> z;                 ///< z_beta = dq_beta(e1), a basis of b
  std::vector<Vec> dual;              ///< u_beta in b_- with (z_beta, u_gamma) = delta
  std::vector<int> m;                 ///< m(beta)
  std::vector<Polynomial> restricted; ///< sigma(q_beta) in the variables s_1..s_b

  std::size_t size() const { return z.size(); }

  /// e1 + sum_beta s_beta u_beta.
  Vec point(const Vec &s) const
  {
    if (s.size() != dual.size())
      throw DimensionMismatch("chart coordinates have the wrong length");
    Vec x = e1;
    for (std::size_t b = 0; b < s.size(); ++b)
      if (sgn(s[b]) != 0)
        x = x + s[b] * dual[b];
    return x;
  }
};

inline bool in_hess(const LieAlgebra &L, const Vec &e1, const Vec &v)
{
  return L.supported_on(v - e1, L.negative_borel_indices());
}

/// s_beta(v) = (z_beta, v - e1).
inline Vec hess_coordinates(const LieAlgebra &L, const HessChart &chart, const Vec &v)
{
  if (!in_hess(L, chart.e1, v))
    throw DimensionMismatch("point is not on e1 + b_-");
  Vec d = v - chart.e1, s;
  for (const auto &zb : chart.z)
    s.push_back(L.killing(zb, d));
  return s;
}

/// Killing-dual basis of b_- for a basis of b.
inline std::vector<Vec> dual_in_negative_borel(const LieAlgebra &L, const std::vector<Vec> &z)
{
  auto idx = L.negative_borel_indices();
  if (idx.size() != z.size())
    throw DimensionMismatch("need exactly b elements");
  Matrix m(z.size(), idx.size());
  for (std::size_t b = 0; b < z.size(); ++b) {
    Vec kz = L.killing_gram() * z[b];
    for (std::size_t c = 0; c < idx.size(); ++c)
      m(b, c) = kz[idx[c]];
  }
  Matrix minv = inverse(m);
  std::vector<Vec> out;
  for (std::size_t g = 0; g < z.size(); ++g) {
    Vec u = zero_vec(L.dim());
    for (std::size_t c = 0; c < idx.size(); ++c)
      u[idx[c]] = minv(c, g);
    out.push_back(std::move(u));
  }
  return out;
}

/// sigma_Hess(p) as a polynomial in the chart coordinates.
inline Polynomial restrict_to_hess(const Vec &e1, const std::vector<Vec> &dual, const Polynomial &p)
{
  const std::size_t b = dual.size();
  std::vector<Polynomial> images;
  for (std::size_t a = 0; a < e1.size(); ++a) {
    PolynomialAccumulator acc(b);
    acc.add(Polynomial::constant(b, e1[a]));
    for (std::size_t g = 0; g < b; ++g)
      if (sgn(dual[g][a]) != 0)
        acc.add(Polynomial::variable(b, g), dual[g][a]);
    images.push_back(acc.result());
  }
  return p.substitute(images);
}

inline Polynomial restrict_to_hess(const HessChart &chart, const Polynomial &p)
{
  return restrict_to_hess(chart.e1, chart.dual, p);
}

/// First (beta, gamma) where d sigma_beta / d s_gamma is not 0 above the
/// diagonal or not identically 1 on it.
inline std::optional<std::pair<std::size_t, std::size_t>> unitriangularity_violation(
    const std::vector<Polynomial> &restricted)
{
  const std::size_t b = restricted.size();
  for (std::size_t beta = 0; beta < b; ++beta)
    for (std::size_t gamma = beta; gamma < b; ++gamma) {
      Polynomial d = restricted[beta].derivative(gamma);
      Polynomial expected = Polynomial::constant(restricted[beta].nvars(), gamma == beta ? 1 : 0);
      if (d != expected)
        return std::make_pair(beta, gamma);
    }
  return std::nullopt;
}

inline HessChart build_chart(const GradientContext &ctx, const PrincipalTriple &t, const ShiftFamily &F)
{
  const LieAlgebra &L = ctx.algebra();
  HessChart chart;
  chart.e1 = t.e1;
  for (std::size_t b = 0; b < F.size(); ++b) {
    Vec zb = ctx.gradient(F.q[b], t.e1);
    if (!L.supported_on(zb, L.layer_indices(F.members[b].m - 1)))
      throw NotTriangular("dq(e1) is not in the expected layer of b");
    chart.z.push_back(std::move(zb));
    chart.m.push_back(F.members[b].m);
  }
  if (chart.z.size() != L.roots().borel_dim() || rank_of(chart.z) != chart.z.size())
    throw NotTriangular("gradients at e1 do not form a basis of b");
  chart.dual = dual_in_negative_borel(L, chart.z);
  for (const auto &q : F.q)
    chart.restricted.push_back(restrict_to_hess(chart, q));
  if (auto bad = unitriangularity_violation(chart.restricted))
    throw NotTriangular("restricted generator " + std::to_string(bad->first + 1) + " depends on coordinate " +
                        std::to_string(bad->second + 1));
  return chart;
}

/// The point v of Hess with Phi(v) = c, by ascending substitution.
inline Vec hess_section(const HessChart &chart, const Vec &c)
{
  const std::size_t b = chart.size();
  if (c.size() != b)
    throw DimensionMismatch("section needs b values");
  Vec s = zero_vec(b);
  for (std::size_t beta = 0; beta < b; ++beta) {
    // sigma_beta = s_beta + g(s_1..s_{beta-1}); s_beta is still 0 here.
    s[beta] = c[beta] - chart.restricted[beta].evaluate(s);
  }
  return chart.point(s);
}

/// Hess(O) through the invariant values of a base point.
struct OrbitSlice
{
  Vec base;
  Vec values; ///< I_j(base)
};

inline OrbitSlice orbit_slice(const InvariantFamily &inv, const Vec &v0)
{
  OrbitSlice s{v0, {}};
  for (const auto &I : inv.generators)
    s.values.push_back(I.evaluate(v0));
  return s;
}

inline bool slice_member(const LieAlgebra &L, const Vec &e1, const InvariantFamily &inv, const OrbitSlice &slice,
                         const Vec &v)
{
  if (!in_hess(L, e1, v))
    return false;
  for (std::size_t j = 0; j < inv.generators.size(); ++j)
    if (inv.generators[j].evaluate(v) != slice.values[j])
      return false;
  return true;
}

/// [n_-, v] as the images of the negative root vectors, with preimages.
inline std::vector<std::pair<Vec, Vec>> n_minus_tangents(const LieAlgebra &L, const Vec &v)
{
  std::vector<std::pair<Vec, Vec>> out;
  for (std::size_t k = 0; k < L.num_positive(); ++k) {
    Vec z = L.basis_vector(L.neg_index(k));
    out.emplace_back(z, -L.bracket(z, v));
  }
  return out;
}

inline std::size_t n_minus_tangent_dim(const LieAlgebra &L, const Vec &v)
{
  std::vector<Vec> t;
  for (const auto &p : n_minus_tangents(L, v))
    t.push_back(p.second);
  return rank_of(t);
}

/// Basis of { n in n_- : [n, v] = 0 }.
inline std::vector<Vec> n_minus_isotropy(const LieAlgebra &L, const Vec &v)
{
  std::vector<Vec> cols;
  for (std::size_t k = 0; k < L.num_positive(); ++k)
    cols.push_back(L.bracket(L.basis_vector(L.neg_index(k)), v));
  std::vector<Vec> out;
  for (const auto &c : nullspace(Matrix::from_columns(cols, L.dim()))) {
    Vec n = zero_vec(L.dim());
    for (std::size_t k = 0; k < c.size(); ++k)
      n[L.neg_index(k)] = c[k];
    out.push_back(std::move(n));
  }
  return out;
}

/// Both product forms of the Poincare series to order N (coefficients of t^0..t^N).
struct PoincareSeries
{
  std::vector<Rational> by_degrees;
  std::vector<Rational> by_layers;
  bool agree() const { return by_degrees == by_layers; }
};

namespace detail {

/// series * (1 - t^k)^{-1}, truncated.
inline void divide_by_one_minus(std::vector<Rational> &series, int k)
{
  for (std::size_t i = static_cast<std::size_t>(k); i < series.size(); ++i)
    series[i] += series[i - static_cast<std::size_t>(k)];
}

} // namespace detail

inline PoincareSeries poincare_series(const RootSystem &rs, int order)
{
  if (order < 1)
    throw std::invalid_argument("series order must be positive");
  const auto size = static_cast<std::size_t>(order) + 1;
  PoincareSeries p;
  p.by_degrees.assign(size, Rational(0));
  p.by_degrees[0] = 1;
  for (int d : rs.degrees)
    for (int i = 1; i <= d; ++i)
      detail::divide_by_one_minus(p.by_degrees, i);
  p.by_layers.assign(size, Rational(0));
  p.by_layers[0] = 1;
  for (std::size_t m = 0; m < rs.layer_dims.size(); ++m)
    for (int r = 0; r < rs.layer_dims[m]; ++r)
      detail::divide_by_one_minus(p.by_layers, static_cast<int>(m) + 1);
  return p;
}

} // namespace mfhess
