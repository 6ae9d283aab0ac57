#pragma once

#include "mfhess/liealgebra.hpp"
#include "mfhess/linalg.hpp"
#include "mfhess/poisson.hpp"

#include <vector>

namespace mfhess {

/// Principal sl2-triple {w, e, f} and the normalized nilpotent e1 = e / (e, f).
struct PrincipalTriple
{
  Vec w, e, f, e1;
  Vec e_coefficients; ///< e = sum_i c_i e_{alpha_i}
};

inline PrincipalTriple principal_triple(const LieAlgebra &L)
{
  const std::size_t l = L.rank(), dim = L.dim();
  const auto &cm = L.roots().cartan;
  // alpha_i(sum_j c_j h_j) = sum_j c_j a_ji = 2
  Matrix at(l, l);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j)
      at(i, j) = cm(j, i);
  auto c = solve(at, Vec(l, Rational(2)));
  if (!c)
    throw SingularSystem("no element of h takes value 2 on every simple root");
  PrincipalTriple t;
  t.w = L.cartan_element(*c);
  t.f = zero_vec(dim);
  for (std::size_t i = 0; i < l; ++i)
    t.f[L.neg_index(i)] = 1;
  // [e, f] = w with e = sum_i b_i e_{alpha_i}: columns are [e_{alpha_i}, f].
  std::vector<Vec> cols;
  for (std::size_t i = 0; i < l; ++i)
    cols.push_back(L.bracket(L.basis_vector(L.pos_index(i)), t.f));
  auto b = solve(Matrix::from_columns(cols, dim), t.w);
  if (!b)
    throw SingularSystem("[e, f] = w has no solution with e in the simple root spaces");
  for (const auto &bi : *b)
    if (sgn(bi) == 0)
      throw SingularSystem("principal nilpotent has a vanishing simple-root coefficient");
  t.e_coefficients = *b;
  t.e = zero_vec(dim);
  for (std::size_t i = 0; i < l; ++i)
    t.e[L.pos_index(i)] = (*b)[i];
  Rational ef = L.killing(t.e, t.f);
  if (sgn(ef) == 0)
    throw SingularSystem("(e, f) vanishes");
  t.e1 = (1 / ef) * t.e;
  return t;
}

/// g as a sum of irreducible modules for the principal TDS.
struct PrincipalDecomposition
{
  std::vector<int> exponents;              ///< m_j, nondecreasing
  std::vector<Vec> highest_weight;         ///< v_j in ker(ad e), ad w-weight 2 m_j
  std::vector<std::vector<Vec>> modules;   ///< (ad f)^i v_j, i = 0..2 m_j
  std::vector<Vec> cartan_representatives; ///< z_j, spanning m_j cap h
  std::vector<std::vector<Vec>> chains;    ///< z_{jk} = (ad f / 2)^k z_j, k = 0..m_j
};

inline PrincipalDecomposition principal_decomposition(const LieAlgebra &L, const PrincipalTriple &t)
{
  const std::size_t dim = L.dim(), l = L.rank();
  auto kernel = L.centralizer(t.e);
  if (kernel.size() != l)
    throw DecompositionFailure("ker(ad e) has dimension " + std::to_string(kernel.size()) + ", expected " +
                               std::to_string(l));
  PrincipalDecomposition pd;
  const int max_height = L.roots().coxeter_number - 1;
  for (int m = 1; m <= max_height; ++m) {
    // ker(ad e) intersected with the span of root vectors of height m.
    auto layer = L.layer_indices(m);
    if (layer.empty())
      continue;
    Matrix ade = L.ad(t.e);
    Matrix restricted(dim, layer.size());
    for (std::size_t c = 0; c < layer.size(); ++c)
      for (std::size_t r = 0; r < dim; ++r)
        restricted(r, c) = ade(r, layer[c]);
    for (const auto &coeffs : nullspace(restricted)) {
      Vec v = zero_vec(dim);
      for (std::size_t c = 0; c < layer.size(); ++c)
        v[layer[c]] = coeffs[c];
      pd.exponents.push_back(m);
      pd.highest_weight.push_back(v);
    }
  }
  if (pd.exponents != L.roots().exponents)
    throw DecompositionFailure("highest weights of ker(ad e) do not match the exponents");

  const Vec half_f = Rational(1, 2) * t.f;
  std::vector<Vec> all;
  for (std::size_t j = 0; j < pd.exponents.size(); ++j) {
    const int m = pd.exponents[j];
    std::vector<Vec> module{pd.highest_weight[j]};
    for (int i = 1; i <= 2 * m; ++i)
      module.push_back(L.bracket(t.f, module.back()));
    if (!is_zero(L.bracket(t.f, module.back())) || is_zero(module.back()))
      throw DecompositionFailure("module does not have dimension 2m+1");
    Vec z = pd.highest_weight[j];
    for (int i = 0; i < m; ++i)
      z = L.bracket(half_f, z);
    if (!L.supported_on(z, L.layer_indices(0)) || is_zero(z))
      throw DecompositionFailure("Cartan representative is not in h");
    std::vector<Vec> chain{z};
    for (int k = 1; k <= m; ++k)
      chain.push_back(L.bracket(half_f, chain.back()));
    all.insert(all.end(), module.begin(), module.end());
    pd.modules.push_back(std::move(module));
    pd.cartan_representatives.push_back(z);
    pd.chains.push_back(std::move(chain));
  }
  if (rank_of(all) != dim)
    throw DecompositionFailure("modules do not span g");
  return pd;
}

/// u_t . x = exp(t/2 ad f) x.
inline Vec apply_u(const LieAlgebra &L, const PrincipalTriple &t, const Rational &s, const Vec &x)
{
  return L.exp_ad(Rational(s / 2) * t.f, x);
}

/// Span of { dI_j(w + t f) : j, t in t_values }.
inline std::vector<Vec> vandermonde_span(const GradientContext &ctx, const PrincipalTriple &t,
                                         const std::vector<Polynomial> &invariants, const Vec &t_values)
{
  std::vector<Vec> grads;
  for (const auto &s : t_values) {
    Vec x = t.w + s * t.f;
    for (const auto &I : invariants)
      grads.push_back(ctx.gradient(I, x));
  }
  return span_basis(grads);
}

} // namespace mfhess
