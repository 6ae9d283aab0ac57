#pragma once

#include "mfhess/errors.hpp"
#include "mfhess/invariants.hpp"
#include "mfhess/liealgebra.hpp"
#include "mfhess/linalg.hpp"
#include "mfhess/poisson.hpp"
#include "mfhess/principal.hpp"
#include "mfhess/random.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mfhess {

/// Regular element of h from the seed. The simple-root values alpha_i(y) are
/// drawn as small nonzero integers and redrawn until no positive root vanishes.
inline Vec choose_regular_y(const LieAlgebra &L, std::uint64_t seed, long bound = 3)
{
  const std::size_t l = L.rank();
  const auto &cm = L.roots().cartan;
  Matrix at(l, l);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j)
      at(i, j) = cm(j, i);
  Matrix at_inv = inverse(at);
  Rng rng = Rng::stream(seed, 0x79);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Vec values(l);
    for (auto &v : values)
      v = rng.nonzero(bound);
    Vec y = L.cartan_element(at_inv * values);
    bool regular = true;
    for (const auto &phi : L.roots().positive_roots)
      if (sgn(L.root_value(phi, y)) == 0)
        regular = false;
    if (regular)
      return y;
  }
  throw ConstructionFailure("no regular element found; root data is inconsistent");
}

/// True when no root vanishes on the Cartan element y (and y lies in h).
inline bool is_regular_in_cartan(const LieAlgebra &L, const Vec &y)
{
  if (!L.supported_on(y, L.layer_indices(0)))
    return false;
  for (const auto &phi : L.roots().positive_roots)
    if (sgn(L.root_value(phi, y)) == 0)
      return false;
  return true;
}

/// (1/k!) (d_u)^k p.
inline Polynomial shift_raw(const Polynomial &p, const Vec &u, int k)
{
  Polynomial out = p;
  Rational fact = 1;
  for (int i = 1; i <= k; ++i) {
    out = out.directional_derivative(u);
    fact *= i;
  }
  return out.scaled(1 / fact);
}

/// Basis I_{j,u,k}, k = 0..m_j, of V_u (constants excluded).
inline std::vector<Polynomial> shifted_space(const InvariantFamily &inv, const Vec &u)
{
  std::vector<Polynomial> out;
  for (std::size_t j = 0; j < inv.generators.size(); ++j)
    for (int k = 0; k < inv.degrees[j]; ++k)
      out.push_back(shift_raw(inv.generators[j], u, k));
  return out;
}

struct ShiftMember
{
  int m = 0;         ///< degree d_j - k
  std::size_t j = 0; ///< originating invariant (0-based)
  int k = 0;         ///< order of the shift
};

/// The ordered generators q_1..q_b of H_y with the split B = N + I.
struct ShiftFamily
{
  Vec y;
  std::vector<std::vector<Polynomial>> raw; ///< raw[j][k] = I_{j,y,k}
  std::vector<Polynomial> q;
  std::vector<ShiftMember> members;
  std::vector<std::size_t> index_I; ///< positions with q = I_j
  std::vector<std::size_t> index_N;

  std::size_t size() const { return q.size(); }
};

namespace detail {

/// Rank of a list of polynomials as vectors over the union of their monomials.
inline std::size_t polynomial_rank(const std::vector<Polynomial> &polys)
{
  std::map<Monomial, std::size_t> index;
  for (const auto &p : polys)
    for (const auto &t : p.terms())
      index.emplace(t.first, 0);
  std::size_t k = 0;
  for (auto &e : index)
    e.second = k++;
  SparseEchelon ech(index.size());
  for (const auto &p : polys) {
    SparseRow row;
    for (const auto &t : p.terms())
      row.emplace_back(index[t.first], t.second);
    std::sort(row.begin(), row.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
    ech.insert(std::move(row));
  }
  return ech.rank();
}

} // namespace detail

inline ShiftFamily shift_family(const LieAlgebra &L, const InvariantFamily &inv, const Vec &y)
{
  if (!is_regular_in_cartan(L, y))
    throw DependentFamily("shift direction is not a regular element of h");
  ShiftFamily F;
  F.y = y;
  int h = 0;
  for (std::size_t j = 0; j < inv.generators.size(); ++j) {
    std::vector<Polynomial> chain;
    for (int k = 0; k < inv.degrees[j]; ++k)
      chain.push_back(shift_raw(inv.generators[j], y, k));
    F.raw.push_back(std::move(chain));
    h = std::max(h, inv.degrees[j]);
  }
  for (int m = 1; m <= h; ++m)
    for (std::size_t j = 0; j < inv.generators.size(); ++j) {
      const int d = inv.degrees[j];
      if (d < m)
        continue;
      const int k = d - m;
      F.members.push_back({m, j, k});
      F.q.push_back(F.raw[j][static_cast<std::size_t>(k)]);
      (k == 0 ? F.index_I : F.index_N).push_back(F.q.size() - 1);
    }
  if (detail::polynomial_rank(F.q) != F.q.size())
    throw DependentFamily("shifted invariants are linearly dependent");
  return F;
}

/// Number of members of each degree m = 1..h.
inline std::vector<int> graded_dimensions(const ShiftFamily &F)
{
  std::vector<int> dims;
  for (const auto &mem : F.members) {
    if (static_cast<int>(dims.size()) < mem.m)
      dims.resize(static_cast<std::size_t>(mem.m), 0);
    dims[static_cast<std::size_t>(mem.m - 1)] += 1;
  }
  return dims;
}

/// Dimension of each graded piece computed from the polynomials themselves.
inline std::vector<int> graded_ranks(const ShiftFamily &F)
{
  std::vector<int> out;
  int h = 0;
  for (const auto &p : F.q)
    h = std::max(h, p.degree());
  for (int m = 1; m <= h; ++m) {
    std::vector<Polynomial> piece;
    for (const auto &p : F.q)
      if (p.degree() == m)
        piece.push_back(p);
    out.push_back(static_cast<int>(detail::polynomial_rank(piece)));
  }
  return out;
}

struct CommutationResult
{
  bool all_zero = true;
  std::size_t pairs_checked = 0;
  std::optional<std::pair<std::size_t, std::size_t>> witness_pair;
  Polynomial witness_bracket;
};

inline CommutationResult pairwise_commute(const GradientContext &ctx, const ShiftFamily &F)
{
  CommutationResult r;
  for (std::size_t i = 0; i < F.size(); ++i)
    for (std::size_t j = i + 1; j < F.size(); ++j) {
      ++r.pairs_checked;
      auto br = ctx.poisson_bracket(F.q[i], F.q[j]);
      if (!br.is_zero() && r.all_zero) {
        r.all_zero = false;
        r.witness_pair = std::make_pair(i, j);
        r.witness_bracket = br;
      }
    }
  return r;
}

/// Phi(x) = (q_1(x), ..., q_b(x)).
inline Vec phi(const ShiftFamily &F, const Vec &x)
{
  Vec out;
  out.reserve(F.size());
  for (const auto &p : F.q)
    out.push_back(p.evaluate(x));
  return out;
}

/// Span of { dp(x) : p in polys }.
inline std::vector<Vec> gradient_span(const GradientContext &ctx, const std::vector<Polynomial> &polys, const Vec &x)
{
  std::vector<Vec> grads;
  for (const auto &p : polys)
    grads.push_back(ctx.gradient(p, x));
  return span_basis(grads);
}

inline bool is_strongly_regular(const GradientContext &ctx, const ShiftFamily &F, const Vec &x)
{
  return gradient_span(ctx, F.q, x).size() == F.size();
}

/// zeta = -(ad y)^{-1} ad e on b, using that ad y is diagonal on root vectors.
inline Vec zeta(const LieAlgebra &L, const Vec &e, const Vec &y, const Vec &v)
{
  Vec ev = L.bracket(e, v);
  Vec out = zero_vec(L.dim());
  for (std::size_t a = 0; a < L.dim(); ++a) {
    if (sgn(ev[a]) == 0)
      continue;
    if (!L.is_positive_index(a))
      throw NotInvertible("[e, v] leaves n");
    Rational value = L.root_value(L.root_of(a), y);
    if (sgn(value) == 0)
      throw NotInvertible("ad y is singular on n");
    out[a] = -ev[a] / value;
  }
  return out;
}

struct ZetaChain
{
  int degree = 0;
  std::vector<Vec> v; ///< v_0..v_{h-1}, zero for i >= degree
  bool y_centralizes_v0 = false;
  bool e_kills_last = false;
  bool chain_relation = false;
  bool layers_respected = false;

  bool ok() const { return y_centralizes_v0 && e_kills_last && chain_relation && layers_respected; }
};

/// Coefficients of dI(x0 + t y) in t: the t^j coefficient is v_{d-1-j}.
inline ZetaChain zeta_chain(const GradientContext &ctx, const Vec &x0, const Vec &y, const Polynomial &I, int h)
{
  const LieAlgebra &L = ctx.algebra();
  for (const auto &phi_root : L.roots().positive_roots)
    if (sgn(L.root_value(phi_root, y)) == 0)
      throw NotInvertible("ad y is singular on n");
  const int d = I.degree();
  ZetaChain zc;
  zc.degree = d;
  zc.v.assign(static_cast<std::size_t>(std::max(h, d)), zero_vec(L.dim()));
  // Substitute x = x0 + t y into the gradient field; one variable t.
  std::vector<Polynomial> line;
  for (std::size_t a = 0; a < L.dim(); ++a) {
    Polynomial img = Polynomial::constant(1, x0[a]) + Polynomial::variable(1, 0).scaled(y[a]);
    line.push_back(img);
  }
  auto field = ctx.gradient_field(I);
  for (std::size_t a = 0; a < L.dim(); ++a) {
    Polynomial along = field[a].substitute(line);
    for (const auto &t : along.terms()) {
      int j = static_cast<int>(t.first.exponent(0));
      zc.v[static_cast<std::size_t>(d - 1 - j)][a] = t.second;
    }
  }
  zc.y_centralizes_v0 = is_zero(L.bracket(y, zc.v[0]));
  zc.e_kills_last = is_zero(L.bracket(x0, zc.v[static_cast<std::size_t>(d - 1)]));
  zc.chain_relation = true;
  for (std::size_t i = 0; i + 1 < zc.v.size(); ++i)
    if (zeta(L, x0, y, zc.v[i]) != zc.v[i + 1])
      zc.chain_relation = false;
  zc.layers_respected = true;
  for (std::size_t i = 0; i < zc.v.size(); ++i)
    if (!L.supported_on(zc.v[i], L.layer_indices(static_cast<int>(i))))
      zc.layers_respected = false;
  return zc;
}

struct MembershipResult
{
  bool certified = false; ///< false means inconclusive, never a refutation
  std::optional<Vec> witness;
  std::size_t best_dimension = 0;
  std::size_t samples_tried = 0;
};

/// Searches for x with dim g(V_u, x) = b. Candidates are tried in order,
/// followed by random points from the seed.
inline MembershipResult mv_membership(const GradientContext &ctx, const InvariantFamily &inv, const Vec &u,
                                      const std::vector<Vec> &candidates, std::size_t sample_count,
                                      std::uint64_t seed, bool float_prescreen = false)
{
  const LieAlgebra &L = ctx.algebra();
  const std::size_t b = L.roots().borel_dim();
  auto space = shifted_space(inv, u);
  MembershipResult r;
  auto try_point = [&](const Vec &x) {
    ++r.samples_tried;
    std::vector<Vec> grads;
    for (const auto &p : space)
      grads.push_back(ctx.gradient(p, x));
    if (float_prescreen && float_rank(grads) < b)
      return false;
    std::size_t dim = rank_of(grads);
    r.best_dimension = std::max(r.best_dimension, dim);
    if (dim == b) {
      r.certified = true;
      r.witness = x;
      return true;
    }
    return false;
  };
  for (const auto &x : candidates)
    if (try_point(x))
      return r;
  Rng rng = Rng::stream(seed, 0x6d76);
  for (std::size_t s = 0; s < sample_count; ++s)
    if (try_point(rng.vec(L.dim(), 4, 3)))
      return r;
  return r;
}

} // namespace mfhess
