#pragma once

#include "mfhess/errors.hpp"
#include "mfhess/liealgebra.hpp"
#include "mfhess/linalg.hpp"
#include "mfhess/poisson.hpp"
#include "mfhess/polynomial.hpp"

#include <functional>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace mfhess {

/// Homogeneous generators I_1..I_l of the invariant polynomials, degrees
/// nondecreasing.
struct InvariantFamily
{
  std::vector<Polynomial> generators;
  std::vector<int> degrees;
  std::string provenance; ///< "solver", "trace-oracle" or "cache"
};

namespace detail {

/// All monomials of total degree d in nvars variables whose root weight is 0.
inline std::vector<Monomial> weight_zero_monomials(const LieAlgebra &L, unsigned d)
{
  const std::size_t nvars = L.dim(), l = L.rank();
  std::vector<SignedRoot> weight(nvars);
  for (std::size_t a = 0; a < nvars; ++a)
    weight[a] = L.root_of(a);
  std::vector<Monomial> out;
  std::vector<unsigned> exps(nvars, 0);
  SignedRoot acc(l, 0);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t v, unsigned left) {
    if (v + 1 == nvars) {
      exps[v] = left;
      bool zero = true;
      for (std::size_t i = 0; i < l; ++i)
        if (acc[i] + static_cast<int>(left) * weight[v][i] != 0)
          zero = false;
      if (zero)
        out.push_back(Monomial::from_exponents(exps));
      exps[v] = 0;
      return;
    }
    for (unsigned e = 0; e <= left; ++e) {
      exps[v] = e;
      for (std::size_t i = 0; i < l; ++i)
        acc[i] += static_cast<int>(e) * weight[v][i];
      rec(v + 1, left - e);
      for (std::size_t i = 0; i < l; ++i)
        acc[i] -= static_cast<int>(e) * weight[v][i];
    }
    exps[v] = 0;
  };
  if (nvars > 0)
    rec(0, d);
  std::sort(out.begin(), out.end());
  return out;
}

inline SparseRow to_sparse(const Polynomial &p, const std::unordered_map<Monomial, std::size_t, MonomialHash> &index)
{
  SparseRow row;
  for (const auto &t : p.terms()) {
    auto it = index.find(t.first);
    if (it == index.end())
      throw WrongDimension("polynomial leaves the weight-zero monomial space");
    row.emplace_back(it->second, t.second);
  }
  std::sort(row.begin(), row.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
  return row;
}

/// All products of earlier generators with total degree d.
inline std::vector<Polynomial> decomposables(const std::vector<Polynomial> &gens, const std::vector<int> &degs,
                                             int d, std::size_t nvars)
{
  std::vector<Polynomial> out;
  std::function<void(std::size_t, int, Polynomial)> rec = [&](std::size_t start, int left, Polynomial acc) {
    if (left == 0) {
      out.push_back(acc);
      return;
    }
    for (std::size_t j = start; j < gens.size(); ++j)
      if (degs[j] <= left && degs[j] < d)
        rec(j, left - degs[j], acc * gens[j]);
  };
  rec(0, d, Polynomial::constant(nvars, 1));
  return out;
}

} // namespace detail

/// Invariant polynomials of degree d: kernel of q -> [(., z), q] for z ranging
/// over the Chevalley generators, within the weight-zero part of S^d(g).
inline std::vector<Polynomial> invariant_space(const GradientContext &ctx, unsigned d)
{
  const LieAlgebra &L = ctx.algebra();
  auto monos = detail::weight_zero_monomials(L, d);
  std::vector<std::vector<Polynomial>> fields;
  for (std::size_t i = 0; i < L.rank(); ++i) {
    fields.push_back(ctx.linear_derivation(L.basis_vector(L.pos_index(i))));
    fields.push_back(ctx.linear_derivation(L.basis_vector(L.neg_index(i))));
  }
  // Rows are indexed by (generator, output monomial); columns by input monomial.
  SparseEchelon ech(monos.size());
  for (const auto &field : fields) {
    std::map<Monomial, SparseRow> rows;
    for (std::size_t c = 0; c < monos.size(); ++c) {
      Polynomial m = Polynomial::from_terms(L.dim(), {{monos[c], Rational(1)}});
      Polynomial image = ctx.apply_field(field, m);
      for (const auto &t : image.terms())
        rows[t.first].emplace_back(c, t.second);
    }
    for (auto &[mono, row] : rows)
      ech.insert(std::move(row));
  }
  std::vector<Polynomial> out;
  for (const auto &v : ech.nullspace()) {
    std::vector<Term> terms;
    for (const auto &[c, val] : v)
      terms.emplace_back(monos[c], val);
    out.push_back(Polynomial::from_terms(L.dim(), std::move(terms)));
  }
  return out;
}

/// Generators of S(g)^G, one new generator per occurrence of each degree.
inline InvariantFamily invariant_generators(const GradientContext &ctx)
{
  const LieAlgebra &L = ctx.algebra();
  const auto &degrees = L.roots().degrees;
  InvariantFamily fam;
  fam.provenance = "solver";
  std::map<int, int> multiplicity;
  for (int d : degrees)
    ++multiplicity[d];
  for (const auto &[d, mult] : multiplicity) {
    auto monos = detail::weight_zero_monomials(L, static_cast<unsigned>(d));
    std::unordered_map<Monomial, std::size_t, MonomialHash> index;
    for (std::size_t i = 0; i < monos.size(); ++i)
      index[monos[i]] = i;
    SparseEchelon span(monos.size());
    for (const auto &p : detail::decomposables(fam.generators, fam.degrees, d, L.dim()))
      span.insert(detail::to_sparse(p, index));
    int found = 0;
    for (const auto &p : invariant_space(ctx, static_cast<unsigned>(d))) {
      if (!span.insert(detail::to_sparse(p, index)))
        continue;
      ++found;
      if (found > mult)
        break;
      fam.generators.push_back(p.primitive());
      fam.degrees.push_back(d);
    }
    if (found != mult)
      throw WrongDimension("degree " + std::to_string(d) + ": found " + std::to_string(found) +
                           " indecomposable invariants, expected " + std::to_string(mult));
  }
  return fam;
}

/// True when both families generate the same space in every degree, modulo
/// products of lower-degree generators.
inline bool equivalent_modulo_decomposables(const InvariantFamily &a, const InvariantFamily &b, std::size_t nvars)
{
  if (a.degrees != b.degrees)
    return false;
  std::map<int, int> seen;
  for (int d : a.degrees) {
    if (seen[d]++)
      continue;
    std::vector<Polynomial> sa, sb;
    for (const auto &p : detail::decomposables(a.generators, a.degrees, d, nvars))
      sa.push_back(p);
    for (const auto &p : detail::decomposables(b.generators, b.degrees, d, nvars))
      sb.push_back(p);
    for (std::size_t j = 0; j < a.degrees.size(); ++j)
      if (a.degrees[j] == d) {
        sa.push_back(a.generators[j]);
        sb.push_back(b.generators[j]);
      }
    // Compare the spans on the union of monomials.
    std::map<Monomial, std::size_t> index;
    for (const auto *list : {&sa, &sb})
      for (const auto &p : *list)
        for (const auto &t : p.terms())
          index.emplace(t.first, 0);
    std::size_t k = 0;
    for (auto &entry : index)
      entry.second = k++;
    auto vecs = [&](const std::vector<Polynomial> &list) {
      std::vector<Vec> out;
      for (const auto &p : list) {
        Vec v = zero_vec(index.size());
        for (const auto &t : p.terms())
          v[index[t.first]] = t.second;
        out.push_back(v);
      }
      return out;
    };
    if (!same_span(vecs(sa), vecs(sb)))
      return false;
  }
  return true;
}

/// Matrix realization of sl(l+1) on the Chevalley basis of type A_l.
inline std::vector<Matrix> type_a_realization(const LieAlgebra &L)
{
  const std::size_t l = L.rank(), N = l + 1;
  if (!(L.roots().cartan == cartan_from_label("A" + std::to_string(l))))
    throw UnsupportedType("trace oracle needs a simple algebra of type A");
  std::vector<Matrix> rho(L.dim(), Matrix(N, N));
  std::vector<bool> done(L.dim(), false);
  for (std::size_t i = 0; i < l; ++i) {
    rho[L.pos_index(i)](i, i + 1) = 1;
    rho[L.neg_index(i)](i + 1, i) = 1;
    rho[L.cartan_index(i)](i, i) = 1;
    rho[L.cartan_index(i)](i + 1, i + 1) = -1;
    done[L.pos_index(i)] = done[L.neg_index(i)] = done[L.cartan_index(i)] = true;
  }
  auto commutator = [](const Matrix &a, const Matrix &b) {
    Matrix ab = a * b, ba = b * a, c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j)
        c(i, j) = ab(i, j) - ba(i, j);
    return c;
  };
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t a = 0; a < L.dim(); ++a)
      for (std::size_t b = 0; b < L.dim(); ++b) {
        if (!done[a] || !done[b])
          continue;
        const auto &row = L.bracket_basis(a, b);
        if (row.size() != 1 || done[row[0].first])
          continue;
        Matrix c = commutator(rho[a], rho[b]);
        Rational inv = 1 / row[0].second;
        for (std::size_t i = 0; i < N; ++i)
          for (std::size_t j = 0; j < N; ++j)
            c(i, j) *= inv;
        rho[row[0].first] = c;
        done[row[0].first] = true;
        progress = true;
      }
  }
  for (std::size_t a = 0; a < L.dim(); ++a)
    if (!done[a])
      throw ConstructionFailure("type A realization is incomplete");
  for (std::size_t a = 0; a < L.dim(); ++a)
    for (std::size_t b = 0; b < L.dim(); ++b) {
      Matrix expect(N, N);
      for (const auto &[c, v] : L.bracket_basis(a, b))
        for (std::size_t i = 0; i < N; ++i)
          for (std::size_t j = 0; j < N; ++j)
            expect(i, j) += v * rho[c](i, j);
      if (!(commutator(rho[a], rho[b]) == expect))
        throw ConstructionFailure("type A realization is not a homomorphism");
    }
  return rho;
}

/// tr(x^k), k = 2..l+1, pulled back to Chevalley coordinates.
inline InvariantFamily trace_oracle_type_A(const LieAlgebra &L)
{
  auto rho = type_a_realization(L);
  const std::size_t N = L.rank() + 1, dim = L.dim();
  using PolyMatrix = std::vector<std::vector<Polynomial>>;
  PolyMatrix X(N, std::vector<Polynomial>(N, Polynomial(dim)));
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      Vec coeffs = zero_vec(dim);
      for (std::size_t a = 0; a < dim; ++a)
        coeffs[a] = rho[a](i, j);
      X[i][j] = Polynomial::linear(coeffs);
    }
  auto multiply = [&](const PolyMatrix &A, const PolyMatrix &B) {
    PolyMatrix C(N, std::vector<Polynomial>(N, Polynomial(dim)));
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) {
        PolynomialAccumulator acc(dim);
        for (std::size_t k = 0; k < N; ++k)
          acc.add_product(A[i][k], B[k][j]);
        C[i][j] = acc.result();
      }
    return C;
  };
  InvariantFamily fam;
  fam.provenance = "trace-oracle";
  PolyMatrix power = X;
  for (std::size_t k = 2; k <= N; ++k) {
    power = multiply(power, X);
    Polynomial tr(dim);
    for (std::size_t i = 0; i < N; ++i)
      tr += power[i][i];
    fam.generators.push_back(tr.primitive());
    fam.degrees.push_back(static_cast<int>(k));
  }
  return fam;
}

/// tr(x) in the type A realization; identically zero.
inline Polynomial trace_linear_type_A(const LieAlgebra &L)
{
  auto rho = type_a_realization(L);
  Vec coeffs = zero_vec(L.dim());
  for (std::size_t a = 0; a < L.dim(); ++a)
    for (std::size_t i = 0; i < L.rank() + 1; ++i)
      coeffs[a] += rho[a](i, i);
  return Polynomial::linear(coeffs);
}

} // namespace mfhess
