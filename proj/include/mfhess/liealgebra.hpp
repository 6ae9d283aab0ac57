#pragma once

#include "mfhess/errors.hpp"
#include "mfhess/linalg.hpp"
#include "mfhess/rational.hpp"
#include "mfhess/rootdata.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace mfhess {

/// A basis triple on which an identity failed.
struct TripleWitness
{
  std::size_t a = 0, b = 0, c = 0;
  Vec residual;
};

/// Signed root in simple-root coordinates; negative roots have all entries <= 0.
using SignedRoot = std::vector<int>;

/// Semisimple Lie algebra in a Chevalley basis. Basis order: e_phi for the
/// positive roots (in root-system order), then h_1..h_l, then e_{-phi} in the
/// same order as the positive roots.
class LieAlgebra
{
public:
  LieAlgebra() = default;

  explicit LieAlgebra(RootSystem rs) : rs_(std::move(rs))
  {
    n_ = rs_.num_positive;
    l_ = rs_.rank;
    dim_ = l_ + 2 * n_;
    for (std::size_t k = 0; k < n_; ++k) {
      signed_index_[rs_.positive_roots[k]] = static_cast<long>(k) + 1;
      signed_index_[negate(rs_.positive_roots[k])] = -(static_cast<long>(k) + 1);
    }
    compute_structure_constants();
    build_table();
    if (l_ <= 3) {
      if (auto w = jacobi_violation())
        throw ConstructionFailure("Jacobi identity fails on basis triple (" + std::to_string(w->a) + "," +
                                  std::to_string(w->b) + "," + std::to_string(w->c) + ")");
    }
    compute_killing();
    killing_inverse_ = inverse(killing_);
  }

  const RootSystem &roots() const { return rs_; }
  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return l_; }
  std::size_t num_positive() const { return n_; }

  std::size_t pos_index(std::size_t k) const { return k; }
  std::size_t cartan_index(std::size_t i) const { return n_ + i; }
  std::size_t neg_index(std::size_t k) const { return n_ + l_ + k; }

  bool is_positive_index(std::size_t a) const { return a < n_; }
  bool is_cartan_index(std::size_t a) const { return a >= n_ && a < n_ + l_; }
  bool is_negative_index(std::size_t a) const { return a >= n_ + l_; }

  /// Root of a basis vector (zero vector for the Cartan part).
  SignedRoot root_of(std::size_t a) const
  {
    if (is_positive_index(a))
      return rs_.positive_roots[a];
    if (is_negative_index(a))
      return negate(rs_.positive_roots[a - n_ - l_]);
    return SignedRoot(l_, 0);
  }

  /// Height of the root of a basis vector; 0 on the Cartan part.
  int degree_of(std::size_t a) const { return height(root_of(a)); }

  /// Integer N_{r,s} with [e_r, e_s] = N_{r,s} e_{r+s}.
  int structure_constant(const SignedRoot &r, const SignedRoot &s) const { return N(r, s); }

  const SparseRow &bracket_basis(std::size_t a, std::size_t b) const { return table_[a * dim_ + b]; }

  Vec bracket(const Vec &x, const Vec &y) const
  {
    check(x);
    check(y);
    Vec out = zero_vec(dim_);
    for (std::size_t a = 0; a < dim_; ++a) {
      if (sgn(x[a]) == 0)
        continue;
      for (std::size_t b = 0; b < dim_; ++b) {
        if (sgn(y[b]) == 0)
          continue;
        const auto &row = table_[a * dim_ + b];
        if (row.empty())
          continue;
        Rational s = x[a] * y[b];
        for (const auto &[c, v] : row)
          out[c] += s * v;
      }
    }
    return out;
  }

  const Matrix &killing_gram() const { return killing_; }
  const Matrix &killing_gram_inverse() const { return killing_inverse_; }

  Rational killing(const Vec &x, const Vec &y) const
  {
    check(x);
    check(y);
    Rational s = 0;
    for (std::size_t a = 0; a < dim_; ++a) {
      if (sgn(x[a]) == 0)
        continue;
      for (std::size_t b = 0; b < dim_; ++b)
        if (sgn(y[b]) != 0 && sgn(killing_(a, b)) != 0)
          s += x[a] * killing_(a, b) * y[b];
    }
    return s;
  }

  /// Matrix of ad x; column b holds [x, X_b].
  Matrix ad(const Vec &x) const
  {
    check(x);
    Matrix m(dim_, dim_);
    for (std::size_t a = 0; a < dim_; ++a) {
      if (sgn(x[a]) == 0)
        continue;
      for (std::size_t b = 0; b < dim_; ++b)
        for (const auto &[c, v] : table_[a * dim_ + b])
          m(c, b) += x[a] * v;
    }
    return m;
  }

  std::vector<Vec> centralizer(const Vec &x) const { return nullspace(ad(x)); }

  bool is_regular(const Vec &x) const { return centralizer(x).size() == l_; }

  /// exp(ad n) applied to x for nilpotent n; throws if the series does not
  /// terminate within dim steps.
  Vec exp_ad(const Vec &n, const Vec &x) const
  {
    Vec sum = x, term = x;
    for (std::size_t k = 1; k <= dim_ + 1; ++k) {
      term = Rational(1, static_cast<long>(k)) * bracket(n, term);
      if (is_zero(term))
        return sum;
      sum = sum + term;
    }
    throw std::invalid_argument("exp_ad: element is not ad-nilpotent");
  }

  Vec basis_vector(std::size_t a) const { return unit_vec(dim_, a); }

  /// Element of h with the given coordinates in the h_i basis.
  Vec cartan_element(const Vec &coords) const
  {
    if (coords.size() != l_)
      throw DimensionMismatch("Cartan coordinates need rank many entries");
    Vec x = zero_vec(dim_);
    for (std::size_t i = 0; i < l_; ++i)
      x[cartan_index(i)] = coords[i];
    return x;
  }

  /// phi(x) for x in h, phi a signed root.
  Rational root_value(const SignedRoot &phi, const Vec &x) const
  {
    Rational s = 0;
    for (std::size_t i = 0; i < l_; ++i) {
      const Rational &hi = x[cartan_index(i)];
      if (sgn(hi) == 0)
        continue;
      s += hi * rs_.pairing_with_coroot(phi, i);
    }
    return s;
  }

  std::vector<std::size_t> negative_borel_indices() const
  {
    std::vector<std::size_t> idx;
    for (std::size_t a = n_; a < dim_; ++a)
      idx.push_back(a);
    return idx;
  }

  std::vector<std::size_t> borel_indices() const
  {
    std::vector<std::size_t> idx;
    for (std::size_t a = 0; a < n_ + l_; ++a)
      idx.push_back(a);
    return idx;
  }

  /// Indices spanning b_i: the Cartan part for i = 0, positive root vectors of
  /// height i otherwise.
  std::vector<std::size_t> layer_indices(int i) const
  {
    std::vector<std::size_t> idx;
    if (i == 0) {
      for (std::size_t k = 0; k < l_; ++k)
        idx.push_back(cartan_index(k));
      return idx;
    }
    for (std::size_t k = 0; k < n_; ++k)
      if (height(rs_.positive_roots[k]) == i)
        idx.push_back(k);
    return idx;
  }

  /// True when x is supported on the given basis indices.
  bool supported_on(const Vec &x, const std::vector<std::size_t> &idx) const
  {
    std::vector<bool> allowed(dim_, false);
    for (auto a : idx)
      allowed[a] = true;
    for (std::size_t a = 0; a < dim_; ++a)
      if (!allowed[a] && sgn(x[a]) != 0)
        return false;
    return true;
  }

  std::optional<TripleWitness> jacobi_violation() const
  {
    for (std::size_t a = 0; a < dim_; ++a)
      for (std::size_t b = a + 1; b < dim_; ++b)
        for (std::size_t c = b + 1; c < dim_; ++c) {
          Vec xa = basis_vector(a), xb = basis_vector(b), xc = basis_vector(c);
          Vec r = bracket(xa, bracket(xb, xc)) + bracket(xb, bracket(xc, xa)) + bracket(xc, bracket(xa, xb));
          if (!is_zero(r))
            return TripleWitness{a, b, c, r};
        }
    return std::nullopt;
  }

  /// ([X_a, X_b], X_c) + (X_b, [X_a, X_c]) on all basis triples.
  std::optional<TripleWitness> killing_invariance_violation() const
  {
    for (std::size_t a = 0; a < dim_; ++a)
      for (std::size_t b = 0; b < dim_; ++b)
        for (std::size_t c = 0; c < dim_; ++c) {
          Rational s = 0;
          for (const auto &[k, v] : table_[a * dim_ + b])
            s += v * killing_(k, c);
          for (const auto &[k, v] : table_[a * dim_ + c])
            s += v * killing_(b, k);
          if (sgn(s) != 0)
            return TripleWitness{a, b, c, Vec{s}};
        }
    return std::nullopt;
  }

  /// Canonical text of the sign convention: root order and the constants on
  /// all positive pairs.
  std::string convention_string() const
  {
    std::ostringstream os;
    os << "chevalley;order=height,desc-lex;extraspecial=+(p+1);roots=";
    for (const auto &r : rs_.positive_roots) {
      os << "(";
      for (std::size_t i = 0; i < r.size(); ++i)
        os << (i ? "," : "") << r[i];
      os << ")";
    }
    os << ";N=";
    for (const auto &[key, v] : positive_constants_)
      os << key.first << ":" << key.second << "=" << v << ";";
    return os.str();
  }

private:
  static SignedRoot negate(SignedRoot r)
  {
    for (auto &x : r)
      x = -x;
    return r;
  }

  static SignedRoot add(const SignedRoot &a, const SignedRoot &b)
  {
    SignedRoot r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
      r[i] = a[i] + b[i];
    return r;
  }

  static bool positive(const SignedRoot &r) { return height(r) > 0; }

  bool is_root(const SignedRoot &r) const { return signed_index_.count(r) > 0; }

  std::size_t order_of(const SignedRoot &r) const
  {
    return static_cast<std::size_t>(signed_index_.at(r) - 1);
  }

  int norm(const SignedRoot &r) const { return rs_.inner_product(r, r); }

  /// Largest p with s - p r a root.
  int string_p(const SignedRoot &r, const SignedRoot &s) const
  {
    int p = 0;
    SignedRoot cur = s;
    while (true) {
      for (std::size_t i = 0; i < cur.size(); ++i)
        cur[i] -= r[i];
      if (!is_root(cur))
        return p;
      ++p;
    }
  }

  int N(const SignedRoot &r, const SignedRoot &s) const
  {
    SignedRoot sum = add(r, s);
    if (!is_root(sum))
      return 0;
    bool pr = positive(r), ps = positive(s);
    if (pr && ps) {
      std::size_t ir = order_of(r), is = order_of(s);
      if (ir > is)
        return -N(s, r);
      return positive_constants_.at({ir, is});
    }
    if (!pr && !ps)
      return -N(negate(r), negate(s));
    // r + s + t = 0 with exactly one of r, s negative.
    SignedRoot t = negate(sum);
    Rational v;
    if (positive(t)) {
      if (pr) // N_{r,s}/(t,t) = N_{t,r}/(s,s)
        v = Rational(norm(t), norm(s)) * N(t, r);
      else // N_{r,s}/(t,t) = N_{s,t}/(r,r)
        v = Rational(norm(t), norm(r)) * N(s, t);
    } else {
      // Two negatives among r, s, t.
      if (pr) // s and t negative: N_{r,s}/(t,t) = N_{s,t}/(r,r)
        v = Rational(norm(t), norm(r)) * N(s, t);
      else // r and t negative: N_{r,s}/(t,t) = N_{t,r}/(s,s)
        v = Rational(norm(t), norm(s)) * N(t, r);
    }
    v.canonicalize();
    if (v.get_den() != 1)
      throw ConstructionFailure("non-integral structure constant");
    return static_cast<int>(v.get_num().get_si());
  }

  void compute_structure_constants()
  {
    const auto &roots = rs_.positive_roots;
    for (std::size_t k = 0; k < n_; ++k) {
      const SignedRoot &rho = roots[k];
      if (height(rho) < 2)
        continue;
      // Extraspecial pair: first alpha in the root order with rho - alpha positive.
      std::size_t ia = n_;
      for (std::size_t a = 0; a < k; ++a) {
        SignedRoot diff = add(rho, negate(roots[a]));
        if (positive(diff) && is_root(diff)) {
          ia = a;
          break;
        }
      }
      if (ia == n_)
        throw ConstructionFailure("no extraspecial pair for a non-simple root");
      const SignedRoot &alpha = roots[ia];
      SignedRoot beta = add(rho, negate(alpha));
      std::size_t ib = order_of(beta);
      int nab = string_p(alpha, beta) + 1;
      positive_constants_[{ia, ib}] = nab;
      // Remaining special pairs (xi, eta), xi before eta, xi + eta = rho.
      for (std::size_t x = ia + 1; x < k; ++x) {
        const SignedRoot &xi = roots[x];
        SignedRoot eta = add(rho, negate(xi));
        if (!positive(eta) || !is_root(eta))
          continue;
        std::size_t ie = order_of(eta);
        if (ie <= x)
          continue;
        SignedRoot ma = negate(alpha), mb = negate(beta);
        Rational acc = 0;
        SignedRoot ea = add(eta, ma);
        if (is_root(ea))
          acc += Rational(N(eta, ma) * N(xi, mb), norm(ea));
        SignedRoot xa = add(xi, ma);
        if (is_root(xa))
          acc += Rational(N(ma, xi) * N(eta, mb), norm(xa));
        Rational v = Rational(norm(rho), nab) * acc;
        v.canonicalize();
        if (v.get_den() != 1 || sgn(v) == 0)
          throw ConstructionFailure("structure constant resolution failed");
        int val = static_cast<int>(v.get_num().get_si());
        if (std::abs(val) != string_p(xi, eta) + 1)
          throw ConstructionFailure("structure constant has wrong magnitude");
        positive_constants_[{x, ie}] = val;
      }
    }
  }

  void build_table()
  {
    table_.assign(dim_ * dim_, {});
    auto put = [&](std::size_t a, std::size_t b, SparseRow row) {
      table_[a * dim_ + b] = row;
      for (auto &e : row)
        e.second = -e.second;
      table_[b * dim_ + a] = std::move(row);
    };
    auto index_of_root = [&](const SignedRoot &r) -> std::size_t {
      long s = signed_index_.at(r);
      return s > 0 ? pos_index(static_cast<std::size_t>(s - 1)) : neg_index(static_cast<std::size_t>(-s - 1));
    };
    std::vector<std::size_t> root_indices;
    for (std::size_t k = 0; k < n_; ++k) {
      root_indices.push_back(pos_index(k));
      root_indices.push_back(neg_index(k));
    }
    // [h_i, e_phi] = phi(h_i) e_phi
    for (std::size_t i = 0; i < l_; ++i)
      for (auto a : root_indices) {
        int c = rs_.pairing_with_coroot(root_of(a), i);
        if (c != 0)
          put(cartan_index(i), a, SparseRow{{a, Rational(c)}});
      }
    for (std::size_t x = 0; x < root_indices.size(); ++x)
      for (std::size_t y = x + 1; y < root_indices.size(); ++y) {
        std::size_t a = root_indices[x], b = root_indices[y];
        SignedRoot r = root_of(a), s = root_of(b);
        SignedRoot sum = add(r, s);
        bool zero_sum = std::all_of(sum.begin(), sum.end(), [](int v) { return v == 0; });
        if (zero_sum) {
          // [e_r, e_{-r}] = h_r, the coroot, written in the h_i basis.
          SparseRow row;
          int rr = norm(r);
          for (std::size_t i = 0; i < l_; ++i) {
            if (r[i] == 0)
              continue;
            Rational c(r[i] * rs_.inner[i][i], rr);
            c.canonicalize();
            row.emplace_back(cartan_index(i), c);
          }
          put(a, b, std::move(row));
          continue;
        }
        if (!is_root(sum))
          continue;
        int c = N(r, s);
        put(a, b, SparseRow{{index_of_root(sum), Rational(c)}});
      }
  }

  void compute_killing()
  {
    killing_ = Matrix(dim_, dim_);
    for (std::size_t a = 0; a < dim_; ++a)
      for (std::size_t b = a; b < dim_; ++b) {
        // tr(ad X_a ad X_b) = sum_d sum_c [X_a, X_d]_c [X_b, X_c]_d
        Rational s = 0;
        for (std::size_t d = 0; d < dim_; ++d)
          for (const auto &[c, v] : table_[a * dim_ + d])
            for (const auto &[d2, w] : table_[b * dim_ + c])
              if (d2 == d)
                s += v * w;
        killing_(a, b) = s;
        killing_(b, a) = s;
      }
  }

  void check(const Vec &x) const
  {
    if (x.size() != dim_)
      throw DimensionMismatch("element has " + std::to_string(x.size()) + " coordinates, algebra has dimension " +
                              std::to_string(dim_));
  }

  RootSystem rs_;
  std::size_t n_ = 0, l_ = 0, dim_ = 0;
  std::map<SignedRoot, long> signed_index_;
  std::map<std::pair<std::size_t, std::size_t>, int> positive_constants_;
  std::vector<SparseRow> table_;
  Matrix killing_, killing_inverse_;
};

/// Chevalley realization of the algebra with the given root system.
inline LieAlgebra chevalley_algebra(const RootSystem &rs) { return LieAlgebra(rs); }

} // namespace mfhess
