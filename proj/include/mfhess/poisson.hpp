#pragma once

#include "mfhess/liealgebra.hpp"
#include "mfhess/polynomial.hpp"

#include <vector>

namespace mfhess {

/// Identification of g with its dual through the Killing form, plus the
/// Lie-Poisson tensor in Chevalley coordinates.
class GradientContext
{
public:
  explicit GradientContext(const LieAlgebra &L) : L_(&L), dim_(L.dim())
  {
    if (dim_ > Monomial::kMaxVars)
      throw UnsupportedType("algebra dimension exceeds the polynomial ring limit");
    const Matrix &kinv = L.killing_gram_inverse();
    // L_ab(x) = (x, [X_a, X_b]) = sum_c x_c (K [X_a, X_b])_c
    std::vector<Vec> structure(dim_ * dim_, zero_vec(dim_));
    for (std::size_t a = 0; a < dim_; ++a)
      for (std::size_t b = 0; b < dim_; ++b)
        for (const auto &[c, v] : L.bracket_basis(a, b))
          for (std::size_t k = 0; k < dim_; ++k)
            if (sgn(L.killing_gram()(k, c)) != 0)
              structure[a * dim_ + b][k] += v * L.killing_gram()(k, c);
    // Pi = Kinv L Kinv, entrywise linear forms.
    std::vector<Vec> tmp(dim_ * dim_, zero_vec(dim_));
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t a = 0; a < dim_; ++a) {
        if (sgn(kinv(i, a)) == 0)
          continue;
        for (std::size_t b = 0; b < dim_; ++b) {
          const Vec &s = structure[a * dim_ + b];
          if (is_zero(s))
            continue;
          tmp[i * dim_ + b] = tmp[i * dim_ + b] + kinv(i, a) * s;
        }
      }
    tensor_.assign(dim_ * dim_, Polynomial(dim_));
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) {
        Vec acc = zero_vec(dim_);
        for (std::size_t b = 0; b < dim_; ++b)
          if (sgn(kinv(b, j)) != 0 && !is_zero(tmp[i * dim_ + b]))
            acc = acc + kinv(b, j) * tmp[i * dim_ + b];
        tensor_[i * dim_ + j] = Polynomial::linear(acc);
      }
  }

  const LieAlgebra &algebra() const { return *L_; }
  std::size_t dim() const { return dim_; }

  /// Entry (a, b) of the Poisson tensor, a linear form in x.
  const Polynomial &tensor(std::size_t a, std::size_t b) const { return tensor_[a * dim_ + b]; }

  /// The linear function x -> (x, z).
  Polynomial linear_function(const Vec &z) const { return Polynomial::linear(L_->killing_gram() * z); }

  /// dp(x): the element with (dp(x), z) = d/dt p(x + t z) at t = 0.
  Vec gradient(const Polynomial &p, const Vec &x) const
  {
    Vec partials(dim_);
    for (std::size_t a = 0; a < dim_; ++a)
      partials[a] = p.derivative(a).evaluate(x);
    return L_->killing_gram_inverse() * partials;
  }

  /// Gradient as a vector of polynomials (coordinates of dp in the basis).
  std::vector<Polynomial> gradient_field(const Polynomial &p) const
  {
    std::vector<Polynomial> partials;
    for (std::size_t a = 0; a < dim_; ++a)
      partials.push_back(p.derivative(a));
    const Matrix &kinv = L_->killing_gram_inverse();
    std::vector<Polynomial> out;
    for (std::size_t i = 0; i < dim_; ++i) {
      PolynomialAccumulator acc(dim_);
      for (std::size_t a = 0; a < dim_; ++a)
        if (sgn(kinv(i, a)) != 0)
          acc.add(partials[a], kinv(i, a));
      out.push_back(acc.result());
    }
    return out;
  }

  /// [p, q](x) = (x, [dp(x), dq(x)]) as an exact polynomial.
  Polynomial poisson_bracket(const Polynomial &p, const Polynomial &q) const
  {
    std::vector<Polynomial> dp, dq;
    for (std::size_t a = 0; a < dim_; ++a) {
      dp.push_back(p.derivative(a));
      dq.push_back(q.derivative(a));
    }
    PolynomialAccumulator acc(dim_);
    for (std::size_t a = 0; a < dim_; ++a) {
      if (dp[a].is_zero())
        continue;
      for (std::size_t b = 0; b < dim_; ++b) {
        const Polynomial &t = tensor_[a * dim_ + b];
        if (t.is_zero() || dq[b].is_zero())
          continue;
        acc.add_product(dp[a] * t, dq[b]);
      }
    }
    return acc.result();
  }

  /// The derivation q -> [(., z), q] as a vector field: coefficient b is the
  /// linear form multiplying d/dx_b.
  std::vector<Polynomial> linear_derivation(const Vec &z) const
  {
    Vec coeff = L_->killing_gram() * z; // partials of (., z)
    std::vector<Polynomial> field(dim_, Polynomial(dim_));
    for (std::size_t b = 0; b < dim_; ++b) {
      PolynomialAccumulator acc(dim_);
      for (std::size_t a = 0; a < dim_; ++a)
        if (sgn(coeff[a]) != 0)
          acc.add(tensor_[a * dim_ + b], coeff[a]);
      field[b] = acc.result();
    }
    return field;
  }

  /// Applies a vector field sum_b c_b d/dx_b to q.
  Polynomial apply_field(const std::vector<Polynomial> &field, const Polynomial &q) const
  {
    PolynomialAccumulator acc(dim_);
    for (std::size_t b = 0; b < dim_; ++b) {
      if (field[b].is_zero())
        continue;
      Polynomial d = q.derivative(b);
      if (!d.is_zero())
        acc.add_product(field[b], d);
    }
    return acc.result();
  }

  /// (xi_p)_x = -[dp(x), x].
  Vec hamiltonian_at(const Polynomial &p, const Vec &x) const { return -L_->bracket(gradient(p, x), x); }

private:
  const LieAlgebra *L_;
  std::size_t dim_;
  std::vector<Polynomial> tensor_;
};

} // namespace mfhess
