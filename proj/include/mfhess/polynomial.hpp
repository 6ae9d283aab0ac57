#pragma once

#include "mfhess/errors.hpp"
#include "mfhess/rational.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace mfhess {

/// Exponent vector packed four bits per variable, variable 0 in the most
/// significant nibble. Supports up to 32 variables and total degree 15, which
/// covers every algebra and every bracket the verifier forms.
class Monomial
{
public:
  static constexpr std::size_t kMaxVars = 32;
  static constexpr unsigned kMaxDegree = 15;

  Monomial() = default;

  static Monomial from_exponents(const std::vector<unsigned> &exps)
  {
    if (exps.size() > kMaxVars)
      throw std::length_error("too many variables for Monomial");
    Monomial m;
    unsigned total = 0;
    for (std::size_t v = 0; v < exps.size(); ++v) {
      total += exps[v];
      if (exps[v] > kMaxDegree || total > kMaxDegree)
        throw std::overflow_error("monomial degree exceeds 15");
      m.set(v, exps[v]);
    }
    return m;
  }

  static Monomial variable(std::size_t v)
  {
    Monomial m;
    m.set(v, 1);
    return m;
  }

  unsigned exponent(std::size_t v) const
  {
    return static_cast<unsigned>((words_[v / 16] >> shift(v)) & 0xFu);
  }

  unsigned degree() const
  {
    unsigned d = 0;
    for (auto w : words_)
      for (int k = 0; k < 16; ++k)
        d += static_cast<unsigned>((w >> (4 * k)) & 0xFu);
    return d;
  }

  std::vector<unsigned> exponents(std::size_t nvars) const
  {
    std::vector<unsigned> e(nvars);
    for (std::size_t v = 0; v < nvars; ++v)
      e[v] = exponent(v);
    return e;
  }

  Monomial operator*(const Monomial &o) const
  {
    if (degree() + o.degree() > kMaxDegree)
      throw std::overflow_error("monomial product degree exceeds 15");
    Monomial r;
    r.words_[0] = words_[0] + o.words_[0];
    r.words_[1] = words_[1] + o.words_[1];
    return r;
  }

  /// This monomial with the exponent of `v` lowered by one (caller checks > 0).
  Monomial lowered(std::size_t v) const
  {
    Monomial r = *this;
    r.words_[v / 16] -= std::uint64_t{1} << shift(v);
    return r;
  }

  bool operator==(const Monomial &) const = default;

  /// Canonical order: ascending total degree, then descending lexicographic
  /// order of the exponent vector.
  bool operator<(const Monomial &o) const
  {
    unsigned da = degree(), db = o.degree();
    if (da != db)
      return da < db;
    if (words_[0] != o.words_[0])
      return words_[0] > o.words_[0];
    return words_[1] > o.words_[1];
  }

  std::size_t hash() const
  {
    std::uint64_t h = words_[0] * 0x9E3779B97F4A7C15ull;
    h ^= words_[1] + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }

private:
  static unsigned shift(std::size_t v) { return static_cast<unsigned>(4 * (15 - v % 16)); }

  void set(std::size_t v, unsigned e)
  {
    auto &w = words_[v / 16];
    w &= ~(std::uint64_t{0xF} << shift(v));
    w |= std::uint64_t{e} << shift(v);
  }

  std::array<std::uint64_t, 2> words_{0, 0};
};

struct MonomialHash
{
  std::size_t operator()(const Monomial &m) const { return m.hash(); }
};

using Term = std::pair<Monomial, Rational>;

/// Exact sparse polynomial in a fixed number of variables. Terms are kept in
/// canonical monomial order with no zero coefficients.
class Polynomial
{
public:
  Polynomial() = default;
  explicit Polynomial(std::size_t nvars) : nvars_(nvars) { check_vars(); }

  static Polynomial constant(std::size_t nvars, const Rational &c)
  {
    Polynomial p(nvars);
    if (sgn(c) != 0)
      p.terms_.emplace_back(Monomial{}, c);
    return p;
  }

  static Polynomial variable(std::size_t nvars, std::size_t v)
  {
    Polynomial p(nvars);
    p.terms_.emplace_back(Monomial::variable(v), Rational(1));
    return p;
  }

  /// The linear form sum_v coeffs[v] x_v.
  static Polynomial linear(const Vec &coeffs)
  {
    Polynomial p(coeffs.size());
    for (std::size_t v = 0; v < coeffs.size(); ++v)
      if (sgn(coeffs[v]) != 0)
        p.terms_.emplace_back(Monomial::variable(v), coeffs[v]);
    p.normalize();
    return p;
  }

  static Polynomial from_terms(std::size_t nvars, std::vector<Term> terms)
  {
    Polynomial p(nvars);
    p.terms_ = std::move(terms);
    p.normalize();
    return p;
  }

  std::size_t nvars() const { return nvars_; }
  const std::vector<Term> &terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  /// Total degree; -1 for the zero polynomial.
  int degree() const
  {
    int d = -1;
    for (const auto &t : terms_)
      d = std::max(d, static_cast<int>(t.first.degree()));
    return d;
  }

  bool is_homogeneous() const
  {
    if (terms_.empty())
      return true;
    unsigned d = terms_.front().first.degree();
    return std::all_of(terms_.begin(), terms_.end(), [d](const Term &t) { return t.first.degree() == d; });
  }

  Polynomial homogeneous_part(unsigned d) const
  {
    Polynomial p(nvars_);
    for (const auto &t : terms_)
      if (t.first.degree() == d)
        p.terms_.push_back(t);
    return p;
  }

  Rational coefficient(const Monomial &m) const
  {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term &t, const Monomial &k) { return t.first < k; });
    if (it != terms_.end() && it->first == m)
      return it->second;
    return 0;
  }

  bool operator==(const Polynomial &o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

  Polynomial operator+(const Polynomial &o) const { return combine(o, Rational(1)); }
  Polynomial operator-(const Polynomial &o) const { return combine(o, Rational(-1)); }
  Polynomial operator-() const { return scaled(Rational(-1)); }

  Polynomial &operator+=(const Polynomial &o) { return *this = *this + o; }
  Polynomial &operator-=(const Polynomial &o) { return *this = *this - o; }

  Polynomial scaled(const Rational &s) const
  {
    Polynomial p(nvars_);
    if (sgn(s) == 0)
      return p;
    p.terms_ = terms_;
    for (auto &t : p.terms_)
      t.second *= s;
    return p;
  }

  Polynomial operator*(const Polynomial &o) const
  {
    same_ring(o);
    std::unordered_map<Monomial, Rational, MonomialHash> acc;
    acc.reserve(terms_.size() * o.terms_.size());
    for (const auto &a : terms_)
      for (const auto &b : o.terms_)
        acc[a.first * b.first] += a.second * b.second;
    return from_map(nvars_, acc);
  }

  Polynomial pow(unsigned k) const
  {
    Polynomial r = constant(nvars_, 1);
    for (unsigned i = 0; i < k; ++i)
      r = r * *this;
    return r;
  }

  /// Partial derivative in variable v.
  Polynomial derivative(std::size_t v) const
  {
    Polynomial p(nvars_);
    for (const auto &t : terms_) {
      unsigned e = t.first.exponent(v);
      if (e == 0)
        continue;
      p.terms_.emplace_back(t.first.lowered(v), t.second * e);
    }
    p.normalize();
    return p;
  }

  /// Directional derivative sum_v y_v d/dx_v.
  Polynomial directional_derivative(const Vec &y) const
  {
    check_point(y);
    std::unordered_map<Monomial, Rational, MonomialHash> acc;
    for (const auto &t : terms_)
      for (std::size_t v = 0; v < nvars_; ++v) {
        unsigned e = t.first.exponent(v);
        if (e == 0 || sgn(y[v]) == 0)
          continue;
        acc[t.first.lowered(v)] += t.second * e * y[v];
      }
    return from_map(nvars_, acc);
  }

  Rational evaluate(const Vec &x) const
  {
    check_point(x);
    unsigned maxdeg = 0;
    for (const auto &t : terms_)
      maxdeg = std::max(maxdeg, t.first.degree());
    std::vector<std::vector<Rational>> powers(nvars_);
    for (std::size_t v = 0; v < nvars_; ++v) {
      powers[v].resize(maxdeg + 1);
      powers[v][0] = 1;
      for (unsigned k = 1; k <= maxdeg; ++k)
        powers[v][k] = powers[v][k - 1] * x[v];
    }
    Rational sum = 0;
    for (const auto &t : terms_) {
      Rational term = t.second;
      for (std::size_t v = 0; v < nvars_ && sgn(term) != 0; ++v) {
        unsigned e = t.first.exponent(v);
        if (e)
          term *= powers[v][e];
      }
      sum += term;
    }
    return sum;
  }

  /// Composition with a polynomial map: x_v -> images[v] (all in one ring).
  Polynomial substitute(const std::vector<Polynomial> &images) const
  {
    if (images.size() != nvars_)
      throw DimensionMismatch("substitution needs one image per variable");
    if (images.empty())
      return *this;
    const std::size_t out_vars = images.front().nvars();
    std::vector<std::vector<Polynomial>> powers(nvars_);
    auto power = [&](std::size_t v, unsigned e) -> const Polynomial & {
      auto &pv = powers[v];
      if (pv.empty())
        pv.push_back(constant(out_vars, 1));
      while (pv.size() <= e)
        pv.push_back(pv.back() * images[v]);
      return pv[e];
    };
    std::unordered_map<Monomial, Rational, MonomialHash> acc;
    for (const auto &t : terms_) {
      Polynomial prod = constant(out_vars, t.second);
      for (std::size_t v = 0; v < nvars_ && !prod.is_zero(); ++v) {
        unsigned e = t.first.exponent(v);
        if (e)
          prod = prod * power(v, e);
      }
      for (const auto &pt : prod.terms_)
        acc[pt.first] += pt.second;
    }
    return from_map(out_vars, acc);
  }

  /// Coefficient vector over a fixed list of monomials (for rank tests).
  Vec coefficients_on(const std::vector<Monomial> &basis) const
  {
    Vec v = zero_vec(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i)
      v[i] = coefficient(basis[i]);
    return v;
  }

  /// Makes coefficients coprime integers with a positive leading coefficient.
  Polynomial primitive() const
  {
    if (terms_.empty())
      return *this;
    Integer den_lcm = 1, num_gcd = 0;
    for (const auto &t : terms_)
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.second.get_den().get_mpz_t());
    for (const auto &t : terms_) {
      Rational s = t.second * den_lcm;
      mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), s.get_num().get_mpz_t());
    }
    Rational factor(den_lcm, num_gcd);
    factor.canonicalize();
    if (sgn(terms_.front().second) < 0)
      factor = -factor;
    return scaled(factor);
  }

  template <class Map>
  static Polynomial from_map(std::size_t nvars, const Map &acc)
  {
    Polynomial p(nvars);
    p.terms_.reserve(acc.size());
    for (const auto &[m, c] : acc)
      if (sgn(c) != 0)
        p.terms_.emplace_back(m, c);
    std::sort(p.terms_.begin(), p.terms_.end(), [](const Term &a, const Term &b) { return a.first < b.first; });
    return p;
  }

private:
  void check_vars() const
  {
    if (nvars_ > Monomial::kMaxVars)
      throw std::length_error("polynomial ring supports at most 32 variables");
  }

  void check_point(const Vec &x) const
  {
    if (x.size() != nvars_)
      throw DimensionMismatch("point has " + std::to_string(x.size()) + " coordinates, ring has " +
                              std::to_string(nvars_) + " variables");
  }

  void same_ring(const Polynomial &o) const
  {
    if (o.nvars_ != nvars_)
      throw DimensionMismatch("polynomials live in different rings");
  }

  void normalize()
  {
    std::sort(terms_.begin(), terms_.end(), [](const Term &a, const Term &b) { return a.first < b.first; });
    std::vector<Term> merged;
    merged.reserve(terms_.size());
    for (auto &t : terms_) {
      if (!merged.empty() && merged.back().first == t.first)
        merged.back().second += t.second;
      else
        merged.push_back(std::move(t));
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(), [](const Term &t) { return sgn(t.second) == 0; }),
                 merged.end());
    terms_ = std::move(merged);
  }

  Polynomial combine(const Polynomial &o, const Rational &sign) const
  {
    same_ring(o);
    Polynomial p(nvars_);
    p.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
      if (j == o.terms_.size() || (i < terms_.size() && terms_[i].first < o.terms_[j].first)) {
        p.terms_.push_back(terms_[i++]);
      } else if (i == terms_.size() || o.terms_[j].first < terms_[i].first) {
        p.terms_.emplace_back(o.terms_[j].first, sign * o.terms_[j].second);
        ++j;
      } else {
        Rational c = terms_[i].second + sign * o.terms_[j].second;
        if (sgn(c) != 0)
          p.terms_.emplace_back(terms_[i].first, std::move(c));
        ++i;
        ++j;
      }
    }
    return p;
  }

  std::size_t nvars_ = 0;
  std::vector<Term> terms_;
};

/// Accumulates many products into one hash table before sorting once.
class PolynomialAccumulator
{
public:
  explicit PolynomialAccumulator(std::size_t nvars) : nvars_(nvars) {}

  void add_product(const Polynomial &a, const Polynomial &b, const Rational &scale = Rational(1))
  {
    for (const auto &ta : a.terms())
      for (const auto &tb : b.terms()) {
        auto &slot = acc_[ta.first * tb.first];
        if (scale == 1)
          slot += ta.second * tb.second;
        else
          slot += scale * ta.second * tb.second;
      }
  }

  void add(const Polynomial &a, const Rational &scale = Rational(1))
  {
    for (const auto &t : a.terms())
      acc_[t.first] += scale * t.second;
  }

  Polynomial result() const { return Polynomial::from_map(nvars_, acc_); }

private:
  std::size_t nvars_;
  std::unordered_map<Monomial, Rational, MonomialHash> acc_;
};

/// Canonical serialization: a list of (exponent vector, "num/den") pairs in
/// canonical monomial order.
struct SerializedTerm
{
  std::vector<unsigned> exponents;
  std::string coefficient;
};

inline std::vector<SerializedTerm> serialize(const Polynomial &p)
{
  std::vector<SerializedTerm> out;
  out.reserve(p.size());
  for (const auto &t : p.terms())
    out.push_back({t.first.exponents(p.nvars()), format_rational(t.second)});
  return out;
}

inline Polynomial deserialize(std::size_t nvars, const std::vector<SerializedTerm> &terms)
{
  std::vector<Term> ts;
  ts.reserve(terms.size());
  for (const auto &st : terms) {
    if (st.exponents.size() != nvars)
      throw DimensionMismatch("serialized exponent vector has wrong length");
    ts.emplace_back(Monomial::from_exponents(st.exponents), parse_rational(st.coefficient));
  }
  return Polynomial::from_terms(nvars, std::move(ts));
}

/// Human-readable form, variables named x0, x1, ...
inline std::string to_string(const Polynomial &p)
{
  if (p.is_zero())
    return "0";
  std::string s;
  bool first = true;
  for (const auto &t : p.terms()) {
    const Rational &c = t.second;
    std::string cs = format_rational_short(abs(c));
    s += first ? (sgn(c) < 0 ? "-" : "") : (sgn(c) < 0 ? " - " : " + ");
    first = false;
    bool unit = (abs(c) == 1) && t.first.degree() > 0;
    if (!unit)
      s += cs;
    bool need_star = !unit;
    for (std::size_t v = 0; v < p.nvars(); ++v) {
      unsigned e = t.first.exponent(v);
      if (!e)
        continue;
      if (need_star)
        s += "*";
      s += "x" + std::to_string(v);
      if (e > 1)
        s += "^" + std::to_string(e);
      need_star = true;
    }
  }
  return s;
}

} // namespace mfhess
