#pragma once

#include "mfhess/errors.hpp"
#include "mfhess/rational.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace mfhess {

/// Integer Cartan matrix, a_ij = alpha_j(h_i) (Bourbaki convention).
struct CartanMatrix
{
  std::vector<std::vector<int>> entries;

  std::size_t rank() const { return entries.size(); }
  int operator()(std::size_t i, std::size_t j) const { return entries[i][j]; }
  bool operator==(const CartanMatrix &) const = default;
};

/// Checks the local Cartan axioms. Finiteness is decided later by the
/// reflection closure.
inline void validate_cartan(const CartanMatrix &cm)
{
  const std::size_t l = cm.rank();
  if (l == 0)
    throw InvalidCartan("empty Cartan matrix");
  for (const auto &row : cm.entries)
    if (row.size() != l)
      throw InvalidCartan("Cartan matrix is not square");
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j) {
      if (i == j && cm(i, j) != 2)
        throw InvalidCartan("diagonal entry is not 2");
      if (i != j && cm(i, j) > 0)
        throw InvalidCartan("positive off-diagonal entry");
      if (i != j && ((cm(i, j) == 0) != (cm(j, i) == 0)))
        throw InvalidCartan("zero pattern is not symmetric");
    }
}

namespace detail {

inline CartanMatrix simple_block(char series, int l)
{
  CartanMatrix cm{std::vector<std::vector<int>>(l, std::vector<int>(l, 0))};
  auto &a = cm.entries;
  for (int i = 0; i < l; ++i)
    a[i][i] = 2;
  auto link = [&](int i, int j) { a[i][j] = a[j][i] = -1; };
  switch (series) {
  case 'A':
    if (l < 1)
      throw UnsupportedType("A_n needs n >= 1");
    for (int i = 0; i + 1 < l; ++i)
      link(i, i + 1);
    break;
  case 'B':
  case 'C':
    if (l < 2)
      throw UnsupportedType("B_n/C_n need n >= 2");
    for (int i = 0; i + 1 < l; ++i)
      link(i, i + 1);
    if (series == 'B')
      a[l - 1][l - 2] = -2;
    else
      a[l - 2][l - 1] = -2;
    break;
  case 'D':
    if (l < 4)
      throw UnsupportedType("D_n needs n >= 4");
    for (int i = 0; i + 2 < l; ++i)
      link(i, i + 1);
    link(l - 3, l - 1);
    break;
  case 'G':
    if (l != 2)
      throw UnsupportedType("G has rank 2 only");
    a[0][1] = -3;
    a[1][0] = -1;
    break;
  case 'F':
    if (l != 4)
      throw UnsupportedType("F has rank 4 only");
    link(0, 1);
    link(2, 3);
    a[1][2] = -2;
    a[2][1] = -1;
    break;
  case 'E':
    if (l < 6 || l > 8)
      throw UnsupportedType("E_n needs 6 <= n <= 8");
    link(0, 2);
    link(1, 3);
    link(2, 3);
    for (int i = 3; i + 1 < l; ++i)
      link(i, i + 1);
    break;
  default:
    throw UnsupportedType(std::string("unknown series '") + series + "'");
  }
  return cm;
}

inline CartanMatrix block_diagonal(const std::vector<CartanMatrix> &blocks)
{
  std::size_t total = 0;
  for (const auto &b : blocks)
    total += b.rank();
  CartanMatrix cm{std::vector<std::vector<int>>(total, std::vector<int>(total, 0))};
  std::size_t off = 0;
  for (const auto &b : blocks) {
    for (std::size_t i = 0; i < b.rank(); ++i)
      for (std::size_t j = 0; j < b.rank(); ++j)
        cm.entries[off + i][off + j] = b(i, j);
    off += b.rank();
  }
  return cm;
}

} // namespace detail

/// Cartan matrix from a series label such as "A2", "B2", "G2" or "A1xA1".
inline CartanMatrix cartan_from_label(const std::string &label)
{
  std::vector<CartanMatrix> blocks;
  std::size_t pos = 0;
  while (pos < label.size()) {
    char series = static_cast<char>(std::toupper(static_cast<unsigned char>(label[pos])));
    ++pos;
    std::size_t end = pos;
    while (end < label.size() && std::isdigit(static_cast<unsigned char>(label[end])))
      ++end;
    if (end == pos)
      throw UnsupportedType("malformed type label '" + label + "'");
    blocks.push_back(detail::simple_block(series, std::stoi(label.substr(pos, end - pos))));
    pos = end;
    if (pos < label.size()) {
      if (label[pos] != 'x' && label[pos] != 'X' && label[pos] != '*')
        throw UnsupportedType("malformed type label '" + label + "'");
      ++pos;
      if (pos == label.size())
        throw UnsupportedType("malformed type label '" + label + "'");
    }
  }
  if (blocks.empty())
    throw UnsupportedType("empty type label");
  return detail::block_diagonal(blocks);
}

/// Integer vector over the simple roots.
using RootCoords = std::vector<int>;

inline int height(const RootCoords &r) { return std::accumulate(r.begin(), r.end(), 0); }

/// Conjugate (dual) partition, returned nonincreasing. Zero parts are ignored.
inline std::vector<int> dual_partition(std::vector<int> parts)
{
  std::sort(parts.begin(), parts.end(), std::greater<>());
  while (!parts.empty() && parts.back() <= 0)
    parts.pop_back();
  std::vector<int> dual;
  if (parts.empty())
    return dual;
  for (int k = 1; k <= parts.front(); ++k) {
    int count = 0;
    for (int p : parts)
      if (p >= k)
        ++count;
    dual.push_back(count);
  }
  return dual;
}

struct RootSystem
{
  CartanMatrix cartan;
  std::size_t rank = 0;
  /// Sorted by height, ties by descending lexicographic order so that the
  /// simple roots come first in their natural order.
  std::vector<RootCoords> positive_roots;
  std::size_t num_positive = 0;
  int coxeter_number = 0;
  std::vector<int> exponents;   ///< m_j, nondecreasing
  std::vector<int> degrees;     ///< d_j = m_j + 1, nondecreasing
  std::vector<int> layer_dims;  ///< r_1..r_h
  /// Symmetrized form on the simple roots, B(a_i, a_j) = d_i a_ij with
  /// positive integer d_i.
  std::vector<std::vector<int>> inner;

  std::size_t borel_dim() const { return rank + num_positive; }
  std::size_t algebra_dim() const { return rank + 2 * num_positive; }

  int inner_product(const RootCoords &a, const RootCoords &b) const
  {
    int s = 0;
    for (std::size_t i = 0; i < rank; ++i)
      for (std::size_t j = 0; j < rank; ++j)
        s += a[i] * inner[i][j] * b[j];
    return s;
  }

  /// <beta, alpha_i^vee> = beta(h_i).
  int pairing_with_coroot(const RootCoords &beta, std::size_t i) const
  {
    int s = 0;
    for (std::size_t j = 0; j < rank; ++j)
      s += beta[j] * cartan(i, j);
    return s;
  }

  std::optional<std::size_t> index_of(const RootCoords &r) const
  {
    auto it = std::find(positive_roots.begin(), positive_roots.end(), r);
    if (it == positive_roots.end())
      return std::nullopt;
    return static_cast<std::size_t>(it - positive_roots.begin());
  }

  std::vector<int> heights() const
  {
    std::vector<int> h;
    for (const auto &r : positive_roots)
      h.push_back(height(r));
    return h;
  }
};

struct DegreeData
{
  std::vector<int> degrees;
  std::vector<int> exponents;
  std::vector<int> layers;
};

/// Layer dimensions from the height multiset, degrees as the dual partition.
inline DegreeData degrees_and_layers(const RootSystem &rs)
{
  DegreeData out;
  int max_height = 0;
  for (const auto &r : rs.positive_roots)
    max_height = std::max(max_height, height(r));
  out.layers.push_back(static_cast<int>(rs.rank));
  for (int m = 2; m <= max_height + 1; ++m) {
    int count = 0;
    for (const auto &r : rs.positive_roots)
      if (height(r) == m - 1)
        ++count;
    out.layers.push_back(count);
  }
  out.degrees = dual_partition(out.layers);
  std::sort(out.degrees.begin(), out.degrees.end());
  for (int d : out.degrees)
    out.exponents.push_back(d - 1);
  return out;
}

namespace detail {

/// Positive integers d_i with d_i a_ij = d_j a_ji.
inline std::vector<int> symmetrizer(const CartanMatrix &cm)
{
  const std::size_t l = cm.rank();
  std::vector<Rational> d(l, Rational(0));
  for (std::size_t start = 0; start < l; ++start) {
    if (sgn(d[start]) != 0)
      continue;
    d[start] = 1;
    std::vector<std::size_t> stack{start};
    while (!stack.empty()) {
      std::size_t i = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < l; ++j) {
        if (i == j || cm(i, j) == 0)
          continue;
        Rational dj = d[i] * cm(i, j) / cm(j, i);
        if (sgn(d[j]) == 0) {
          d[j] = dj;
          stack.push_back(j);
        } else if (d[j] != dj) {
          throw InvalidCartan("Cartan matrix is not symmetrizable");
        }
      }
    }
  }
  Integer lcm = 1;
  for (const auto &x : d)
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den().get_mpz_t());
  std::vector<int> out;
  for (const auto &x : d) {
    Rational s = x * lcm;
    out.push_back(static_cast<int>(s.get_num().get_si()));
  }
  return out;
}

} // namespace detail

/// Positive roots by reflection closure, one height at a time.
inline RootSystem build_root_system(const CartanMatrix &cm)
{
  validate_cartan(cm);
  const std::size_t l = cm.rank();
  RootSystem rs;
  rs.cartan = cm;
  rs.rank = l;

  auto d = detail::symmetrizer(cm);
  rs.inner.assign(l, std::vector<int>(l, 0));
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j)
      rs.inner[i][j] = d[i] * cm(i, j);

  std::vector<std::vector<RootCoords>> by_height(2);
  for (std::size_t i = 0; i < l; ++i) {
    RootCoords r(l, 0);
    r[i] = 1;
    by_height[1].push_back(r);
  }
  auto is_root = [&](const RootCoords &r) {
    int ht = height(r);
    if (ht <= 0 || ht >= static_cast<int>(by_height.size()))
      return false;
    const auto &layer = by_height[ht];
    return std::find(layer.begin(), layer.end(), r) != layer.end();
  };

  const int bound = static_cast<int>(10 * l * l);
  for (int ht = 1;; ++ht) {
    if (ht > bound)
      throw NonFiniteType("reflection closure exceeded height bound " + std::to_string(bound));
    std::vector<RootCoords> next;
    for (const auto &beta : by_height[ht]) {
      for (std::size_t i = 0; i < l; ++i) {
        // alpha_i-string through beta: beta - q a_i, ..., beta + p a_i with q - p = <beta, a_i^vee>.
        int q = 0;
        RootCoords down = beta;
        while (true) {
          down[i] -= 1;
          if (!is_root(down))
            break;
          ++q;
        }
        int p = q - rs.pairing_with_coroot(beta, i);
        if (p <= 0)
          continue;
        RootCoords up = beta;
        up[i] += 1;
        if (std::find(next.begin(), next.end(), up) == next.end())
          next.push_back(up);
      }
    }
    if (next.empty())
      break;
    by_height.push_back(std::move(next));
  }

  for (std::size_t ht = 1; ht < by_height.size(); ++ht) {
    auto layer = by_height[ht];
    std::sort(layer.begin(), layer.end(), std::greater<>());
    for (auto &r : layer)
      rs.positive_roots.push_back(std::move(r));
  }
  rs.num_positive = rs.positive_roots.size();
  auto dd = degrees_and_layers(rs);
  rs.degrees = dd.degrees;
  rs.exponents = dd.exponents;
  rs.layer_dims = dd.layers;
  rs.coxeter_number = rs.degrees.empty() ? 0 : rs.degrees.back();
  return rs;
}

} // namespace mfhess
