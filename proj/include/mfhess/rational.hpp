#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mfhess {

using Rational = mpq_class;
using Integer = mpz_class;

/// A point or vector in a coordinate space, exact.
using Vec = std::vector<Rational>;

inline Rational make_rational(long num, long den = 1)
{
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "num/den", "num" or "-num/den". Whitespace around the token is ignored.
inline Rational parse_rational(std::string_view text)
{
  std::string s(text);
  auto first = s.find_first_not_of(" \t\r\n");
  auto last = s.find_last_not_of(" \t\r\n");
  if (first == std::string::npos)
    throw std::invalid_argument("empty rational literal");
  s = s.substr(first, last - first + 1);
  if (!s.empty() && s.front() == '+')
    s.erase(0, 1);
  Rational q;
  if (q.set_str(s, 10) != 0)
    throw std::invalid_argument("malformed rational literal: " + std::string(text));
  if (q.get_den() == 0)
    throw std::invalid_argument("zero denominator: " + std::string(text));
  q.canonicalize();
  return q;
}

/// Canonical "num/den" text; the denominator is always written.
inline std::string format_rational(const Rational &q)
{
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Shorter form for human-facing output: integers print without "/1".
inline std::string format_rational_short(const Rational &q)
{
  if (q.get_den() == 1)
    return q.get_num().get_str();
  return format_rational(q);
}

inline std::vector<Rational> parse_rational_list(std::string_view text, char sep = ',')
{
  std::vector<Rational> out;
  std::string token;
  std::istringstream in{std::string(text)};
  while (std::getline(in, token, sep))
    out.push_back(parse_rational(token));
  return out;
}

inline bool is_zero(const Vec &v)
{
  for (const auto &c : v)
    if (sgn(c) != 0)
      return false;
  return true;
}

inline Vec zero_vec(std::size_t n) { return Vec(n, Rational(0)); }

inline Vec unit_vec(std::size_t n, std::size_t i)
{
  Vec v = zero_vec(n);
  v.at(i) = 1;
  return v;
}

inline Vec operator+(const Vec &a, const Vec &b)
{
  if (a.size() != b.size())
    throw std::invalid_argument("vector size mismatch");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r[i] = a[i] + b[i];
  return r;
}

inline Vec operator-(const Vec &a, const Vec &b)
{
  if (a.size() != b.size())
    throw std::invalid_argument("vector size mismatch");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r[i] = a[i] - b[i];
  return r;
}

inline Vec operator*(const Rational &s, const Vec &a)
{
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r[i] = s * a[i];
  return r;
}

inline Vec operator-(const Vec &a)
{
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r[i] = -a[i];
  return r;
}

inline std::string format_vec(const Vec &v)
{
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i)
      s += ",";
    s += format_rational_short(v[i]);
  }
  return s;
}

inline std::vector<std::string> vec_to_strings(const Vec &v)
{
  std::vector<std::string> out;
  out.reserve(v.size());
  for (const auto &c : v)
    out.push_back(format_rational(c));
  return out;
}

} // namespace mfhess
