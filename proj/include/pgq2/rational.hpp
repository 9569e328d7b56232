#pragma once

// Exact arithmetic on small dense 4x4 matrices over Q.

#include <array>
#include <cctype>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pgq2/error.hpp"

namespace pgq2 {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

template <class T>
using Matrix4 = std::array<std::array<T, 4>, 4>;

using RationalMatrix4 = Matrix4<Rational>;
using IntegerMatrix4 = Matrix4<Integer>;

inline bool is_integral(const Rational& x) { return denominator(x) == 1; }

// Always "p/q", including "n/1" for integers.
inline std::string to_fraction_string(const Rational& x) {
  return numerator(x).str() + "/" + denominator(x).str();
}

// Accepts "p", "-p", "p/q", "-p/q" with decimal digits and q != 0.
inline Rational parse_rational(std::string_view text) {
  auto bad = [&](const std::string& why) {
    return input_error("invalid rational \"" + std::string(text) + "\": " + why);
  };
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  auto parse_int = [&](std::string_view s, bool allow_sign) {
    s = trim(s);
    std::string digits(s);
    std::size_t start = 0;
    if (allow_sign && !digits.empty() && (digits[0] == '-' || digits[0] == '+')) start = 1;
    if (start == digits.size()) throw bad("missing digits");
    for (std::size_t i = start; i < digits.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(digits[i]))) throw bad("unexpected character");
    if (digits[0] == '+') digits.erase(0, 1);
    return Integer(digits);
  };
  text = trim(text);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text, true));
  Integer p = parse_int(text.substr(0, slash), true);
  Integer q = parse_int(text.substr(slash + 1), false);
  if (q == 0) throw bad("zero denominator");
  return Rational(p, q);
}

// 16 comma-separated rationals, row-major.
inline RationalMatrix4 parse_matrix(std::string_view text) {
  std::vector<Rational> values;
  std::size_t pos = 0;
  while (true) {
    auto comma = text.find(',', pos);
    values.push_back(parse_rational(text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (values.size() != 16)
    throw input_error("a matrix needs 16 comma-separated rationals, got " + std::to_string(values.size()));
  RationalMatrix4 m;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) m[i][j] = values[4 * i + j];
  return m;
}

inline std::vector<std::string> to_fraction_strings(const RationalMatrix4& m) {
  std::vector<std::string> out;
  for (const auto& row : m)
    for (const auto& x : row) out.push_back(to_fraction_string(x));
  return out;
}

template <class T>
Matrix4<T> identity4() {
  Matrix4<T> m{};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) m[i][j] = T(0);
    m[i][i] = T(1);
  }
  return m;
}

template <class T>
Matrix4<T> multiply(const Matrix4<T>& a, const Matrix4<T>& b) {
  Matrix4<T> c{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      T s(0);
      for (std::size_t k = 0; k < 4; ++k) s += a[i][k] * b[k][j];
      c[i][j] = s;
    }
  return c;
}

template <class T>
Matrix4<T> transpose(const Matrix4<T>& a) {
  Matrix4<T> t{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) t[i][j] = a[j][i];
  return t;
}

// Gauss-Jordan over Q.
inline RationalMatrix4 inverse(const RationalMatrix4& a) {
  RationalMatrix4 m = a;
  RationalMatrix4 inv = identity4<Rational>();
  for (std::size_t col = 0; col < 4; ++col) {
    std::size_t pivot = col;
    while (pivot < 4 && m[pivot][col] == 0) ++pivot;
    if (pivot == 4) throw input_error("matrix is singular");
    std::swap(m[pivot], m[col]);
    std::swap(inv[pivot], inv[col]);
    Rational p = m[col][col];
    for (std::size_t j = 0; j < 4; ++j) {
      m[col][j] /= p;
      inv[col][j] /= p;
    }
    for (std::size_t r = 0; r < 4; ++r) {
      if (r == col || m[r][col] == 0) continue;
      Rational f = m[r][col];
      for (std::size_t j = 0; j < 4; ++j) {
        m[r][j] -= f * m[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

inline RationalMatrix4 to_rational(const Matrix4<long long>& a) {
  RationalMatrix4 m;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) m[i][j] = Rational(a[i][j]);
  return m;
}

}  // namespace pgq2
