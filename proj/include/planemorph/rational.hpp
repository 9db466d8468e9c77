#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace planemorph {

// exact rational scalar; every coordinate and every predicate runs on these,
// floating point appears only when formatting SVG output
using Rat = mpq_class;
using Int = mpz_class;

inline int sign(const Rat& v) { return sgn(v); }
inline int sign(const Int& v) { return sgn(v); }

inline Rat frac(long num, long den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Rat rat_abs(const Rat& v) { return v < 0 ? Rat(-v) : v; }

// strict grammar: [+-]? digits ( "/" digits | "." digits )?
// "1/3" stays 1/3, "0.1" becomes 1/10 exactly; nullopt on anything else
inline std::optional<Rat> parse_rat(const std::string& s) {
  size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
  auto digits = [&](size_t& j) {
    size_t start = j;
    while (j < s.size() && s[j] >= '0' && s[j] <= '9') ++j;
    return j > start;
  };
  size_t j = i;
  if (!digits(j)) return std::nullopt;
  Int num(s.substr(i, j - i));
  Int den(1);
  if (j < s.size() && s[j] == '/') {
    size_t k = ++j;
    if (!digits(j) || j != s.size()) return std::nullopt;
    den = Int(s.substr(k, j - k));
    if (den == 0) return std::nullopt;
  } else if (j < s.size() && s[j] == '.') {
    size_t k = ++j;
    if (!digits(j) || j != s.size()) return std::nullopt;
    std::string fracpart = s.substr(k, j - k);
    for (size_t d = 0; d < fracpart.size(); ++d) den *= 10;
    num = num * den + Int(fracpart);
  } else if (j != s.size()) {
    return std::nullopt;
  }
  Rat r(num, den);
  r.canonicalize();
  return neg ? Rat(-r) : r;
}

// canonical "p" or "p/q"
inline std::string rat_to_string(const Rat& v) { return v.get_str(); }

// exact square root when the radicand is a perfect rational square
inline std::optional<Rat> sqrt_exact(const Rat& v) {
  if (v < 0) return std::nullopt;
  const Int& p = v.get_num();
  const Int& q = v.get_den();
  if (!mpz_perfect_square_p(p.get_mpz_t()) || !mpz_perfect_square_p(q.get_mpz_t()))
    return std::nullopt;
  return Rat(sqrt(p), sqrt(q));
}

// rational r with 0 <= r <= sqrt(v) and sqrt(v) - r < 2^-64; requires v >= 0
inline Rat sqrt_lower(const Rat& v) {
  Int p = v.get_num(), q = v.get_den();
  Int scaled = p * q;
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 128);
  Int root = sqrt(scaled);
  Int den = q;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), 64);
  Rat r(root, den);
  r.canonicalize();
  return r;
}

}  // namespace planemorph
