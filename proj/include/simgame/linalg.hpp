#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace simgame {

using IntVector = std::vector<mpz_class>;
using IntMatrix = std::vector<IntVector>;

// Positive multiple of v with integer entries (multiplies by the lcm of denominators).
inline IntVector scale_to_integers(const Vector& v) {
  mpz_class l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  IntVector out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = v[i].get_num() * (l / v[i].get_den());
  return out;
}

// Divides by the gcd of all entries (no-op for the zero vector).
inline void normalize_gcd(IntVector& v) {
  mpz_class g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g > 1)
    for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

// Solution of the square system a·x = b written as (numerators, common denominator > 0),
// or nullopt when a is singular. Fraction-free (Bareiss) elimination.
struct IntSolution {
  IntVector num;
  mpz_class den;
};

inline std::optional<IntSolution> solve_integer(IntMatrix a, IntVector b) {
  const size_t n = a.size();
  for (size_t i = 0; i < n; ++i) a[i].push_back(b[i]);
  mpz_class prev = 1;
  mpz_class tmp;
  for (size_t k = 0; k < n; ++k) {
    size_t p = k;
    while (p < n && a[p][k] == 0) ++p;
    if (p == n) return std::nullopt;
    if (p != k) {
      std::swap(a[p], a[k]);
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j <= n; ++j) {
        tmp = a[k][k] * a[i][j];
        tmp -= a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  // Back substitution in rationals; the system is small.
  Vector x(n);
  for (size_t ii = n; ii-- > 0;) {
    Rational s(a[ii][n]);
    for (size_t j = ii + 1; j < n; ++j) s -= Rational(a[ii][j]) * x[j];
    x[ii] = s / Rational(a[ii][ii]);
  }
  mpz_class l = 1;
  for (const auto& v : x) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  IntSolution sol{IntVector(n), l};
  for (size_t i = 0; i < n; ++i) sol.num[i] = x[i].get_num() * (l / x[i].get_den());
  return sol;
}

// Unique solution of a square rational system, or nullopt when singular.
inline std::optional<Vector> solve(const Matrix& a, const Vector& b) {
  IntMatrix ia;
  IntVector ib;
  for (size_t i = 0; i < a.size(); ++i) {
    Vector row = a[i];
    row.push_back(b[i]);
    IntVector r = scale_to_integers(row);
    ib.push_back(r.back());
    r.pop_back();
    ia.push_back(std::move(r));
  }
  auto sol = solve_integer(std::move(ia), std::move(ib));
  if (!sol) return std::nullopt;
  Vector x(sol->num.size());
  for (size_t i = 0; i < x.size(); ++i) {
    x[i] = Rational(sol->num[i], sol->den);
    x[i].canonicalize();
  }
  return x;
}

// Rank of a rational matrix.
inline size_t rank(Matrix a) {
  size_t r = 0;
  const size_t rows = a.size();
  const size_t cols = rows ? a[0].size() : 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (size_t i = r + 1; i < rows; ++i) {
      if (a[i][c] == 0) continue;
      Rational f = a[i][c] / a[r][c];
      for (size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

}  // namespace simgame
