#pragma once

// Brute-force reference implementations. They only use the data types of the
// library, never its solvers, so agreement is an independent check.

#include <random>
#include <set>
#include <vector>

#include "simgame/simgame.hpp"

namespace oracle {

using simgame::Matrix;
using simgame::MixedStrategy;
using simgame::NormalFormGame;
using simgame::PayoffPair;
using simgame::Rational;
using simgame::Vector;

inline Rational u1_at(const NormalFormGame& g, const Vector& x, const Vector& y) {
  Rational v = 0;
  for (size_t i = 0; i < x.size(); ++i)
    for (size_t j = 0; j < y.size(); ++j) v += x[i] * y[j] * g.u1[i][j];
  return v;
}

inline Rational u2_at(const NormalFormGame& g, const Vector& x, const Vector& y) {
  Rational v = 0;
  for (size_t i = 0; i < x.size(); ++i)
    for (size_t j = 0; j < y.size(); ++j) v += x[i] * y[j] * g.u2[i][j];
  return v;
}

inline Vector unit(size_t n, size_t k) {
  Vector v(n, Rational(0));
  v[k] = 1;
  return v;
}

// No pure deviation for either player improves on the profile.
inline bool no_deviation(const NormalFormGame& g, const Vector& x, const Vector& y) {
  Rational a = u1_at(g, x, y), b = u2_at(g, x, y);
  for (size_t i = 0; i < g.rows(); ++i)
    if (u1_at(g, unit(g.rows(), i), y) > a) return false;
  for (size_t j = 0; j < g.cols(); ++j)
    if (u2_at(g, x, unit(g.cols(), j)) > b) return false;
  return true;
}

// 2x2 extreme equilibria: each side is pure or the point making the other
// player indifferent (when that player is not indifferent everywhere).
inline std::set<std::pair<Vector, Vector>> extreme_equilibria_2x2(const NormalFormGame& g) {
  auto candidates = [](const Rational& a00, const Rational& a01, const Rational& a10, const Rational& a11) {
    // weight w on the second strategy of the mover; the other player compares
    // (1-w) a00 + w a10 against (1-w) a01 + w a11.
    std::vector<Vector> out = {{1, 0}, {0, 1}};
    Rational den = (a10 - a00) - (a11 - a01);
    if (den != 0) {
      Rational w = (a01 - a00) / den;
      if (w > 0 && w < 1) out.push_back({1 - w, w});
    }
    return out;
  };
  auto xs = candidates(g.u2[0][0], g.u2[0][1], g.u2[1][0], g.u2[1][1]);
  auto ys = candidates(g.u1[0][0], g.u1[1][0], g.u1[0][1], g.u1[1][1]);
  std::set<std::pair<Vector, Vector>> out;
  for (const auto& x : xs)
    for (const auto& y : ys)
      if (no_deviation(g, x, y)) out.insert({x, y});
  return out;
}

// Favourable best response payoff pair against y, computed from scratch.
inline std::pair<size_t, PayoffPair> favourable_reply(const NormalFormGame& g, const Vector& y) {
  std::optional<size_t> best;
  Rational b1, b2;
  for (size_t i = 0; i < g.rows(); ++i) {
    Rational v1 = u1_at(g, unit(g.rows(), i), y), v2 = u2_at(g, unit(g.rows(), i), y);
    if (!best || v1 > b1 || (v1 == b1 && v2 > b2)) {
      best = i;
      b1 = v1;
      b2 = v2;
    }
  }
  return {*best, {b1, b2}};
}

// All points of the simplex with denominators dividing `den`.
inline std::vector<Vector> simplex_grid(size_t n, long den) {
  std::vector<Vector> out;
  std::vector<long> c(n, 0);
  std::function<void(size_t, long)> rec = [&](size_t k, long left) {
    if (k + 1 == n) {
      c[k] = left;
      Vector v;
      for (long x : c) v.push_back(Rational(x, den));
      out.push_back(std::move(v));
      return;
    }
    for (long x = 0; x <= left; ++x) {
      c[k] = x;
      rec(k + 1, left - x);
    }
  };
  rec(0, den);
  return out;
}

inline Vector random_simplex_point(size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> d(0, 30);
  std::vector<long> w(n);
  long total = 0;
  while (total == 0) {
    total = 0;
    for (auto& x : w) total += (x = d(rng));
  }
  Vector v;
  for (long x : w) {
    Rational q(x, total);
    q.canonicalize();
    v.push_back(q);
  }
  return v;
}

inline NormalFormGame random_game(size_t rows, size_t cols, std::mt19937_64& rng, long lo = -5, long hi = 5) {
  std::uniform_int_distribution<long> d(lo, hi);
  NormalFormGame g;
  for (size_t i = 0; i < rows; ++i) g.s1_labels.push_back("r" + std::to_string(i));
  for (size_t j = 0; j < cols; ++j) g.s2_labels.push_back("c" + std::to_string(j));
  g.u1.assign(rows, Vector(cols));
  g.u2.assign(rows, Vector(cols));
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j) {
      g.u1[i][j] = d(rng);
      g.u2[i][j] = d(rng);
    }
  return g;
}

// Does the bipartite graph contain K_{k,k}? Tries every k-subset of A.
inline bool has_biclique(const simgame::BipartiteGraph& graph, size_t k) {
  const size_t A = graph.a_count, B = graph.b_count;
  if (k > A || k > B) return false;
  std::vector<bool> pick(A, false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(k), true);
  do {
    size_t common = 0;
    for (size_t b = 0; b < B; ++b) {
      bool all = true;
      for (size_t a = 0; a < A; ++a)
        if (pick[a] && !graph.has_edge(a, b)) all = false;
      common += all;
    }
    if (common >= k) return true;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return false;
}

}  // namespace oracle
