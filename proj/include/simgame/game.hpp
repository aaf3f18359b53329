#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace simgame {

struct PayoffPair {
  Rational u1 = 0;
  Rational u2 = 0;

  bool operator==(const PayoffPair& o) const { return u1 == o.u1 && u2 == o.u2; }
  bool operator!=(const PayoffPair& o) const { return !(*this == o); }
  bool operator<(const PayoffPair& o) const {
    if (u1 != o.u1) return u1 < o.u1;
    return u2 < o.u2;
  }
};

// Probability vector over one player's pure strategies. owner is 1 or 2.
struct MixedStrategy {
  int owner = 1;
  Vector probs;

  static MixedStrategy pure(int owner, size_t n, size_t index) {
    MixedStrategy s{owner, Vector(n, Rational(0))};
    s.probs.at(index) = 1;
    return s;
  }

  size_t size() const { return probs.size(); }
  const Rational& operator[](size_t i) const { return probs[i]; }

  std::vector<size_t> support() const {
    std::vector<size_t> out;
    for (size_t i = 0; i < probs.size(); ++i)
      if (probs[i] != 0) out.push_back(i);
    return out;
  }

  bool is_pure() const { return support().size() == 1; }

  bool valid() const {
    if (owner != 1 && owner != 2) return false;
    Rational total = 0;
    for (const auto& p : probs) {
      if (p < 0) return false;
      total += p;
    }
    return !probs.empty() && total == 1;
  }

  bool operator==(const MixedStrategy& o) const { return owner == o.owner && probs == o.probs; }
  bool operator!=(const MixedStrategy& o) const { return !(*this == o); }
  // Lexicographic by probability vector.
  bool operator<(const MixedStrategy& o) const {
    if (owner != o.owner) return owner < o.owner;
    return std::lexicographical_compare(probs.begin(), probs.end(), o.probs.begin(), o.probs.end());
  }
};

struct NormalFormGame {
  std::vector<std::string> s1_labels;
  std::vector<std::string> s2_labels;
  Matrix u1;
  Matrix u2;

  size_t rows() const { return s1_labels.size(); }
  size_t cols() const { return s2_labels.size(); }

  PayoffPair at(size_t i, size_t j) const { return {u1[i][j], u2[i][j]}; }

  std::vector<std::string> violations() const {
    std::vector<std::string> out;
    if (s1_labels.empty()) out.push_back("player 1 has no strategies");
    if (s2_labels.empty()) out.push_back("player 2 has no strategies");
    auto unique = [&](const std::vector<std::string>& labels, const char* who) {
      std::set<std::string> seen;
      for (const auto& l : labels)
        if (!seen.insert(l).second) out.push_back(std::string("duplicate ") + who + " label '" + l + "'");
    };
    unique(s1_labels, "player 1");
    unique(s2_labels, "player 2");
    auto shape = [&](const Matrix& m, const char* name) {
      if (m.size() != rows())
        out.push_back(std::string(name) + " has " + std::to_string(m.size()) + " rows, expected " +
                      std::to_string(rows()));
      for (size_t i = 0; i < m.size(); ++i)
        if (m[i].size() != cols())
          out.push_back(std::string(name) + " row " + std::to_string(i) + " has " +
                        std::to_string(m[i].size()) + " entries, expected " + std::to_string(cols()));
    };
    shape(u1, "u1");
    shape(u2, "u2");
    return out;
  }

  void validate() const {
    auto v = violations();
    if (!v.empty()) throw ValidationError(v);
  }

  bool operator==(const NormalFormGame& o) const {
    return s1_labels == o.s1_labels && s2_labels == o.s2_labels && u1 == o.u1 && u2 == o.u2;
  }
};

inline NormalFormGame make_game(std::vector<std::string> s1, std::vector<std::string> s2, Matrix u1,
                                Matrix u2) {
  NormalFormGame g{std::move(s1), std::move(s2), std::move(u1), std::move(u2)};
  g.validate();
  return g;
}

// Same game with the players' roles exchanged.
inline NormalFormGame swap_players(const NormalFormGame& g) {
  NormalFormGame t;
  t.s1_labels = g.s2_labels;
  t.s2_labels = g.s1_labels;
  t.u1.assign(g.cols(), Vector(g.rows()));
  t.u2.assign(g.cols(), Vector(g.rows()));
  for (size_t i = 0; i < g.rows(); ++i)
    for (size_t j = 0; j < g.cols(); ++j) {
      t.u1[j][i] = g.u2[i][j];
      t.u2[j][i] = g.u1[i][j];
    }
  return t;
}

namespace detail {

inline void require_strategy(const NormalFormGame& g, const MixedStrategy& s, int owner) {
  size_t n = owner == 1 ? g.rows() : g.cols();
  if (s.owner != owner)
    throw StructuralError("expected a strategy of player " + std::to_string(owner));
  if (s.size() != n)
    throw StructuralError("strategy of player " + std::to_string(owner) + " has length " +
                          std::to_string(s.size()) + ", expected " + std::to_string(n));
}

inline std::vector<size_t> argmax(const Vector& v) {
  std::vector<size_t> out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (out.empty() || v[i] > v[out.front()]) {
      out.assign(1, i);
    } else if (v[i] == v[out.front()]) {
      out.push_back(i);
    }
  }
  return out;
}

}  // namespace detail

// Payoff of each P1 pure strategy against s2, for the chosen payoff matrix.
inline Vector row_values(const Matrix& u, const MixedStrategy& s2) {
  Vector out(u.size(), Rational(0));
  for (size_t i = 0; i < u.size(); ++i)
    for (size_t j = 0; j < s2.size(); ++j)
      if (s2[j] != 0) out[i] += u[i][j] * s2[j];
  return out;
}

// Payoff of each P2 pure strategy against s1.
inline Vector col_values(const Matrix& u, const MixedStrategy& s1) {
  size_t n = u.empty() ? 0 : u.front().size();
  Vector out(n, Rational(0));
  for (size_t i = 0; i < s1.size(); ++i) {
    if (s1[i] == 0) continue;
    for (size_t j = 0; j < n; ++j) out[j] += u[i][j] * s1[i];
  }
  return out;
}

inline PayoffPair expected_utility(const NormalFormGame& g, const MixedStrategy& s1,
                                   const MixedStrategy& s2) {
  detail::require_strategy(g, s1, 1);
  detail::require_strategy(g, s2, 2);
  PayoffPair p;
  for (size_t i = 0; i < g.rows(); ++i) {
    if (s1[i] == 0) continue;
    for (size_t j = 0; j < g.cols(); ++j) {
      if (s2[j] == 0) continue;
      Rational w = s1[i] * s2[j];
      p.u1 += w * g.u1[i][j];
      p.u2 += w * g.u2[i][j];
    }
  }
  return p;
}

// P1's pure best responses to s2, sorted.
inline std::vector<size_t> best_responses(const NormalFormGame& g, const MixedStrategy& s2) {
  detail::require_strategy(g, s2, 2);
  return detail::argmax(row_values(g.u1, s2));
}

// P2's pure best responses to s1, sorted.
inline std::vector<size_t> best_responses_p2(const NormalFormGame& g, const MixedStrategy& s1) {
  detail::require_strategy(g, s1, 1);
  return detail::argmax(col_values(g.u2, s1));
}

// Among P1's best responses, those maximizing P2's payoff.
inline std::vector<size_t> favourable_best_responses(const NormalFormGame& g, const MixedStrategy& s2) {
  auto br = best_responses(g, s2);
  Vector v2 = row_values(g.u2, s2);
  std::vector<size_t> out;
  for (size_t i : br) {
    if (out.empty() || v2[i] > v2[out.front()]) {
      out.assign(1, i);
    } else if (v2[i] == v2[out.front()]) {
      out.push_back(i);
    }
  }
  return out;
}

// Payoff pair when P1 answers s2 with a favourable best response.
inline PayoffPair favourable_reply_payoff(const NormalFormGame& g, const MixedStrategy& s2) {
  size_t r = favourable_best_responses(g, s2).front();
  return expected_utility(g, MixedStrategy::pure(1, g.rows(), r), s2);
}

// Pure maxmin: best guaranteed payoff using a pure strategy against pure replies.
inline Rational maxmin_value(const NormalFormGame& g, int player) {
  if (player != 1 && player != 2) throw StructuralError("player must be 1 or 2");
  std::optional<Rational> best;
  size_t own = player == 1 ? g.rows() : g.cols();
  size_t other = player == 1 ? g.cols() : g.rows();
  for (size_t a = 0; a < own; ++a) {
    Rational worst = player == 1 ? g.u1[a][0] : g.u2[0][a];
    for (size_t b = 0; b < other; ++b) {
      const Rational& v = player == 1 ? g.u1[a][b] : g.u2[b][a];
      if (v < worst) worst = v;
    }
    if (!best || worst > *best) best = worst;
  }
  return *best;
}

inline bool pareto_strictly_improves(const PayoffPair& a, const PayoffPair& b) {
  return a.u1 > b.u1 && a.u2 > b.u2;
}

// Exact mutual best-response test.
inline bool is_nash(const NormalFormGame& g, const MixedStrategy& s1, const MixedStrategy& s2) {
  detail::require_strategy(g, s1, 1);
  detail::require_strategy(g, s2, 2);
  if (!s1.valid() || !s2.valid()) return false;
  Vector r = row_values(g.u1, s2);
  Vector c = col_values(g.u2, s1);
  Rational r_max = *std::max_element(r.begin(), r.end());
  Rational c_max = *std::max_element(c.begin(), c.end());
  for (size_t i = 0; i < r.size(); ++i)
    if (s1[i] != 0 && r[i] != r_max) return false;
  for (size_t j = 0; j < c.size(); ++j)
    if (s2[j] != 0 && c[j] != c_max) return false;
  return true;
}

}  // namespace simgame
