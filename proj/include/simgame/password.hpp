#pragma once

#include <string>
#include <vector>

#include "game.hpp"

namespace simgame {

// PG(N, x): P1 may skip or guess one of N passwords chosen by P2.
inline NormalFormGame make_pg(size_t n, const Rational& stakes) {
  std::vector<std::string> bad;
  if (n < 1) bad.push_back("need at least one password");
  if (stakes <= 0) bad.push_back("stakes must be positive");
  if (!bad.empty()) throw ValidationError(bad);
  NormalFormGame g;
  g.s1_labels.push_back("no-guess");
  for (size_t i = 1; i <= n; ++i) g.s1_labels.push_back("g" + std::to_string(i));
  for (size_t i = 1; i <= n; ++i) g.s2_labels.push_back("p" + std::to_string(i));
  g.u1.assign(n + 1, Vector(n, Rational(0)));
  g.u2.assign(n + 1, Vector(n, Rational(0)));
  for (size_t i = 1; i <= n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (i - 1 == j) {
        g.u1[i][j] = stakes + 1;
        g.u2[i][j] = -(stakes + 1);
      } else {
        g.u1[i][j] = -2 * (stakes + 1);
      }
    }
  return g;
}

struct OptOut {
  size_t row = 0, col = 0;
  PayoffPair baseline;
};

// The opt-out row and column: constant payoffs (B1, B2) for either player opting
// out, strictly below every payoff where neither does. Labels "OO" are tried first.
inline std::vector<std::string> opt_out_violations(const NormalFormGame& g, OptOut* out = nullptr) {
  auto v = g.violations();
  if (!v.empty()) return v;
  auto works = [&](size_t r, size_t c) {
    PayoffPair b = g.at(r, c);
    for (size_t j = 0; j < g.cols(); ++j)
      if (g.at(r, j) != b) return false;
    for (size_t i = 0; i < g.rows(); ++i)
      if (g.at(i, c) != b) return false;
    for (size_t i = 0; i < g.rows(); ++i)
      for (size_t j = 0; j < g.cols(); ++j)
        if (i != r && j != c && !(g.u1[i][j] > b.u1 && g.u2[i][j] > b.u2)) return false;
    return true;
  };
  std::vector<std::pair<size_t, size_t>> order;
  for (size_t r = 0; r < g.rows(); ++r)
    for (size_t c = 0; c < g.cols(); ++c)
      if (g.s1_labels[r] == "OO" && g.s2_labels[c] == "OO") order.insert(order.begin(), {r, c});
      else order.push_back({r, c});
  for (auto [r, c] : order)
    if (works(r, c)) {
      if (out) *out = {r, c, g.at(r, c)};
      return {};
    }
  return {"no opt-out row and column with constant payoffs below every other outcome"};
}

// G^PG: after the base game, if P2 earned more than its baseline the players
// play PG(N, u2 - B2). P1 fixes one guess policy for all outcomes.
inline NormalFormGame apply_password_modification(const NormalFormGame& base, size_t n) {
  OptOut oo;
  auto v = opt_out_violations(base, &oo);
  if (n < 1) v.push_back("need at least one password");
  if (!v.empty()) throw ValidationError(v);

  struct Row { size_t s1; size_t guess; };  // guess 0 = none
  struct Col { size_t s2; size_t pw; };     // pw 0 = opt-out column
  std::vector<Row> rows;
  std::vector<Col> cols;
  NormalFormGame g;
  for (size_t i = 0; i < base.rows(); ++i) {
    if (i == oo.row) {
      rows.push_back({i, 0});
      g.s1_labels.push_back(base.s1_labels[i]);
      continue;
    }
    for (size_t q = 0; q <= n; ++q) {
      rows.push_back({i, q});
      g.s1_labels.push_back(base.s1_labels[i] + "/" + (q == 0 ? std::string("-") : "g" + std::to_string(q)));
    }
  }
  for (size_t j = 0; j < base.cols(); ++j) {
    if (j == oo.col) {
      cols.push_back({j, 0});
      g.s2_labels.push_back(base.s2_labels[j]);
      continue;
    }
    for (size_t p = 1; p <= n; ++p) {
      cols.push_back({j, p});
      g.s2_labels.push_back(base.s2_labels[j] + "/p" + std::to_string(p));
    }
  }
  g.u1.assign(rows.size(), Vector(cols.size()));
  g.u2.assign(rows.size(), Vector(cols.size()));
  for (size_t a = 0; a < rows.size(); ++a)
    for (size_t b = 0; b < cols.size(); ++b) {
      PayoffPair p = base.at(rows[a].s1, cols[b].s2);
      if (p.u2 > oo.baseline.u2 && rows[a].guess != 0 && cols[b].pw != 0) {
        Rational x = p.u2 - oo.baseline.u2;
        if (rows[a].guess == cols[b].pw) {
          p.u1 += x + 1;
          p.u2 -= x + 1;
        } else {
          p.u1 -= 2 * (x + 1);
        }
      }
      g.u1[a][b] = p.u1;
      g.u2[a][b] = p.u2;
    }
  return g;
}

// The partial-trust game with an added opt-out at (-200, -200) for both players.
inline NormalFormGame ptg_with_opt_out() {
  return make_game({"FT", "PT", "WO", "OO"}, {"C", "D", "OO"},
                   {{20, -100, -200}, {10, -25, -200}, {0, 0, -200}, {-200, -200, -200}},
                   {{20, 100, -200}, {10, 25, -200}, {0, 0, -200}, {-200, -200, -200}});
}

}  // namespace simgame
