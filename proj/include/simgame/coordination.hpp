#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gptg.hpp"

namespace simgame {

inline NormalFormGame make_coordination_game(const std::vector<PayoffPair>& diagonal) {
  std::vector<std::string> bad;
  if (diagonal.size() < 2) bad.push_back("coordination game needs at least two actions");
  for (size_t k = 0; k < diagonal.size(); ++k)
    if (diagonal[k].u1 <= 0 || diagonal[k].u2 <= 0)
      bad.push_back("diagonal entry " + std::to_string(k + 1) + " must be positive for both players");
  if (!bad.empty()) throw ValidationError(bad);
  const size_t n = diagonal.size();
  NormalFormGame g;
  for (size_t k = 0; k < n; ++k) {
    g.s1_labels.push_back("a" + std::to_string(k + 1));
    g.s2_labels.push_back("a" + std::to_string(k + 1));
  }
  g.u1.assign(n, Vector(n, Rational(0)));
  g.u2.assign(n, Vector(n, Rational(0)));
  for (size_t k = 0; k < n; ++k) {
    g.u1[k][k] = diagonal[k].u1;
    g.u2[k][k] = diagonal[k].u2;
  }
  return g;
}

inline std::vector<std::string> coordination_violations(const NormalFormGame& g) {
  auto out = g.violations();
  if (!out.empty()) return out;
  if (g.rows() != g.cols()) out.push_back("coordination game must be square");
  if (g.rows() < 2) out.push_back("coordination game needs at least two actions");
  for (size_t i = 0; i < g.rows(); ++i)
    for (size_t j = 0; j < g.cols(); ++j) {
      if (i == j) {
        if (g.u1[i][i] <= 0 || g.u2[i][i] <= 0)
          out.push_back("diagonal entry " + std::to_string(i + 1) + " must be positive for both players");
      } else if (g.u1[i][j] != 0 || g.u2[i][j] != 0) {
        out.push_back("off-diagonal entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                      ") must be (0,0)");
      }
    }
  return out;
}

inline std::vector<PayoffPair> coordination_diagonal(const NormalFormGame& g) {
  auto v = coordination_violations(g);
  if (!v.empty()) throw ValidationError(v);
  std::vector<PayoffPair> d;
  for (size_t k = 0; k < g.rows(); ++k) d.push_back(g.at(k, k));
  return d;
}

// Payoffs of the equilibrium mixing exactly over the actions in K:
// the harmonic combination (sum 1/u)^-1 for each player.
inline PayoffPair coordination_mixed_payoff(const std::vector<PayoffPair>& diagonal, const std::vector<size_t>& K) {
  Rational s1 = 0, s2 = 0;
  for (size_t k : K) {
    s1 += 1 / diagonal.at(k).u1;
    s2 += 1 / diagonal.at(k).u2;
  }
  return {1 / s1, 1 / s2};
}

struct CoordinationEquilibrium {
  int case_no = 0;  // 1: P2 has two optimal pure commitments, 2: a unique one
  ReducedSimGame reduced;
  EquilibriumProfile profile;
  std::optional<Rational> p_sim;
  std::optional<Rational> p_D;
  size_t k1 = 0, k2 = 0;  // 0-based actions used
  Rational cost_bound;
};

inline CoordinationEquilibrium coordination_sim_equilibrium(const NormalFormGame& g, const Rational& cost) {
  auto diag = coordination_diagonal(g);
  if (cost <= 0) throw Refusal("cost", "simulation cost must be positive");
  const size_t n = diag.size();
  Rational best2 = diag[0].u2;
  for (const auto& p : diag) best2 = std::max(best2, p.u2);
  std::vector<size_t> top;
  for (size_t k = 0; k < n; ++k)
    if (diag[k].u2 == best2) top.push_back(k);

  CoordinationEquilibrium e;
  e.reduced = build_msim_reduced(g, {cost, SimKind::mixed});
  const auto& r = e.reduced;
  MixedStrategy s1{1, Vector(r.meta.rows(), Rational(0))};
  MixedStrategy s2{2, Vector(r.meta.cols(), Rational(0))};
  auto col = [&](size_t k) { return detail::column_of(r, MixedStrategy::pure(2, n, k)); };

  if (top.size() >= 2) {
    e.case_no = 1;
    e.k1 = top[0];
    e.k2 = top[1];
    e.cost_bound = std::min(diag[e.k1].u1, diag[e.k2].u1) / 2;
    if (cost >= e.cost_bound)
      throw Refusal("cost", "cost " + to_string(cost) + " is not below " + to_string(e.cost_bound));
    s1.probs[r.simulate_row()] = 1;
    s2.probs[col(e.k1)] = Rational(1, 2);
    s2.probs[col(e.k2)] = Rational(1, 2);
  } else {
    e.case_no = 2;
    e.k2 = top[0];
    // P1's favourite among the rest.
    std::optional<size_t> k1;
    for (size_t k = 0; k < n; ++k)
      if (k != e.k2 && (!k1 || diag[k].u1 > diag[*k1].u1)) k1 = k;
    e.k1 = *k1;
    const Rational a = diag[e.k1].u1, b = diag[e.k2].u1;
    e.cost_bound = a * b / (a + b);  // c < (1 - c/b) a
    if (cost >= e.cost_bound)
      throw Refusal("cost", "cost " + to_string(cost) + " is not below " + to_string(e.cost_bound));
    e.p_sim = diag[e.k1].u2 / diag[e.k2].u2;
    e.p_D = cost / b;
    s1.probs[e.k1] = 1 - *e.p_sim;
    s1.probs[r.simulate_row()] = *e.p_sim;
    s2.probs[col(e.k1)] = 1 - *e.p_D;
    s2.probs[col(e.k2)] = *e.p_D;
  }
  e.profile = detail::verified_profile(r, std::move(s1), std::move(s2));
  return e;
}

}  // namespace simgame
