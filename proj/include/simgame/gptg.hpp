#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "simulation.hpp"

namespace simgame {

struct HierarchyEntry {
  size_t s1 = 0;
  Rational delta_low;
  Rational delta_high;
};

struct PtgAnalysis {
  NormalFormGame game;
  size_t c_index = 0, d_index = 1;
  size_t ft_index = 0, wo_index = 0;
  // Upper envelope of P1's payoff over the defection probability, from 0 to 1.
  std::vector<HierarchyEntry> hierarchy;
  std::vector<size_t> redundant;  // trust rows never the unique best response on an interval
  std::map<size_t, MixedStrategy> incentivise;
  bool nontrivial = false;
  std::optional<Rational> c0;
  // Largest cost for which P2's aggregate defection stays inside T1's interval.
  // Tighter than c0, which compares odds rather than probabilities.
  std::optional<Rational> cost_limit;
  bool sufficiency_ok = false;
  std::optional<size_t> sufficiency_failure;  // row of the first failing hierarchy entry
  // Informational: G^FT_2 - N_2 >= max_i (A_i - N_2) / (1 - delta_i) is enough on its own.
  Rational sufficient_bound;
  bool sufficient_bound_met = false;

  Rational delta(size_t s1) const {
    return incentivise.at(s1)[d_index];
  }
  // Cooperation probability of the optimal commitment that keeps FT a best response.
  Rational ft_cooperation() const { return 1 - delta(ft_index); }
};

namespace detail {

inline Rational envelope_break(const NormalFormGame& g, size_t c, size_t d, size_t s, size_t t) {
  // (1-x) G_s + x B_s = (1-x) G_t + x B_t
  Rational gs = g.u1[s][c], bs = g.u1[s][d], gt = g.u1[t][c], bt = g.u1[t][d];
  return (gs - gt) / ((gs - gt) + (bt - bs));
}

}  // namespace detail

// Every violated gPTG condition, described with the strategies involved.
inline std::vector<std::string> gptg_violations(const NormalFormGame& g, size_t* c_out = nullptr,
                                                size_t* d_out = nullptr, size_t* wo_out = nullptr) {
  std::vector<std::string> out = g.violations();
  if (!out.empty()) return out;
  if (g.cols() != 2) {
    out.push_back("(1) P2 must have exactly two strategies, found " + std::to_string(g.cols()));
    return out;
  }
  std::optional<size_t> wo;
  for (size_t i = 0; i < g.rows() && !wo; ++i)
    if (g.u1[i][0] == 0 && g.u1[i][1] == 0 && g.u2[i][0] == 0 && g.u2[i][1] == 0) wo = i;
  if (!wo) {
    out.push_back("(2) no walk-out row with payoffs (0,0) against both columns");
    return out;
  }
  std::vector<size_t> trust;
  for (size_t i = 0; i < g.rows(); ++i)
    if (i != *wo) trust.push_back(i);
  if (trust.empty()) {
    out.push_back("(3) no trust row besides the walk-out row");
    return out;
  }
  // C is the column where trusting pays P1.
  size_t c = g.u1[trust[0]][0] > 0 ? 0 : 1, d = 1 - c;
  for (size_t t : trust) {
    const auto& n = g.s1_labels[t];
    if (!(g.u1[t][c] > 0 && g.u1[t][d] < 0))
      out.push_back("(3) " + n + ": need u1(" + n + ",C) > 0 > u1(" + n + ",D)");
    if (!(g.u2[t][d] > g.u2[t][c] && g.u2[t][c] > 0))
      out.push_back("(3) " + n + ": need u2(" + n + ",D) > u2(" + n + ",C) > 0");
  }
  for (size_t x = 0; x < trust.size(); ++x)
    for (size_t y = 0; y < trust.size(); ++y) {
      if (x == y) continue;
      size_t s = trust[x], t = trust[y];
      const auto &ns = g.s1_labels[s], &nt = g.s1_labels[t];
      if (x < y && g.u1[s][c] == g.u1[t][c]) out.push_back("(4a) " + ns + " and " + nt + " share u1 against C");
      if (g.u1[s][c] > g.u1[t][c]) {
        if (!(g.u2[s][c] > g.u2[t][c] && g.u1[s][d] < g.u1[t][d] && g.u2[s][d] > g.u2[t][d]))
          out.push_back("(4b) " + ns + " trusts more than " + nt + " but the payoffs are not ordered accordingly");
      }
    }
  // (5): no row is matched in u1 by a proper mix of two other rows unless u2 matches too.
  for (size_t r = 0; r < g.rows(); ++r)
    for (size_t s = 0; s < g.rows(); ++s)
      for (size_t t = s + 1; t < g.rows(); ++t) {
        if (s == r || t == r) continue;
        std::optional<Rational> lambda;
        bool ok = true;
        for (size_t j = 0; j < 2 && ok; ++j) {
          Rational lhs = g.u1[r][j] - g.u1[t][j], den = g.u1[s][j] - g.u1[t][j];
          if (den == 0) {
            ok = lhs == 0;
          } else {
            Rational l = lhs / den;
            if (lambda && *lambda != l) ok = false;
            lambda = l;
          }
        }
        if (!ok || !lambda || *lambda <= 0 || *lambda >= 1) continue;
        for (size_t j = 0; j < 2; ++j)
          if (g.u2[r][j] != *lambda * g.u2[s][j] + (1 - *lambda) * g.u2[t][j]) {
            out.push_back("(5) " + g.s1_labels[r] + " equals a mix of " + g.s1_labels[s] + " and " +
                          g.s1_labels[t] + " for P1 but not for P2");
            break;
          }
      }
  if (c_out) *c_out = c;
  if (d_out) *d_out = d;
  if (wo_out) *wo_out = *wo;
  return out;
}

inline PtgAnalysis validate_gptg(const NormalFormGame& g) {
  PtgAnalysis a;
  auto v = gptg_violations(g, &a.c_index, &a.d_index, &a.wo_index);
  if (!v.empty()) throw ValidationError(v);
  a.game = g;
  const size_t c = a.c_index, d = a.d_index;
  auto G1 = [&](size_t i) { return g.u1[i][c]; };
  auto B1 = [&](size_t i) { return g.u1[i][d]; };

  a.ft_index = a.wo_index == 0 ? 1 : 0;
  for (size_t i = 0; i < g.rows(); ++i)
    if (i != a.wo_index && G1(i) > G1(a.ft_index)) a.ft_index = i;

  // Walk the envelope from delta = 0, switching at the earliest crossing.
  size_t cur = a.ft_index;
  Rational lo = 0;
  while (cur != a.wo_index) {
    std::optional<Rational> next;
    size_t pick = a.wo_index;
    for (size_t t = 0; t < g.rows(); ++t) {
      if (t == cur || G1(t) >= G1(cur)) continue;
      Rational x = detail::envelope_break(g, c, d, cur, t);
      if (x < lo) continue;
      // On a tie the lowest-G row has the steepest slope and wins afterwards.
      if (!next || x < *next || (x == *next && G1(t) < G1(pick))) {
        next = x;
        pick = t;
      }
    }
    a.hierarchy.push_back({cur, lo, *next});
    lo = *next;
    cur = pick;
  }
  a.hierarchy.push_back({a.wo_index, lo, Rational(1)});
  for (size_t i = 0; i < g.rows(); ++i) {
    bool listed = false;
    for (const auto& h : a.hierarchy) listed |= h.s1 == i;
    if (!listed) a.redundant.push_back(i);
  }
  for (const auto& h : a.hierarchy) {
    MixedStrategy s{2, Vector(2)};
    s.probs[d] = h.delta_high;
    s.probs[c] = 1 - h.delta_high;
    a.incentivise[h.s1] = s;
  }

  // Some trust row has a better gain-to-risk ratio than FT.
  Rational ft_ratio = G1(a.ft_index) / -B1(a.ft_index);
  for (size_t i = 0; i < g.rows(); ++i)
    if (i != a.wo_index && G1(i) / -B1(i) > ft_ratio) a.nontrivial = true;

  const Rational n1 = 0, n2 = 0;  // walk-out payoffs
  auto A2 = [&](size_t i) { return g.u2[i][d]; };
  auto G2 = [&](size_t i) { return g.u2[i][c]; };
  const Rational dft = a.delta(a.ft_index);
  if (a.nontrivial && a.hierarchy.size() >= 3) {
    size_t t1 = a.hierarchy[1].s1, t2 = a.hierarchy[2].s1;
    a.c0 = ((G1(t1) - G1(t2)) / (B1(t2) - B1(t1)) - (G1(a.ft_index) - G1(t1)) / (B1(t1) - B1(a.ft_index))) *
           (n1 - B1(t1));
    a.cost_limit = (a.delta(t1) - dft) / (1 - dft) * (n1 - B1(t1));
  }
  const Rational ft_term = dft * (A2(a.ft_index) - G2(a.ft_index)) + (G2(a.ft_index) - n2);
  a.sufficiency_ok = true;
  a.sufficient_bound = 0;
  for (size_t h = 1; h + 1 < a.hierarchy.size(); ++h) {
    size_t i = a.hierarchy[h].s1;
    Rational di = a.delta(i);
    Rational lhs = (di * (A2(i) - G2(i)) + (G2(i) - n2)) / ft_term;
    Rational rhs = (1 - di) / (1 - dft);
    if (lhs > rhs && a.sufficiency_ok) {
      a.sufficiency_ok = false;
      a.sufficiency_failure = i;
    }
    a.sufficient_bound = std::max(a.sufficient_bound, Rational((A2(i) - n2) / (1 - di)));
  }
  a.sufficient_bound_met = G2(a.ft_index) - n2 >= a.sufficient_bound;
  return a;
}

struct GptgEquilibrium {
  ReducedSimGame reduced;
  EquilibriumProfile profile;
  Rational p_sim;
  Rational p_D;
  size_t t1 = 0;  // the row P1 mixes with simulation
};

namespace detail {

inline size_t column_of(const ReducedSimGame& r, const MixedStrategy& s) {
  for (size_t j = 0; j < r.p2_map.size(); ++j)
    if (r.p2_map[j] == s) return j;
  throw std::logic_error("strategy " + strategy_label(r.base.s2_labels, s) + " is not a reduced column");
}

inline EquilibriumProfile verified_profile(const ReducedSimGame& r, MixedStrategy s1, MixedStrategy s2) {
  if (!is_nash(r.meta, s1, s2))
    throw Refusal("verification", "closed-form profile is not an equilibrium of the reduced game");
  EquilibriumProfile p;
  p.payoffs = expected_utility(r.meta, s1, s2);
  p.support1 = s1.support();
  p.support2 = s2.support();
  p.s1_vertices = {s1};
  p.s2_vertices = {s2};
  p.s1 = std::move(s1);
  p.s2 = std::move(s2);
  return p;
}

}  // namespace detail

inline GptgEquilibrium gptg_simulation_equilibrium(const PtgAnalysis& a, const Rational& cost) {
  if (!a.nontrivial) throw Refusal("trivial", "no trust level besides full trust is worth incentivising");
  if (cost <= 0) throw Refusal("cost", "simulation cost must be positive");
  if (!a.c0 || cost >= *a.c0)
    throw Refusal("cost", "cost " + to_string(cost) + " is not below c0 = " + (a.c0 ? to_string(*a.c0) : "?"));
  if (cost >= *a.cost_limit)
    throw Refusal("cost", "cost " + to_string(cost) + " pushes the aggregate defection past " +
                              a.game.s1_labels[a.hierarchy[1].s1] + "'s interval (limit " +
                              to_string(*a.cost_limit) + ")");
  if (!a.sufficiency_ok)
    throw Refusal("sufficiency", "P2 would rather incentivise " + a.game.s1_labels[*a.sufficiency_failure]);

  const auto& g = a.game;
  const size_t c = a.c_index, d = a.d_index, ft = a.ft_index;
  const size_t t1 = a.hierarchy[1].s1;
  const Rational dft = a.delta(ft);
  GptgEquilibrium e;
  e.t1 = t1;
  e.p_D = cost / (0 - g.u1[t1][d]);
  Rational num = (1 - dft) * (g.u2[t1][d] - g.u2[t1][c]);
  Rational den = dft * (g.u2[ft][d] - g.u2[ft][c]) + (g.u2[ft][c] - 0);
  e.p_sim = num / (num + den);

  e.reduced = build_msim_reduced(g, {cost, SimKind::mixed});
  const auto& r = e.reduced;
  MixedStrategy s1{1, Vector(r.meta.rows(), Rational(0))};
  s1.probs[t1] = 1 - e.p_sim;
  s1.probs[r.simulate_row()] = e.p_sim;
  MixedStrategy s2{2, Vector(r.meta.cols(), Rational(0))};
  s2.probs[detail::column_of(r, a.incentivise.at(ft))] = 1 - e.p_D;
  s2.probs[detail::column_of(r, MixedStrategy::pure(2, 2, d))] += e.p_D;
  e.profile = detail::verified_profile(r, std::move(s1), std::move(s2));
  return e;
}

}  // namespace simgame
