#pragma once

#include <string>
#include <vector>

#include "gptg.hpp"

namespace simgame {

// One 2x2 trust subgame: (T,C) = (g1, g2), (T,D) = (h1, a2), (WO,.) = (n1, h2).
struct TrustSubgame {
  Rational g1, g2, h1, a2, n1, h2;

  bool operator==(const TrustSubgame& o) const {
    return g1 == o.g1 && g2 == o.g2 && h1 == o.h1 && a2 == o.a2 && n1 == o.n1 && h2 == o.h2;
  }
};

struct TcgSpec {
  Rational b1 = 0, b2 = 0;
  Rational epsilon = 1;
  std::vector<TrustSubgame> subgames;

  std::vector<std::string> violations() const {
    std::vector<std::string> out;
    if (subgames.empty()) out.push_back("need at least one subgame");
    if (epsilon <= 0) out.push_back("epsilon must be positive");
    for (size_t k = 0; k < subgames.size(); ++k) {
      const auto& s = subgames[k];
      std::string n = "subgame " + std::to_string(k + 1);
      if (!(s.h1 < b1 && b1 + epsilon < s.n1 && s.n1 < s.g1)) out.push_back(n + ": need H1 < B1 < B1+eps < N1 < G1");
      if (!(s.h2 < b2 && b2 + epsilon < s.g2 && s.g2 < s.a2)) out.push_back(n + ": need H2 < B2 < B2+eps < G2 < A2");
    }
    return out;
  }

  bool operator==(const TcgSpec& o) const {
    return b1 == o.b1 && b2 == o.b2 && epsilon == o.epsilon && subgames == o.subgames;
  }
};

// The two-subgame example with B = (0,0) and eps = 1.
inline TcgSpec dtg_spec() {
  TcgSpec s;
  s.subgames.push_back({20, 20, -99, 40, 9, -99});
  s.subgames.push_back({20, 20, -99, 40, 10, -99});
  return s;
}

inline NormalFormGame make_tcg(const TcgSpec& spec) {
  auto v = spec.violations();
  if (!v.empty()) throw ValidationError(v);
  const size_t n = spec.subgames.size();
  NormalFormGame g;
  for (size_t k = 0; k < n; ++k) {
    std::string a = "a" + std::to_string(k + 1);
    g.s1_labels.push_back(a + "/T");
    g.s1_labels.push_back(a + "/WO");
    g.s2_labels.push_back(a + "/C");
    g.s2_labels.push_back(a + "/D");
  }
  g.s1_labels.push_back("OO");
  g.s2_labels.push_back("OO");
  const size_t m = 2 * n + 1;
  g.u1.assign(m, Vector(m, spec.b1));
  g.u2.assign(m, Vector(m, spec.b2));
  for (size_t k = 0; k < n; ++k) {
    const auto& s = spec.subgames[k];
    size_t t = 2 * k, wo = 2 * k + 1, c = 2 * k, d = 2 * k + 1;
    g.u1[t][c] = s.g1, g.u2[t][c] = s.g2;
    g.u1[t][d] = s.h1, g.u2[t][d] = s.a2;
    g.u1[wo][c] = g.u1[wo][d] = s.n1;
    g.u2[wo][c] = g.u2[wo][d] = s.h2;
  }
  for (size_t j = 0; j < m; ++j) g.u1[m - 1][j] += spec.epsilon;
  for (size_t i = 0; i < m; ++i) g.u2[i][m - 1] += spec.epsilon;
  return g;
}

struct TcgEquilibrium {
  ReducedSimGame reduced;
  EquilibriumProfile profile;
  Rational p_sim;
  Rational p_D;
  size_t k1 = 0, k2 = 0;            // 0-based: P1's and P2's favourite subgames
  std::vector<Rational> defection;  // the subgame commitments, per subgame
  std::vector<PayoffPair> se_values;
  Rational horrible_rhs;  // H^{k1}_2 must lie below this
};

// Subgame commitment: the largest defection probability that keeps T a best response.
inline Rational subgame_defection(const TrustSubgame& s) { return (s.g1 - s.n1) / (s.g1 - s.h1); }

inline TcgEquilibrium tcg_simulation_equilibrium(const TcgSpec& spec, const Rational& cost) {
  NormalFormGame g = make_tcg(spec);
  if (cost <= 0) throw Refusal("cost", "simulation cost must be positive");
  const size_t n = spec.subgames.size();
  TcgEquilibrium e;
  for (const auto& s : spec.subgames) {
    Rational d = subgame_defection(s);
    e.defection.push_back(d);
    e.se_values.push_back({s.n1, (1 - d) * s.g2 + d * s.a2});
  }
  auto argmax_set = [&](bool second) {
    std::vector<size_t> out;
    for (size_t k = 0; k < n; ++k) {
      const Rational& v = second ? e.se_values[k].u2 : e.se_values[k].u1;
      const Rational& b = out.empty() ? v : (second ? e.se_values[out[0]].u2 : e.se_values[out[0]].u1);
      if (out.empty() || v > b)
        out.assign(1, k);
      else if (v == b)
        out.push_back(k);
    }
    return out;
  };
  auto top1 = argmax_set(false), top2 = argmax_set(true);
  for (size_t k : top1)
    if (std::find(top2.begin(), top2.end(), k) != top2.end())
      throw Refusal("overlap", "subgame " + std::to_string(k + 1) + " is favoured by both players");
  e.k1 = top1[0];
  e.k2 = top2[0];
  const auto& s1g = spec.subgames[e.k1];
  const Rational bound = (e.se_values[e.k2].u1 - spec.b1) / 2;
  if (cost >= bound) throw Refusal("cost", "cost " + to_string(cost) + " is not below " + to_string(bound));

  e.p_D = cost / (e.se_values[e.k2].u1 - spec.b1);
  // P2 indifferent between the two commitments:
  // v^{k1}_2 = p v^{k2}_2 + (1 - p) B_2.
  e.p_sim = (e.se_values[e.k1].u2 - spec.b2) / (e.se_values[e.k2].u2 - spec.b2);
  e.horrible_rhs = (e.se_values[e.k1].u2 - (1 - e.p_sim) * s1g.a2) / e.p_sim;
  if (!(s1g.h2 < e.horrible_rhs))
    throw Refusal("horrible", "need H2 of subgame " + std::to_string(e.k1 + 1) + " below " +
                                  to_string(e.horrible_rhs));

  e.reduced = build_msim_reduced(g, {cost, SimKind::mixed});
  const auto& r = e.reduced;
  auto commitment = [&](size_t k) {
    MixedStrategy s{2, Vector(g.cols(), Rational(0))};
    s.probs[2 * k] = 1 - e.defection[k];
    s.probs[2 * k + 1] = e.defection[k];
    return s;
  };
  MixedStrategy m1{1, Vector(r.meta.rows(), Rational(0))};
  m1.probs[2 * e.k1] = 1 - e.p_sim;
  m1.probs[r.simulate_row()] = e.p_sim;
  MixedStrategy m2{2, Vector(r.meta.cols(), Rational(0))};
  m2.probs[detail::column_of(r, commitment(e.k1))] = 1 - e.p_D;
  m2.probs[detail::column_of(r, commitment(e.k2))] = e.p_D;
  e.profile = detail::verified_profile(r, std::move(m1), std::move(m2));
  return e;
}

}  // namespace simgame
