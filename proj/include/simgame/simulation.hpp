#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "equilibrium.hpp"
#include "geometry.hpp"

namespace simgame {

enum class SimKind { pure, mixed };

struct SimulationConfig {
  Rational cost;
  SimKind kind = SimKind::mixed;

  void validate() const {
    if (cost <= 0) throw ValidationError({"simulation cost must be positive, got " + to_string(cost)});
  }
};

// Finite-support distribution over P2 mixed strategies.
struct MetaStrategy {
  std::vector<std::pair<MixedStrategy, Rational>> atoms;

  bool valid() const {
    if (atoms.empty()) return false;
    Rational total = 0;
    for (size_t i = 0; i < atoms.size(); ++i) {
      if (atoms[i].second < 0 || !atoms[i].first.valid() || atoms[i].first.owner != 2) return false;
      if (atoms[i].first.size() != atoms[0].first.size()) return false;
      for (size_t j = 0; j < i; ++j)
        if (atoms[j].first == atoms[i].first) return false;
      total += atoms[i].second;
    }
    return total == 1;
  }

  // The induced single mixed strategy.
  MixedStrategy aggregate() const {
    if (atoms.empty()) throw StructuralError("meta-strategy has no atoms");
    MixedStrategy out{2, Vector(atoms[0].first.size(), Rational(0))};
    for (const auto& [s, w] : atoms) {
      if (s.size() != out.size()) throw StructuralError("meta-strategy atoms differ in length");
      for (size_t j = 0; j < s.size(); ++j) out.probs[j] += w * s[j];
    }
    return out;
  }
};

inline constexpr size_t SIMULATE = std::numeric_limits<size_t>::max();

struct ReducedSimGame {
  NormalFormGame meta;
  std::vector<size_t> p1_map;              // base row index or SIMULATE
  std::vector<MixedStrategy> p2_map;       // base mixed strategy of each column
  std::vector<std::vector<size_t>> p2_regions;  // rows whose region contains the column (msim)
  SimulationConfig config;
  NormalFormGame base;

  size_t simulate_row() const { return meta.rows() - 1; }
};

// "5/6 C + 1/6 D", or the plain label for a pure strategy.
inline std::string strategy_label(const std::vector<std::string>& labels, const MixedStrategy& s) {
  auto supp = s.support();
  if (supp.size() == 1) return labels[supp[0]];
  std::string out;
  for (size_t j : supp) {
    if (!out.empty()) out += " + ";
    const std::string& l = labels[j];
    out += to_string(s[j]) + " " + (l.find(' ') == std::string::npos ? l : "[" + l + "]");
  }
  return out;
}

namespace detail {

inline std::string unique_label(std::string want, const std::vector<std::string>& taken) {
  while (std::find(taken.begin(), taken.end(), want) != taken.end()) want += "'";
  return want;
}

// What the simulate action earns against a P2 mixed strategy s2.
inline PayoffPair simulate_payoff(const NormalFormGame& base, const Rational& cost, const MixedStrategy& s2) {
  Vector r = row_values(base.u1, s2);
  Rational best = *std::max_element(r.begin(), r.end());
  Rational u2 = row_values(base.u2, s2)[favourable_best_responses(base, s2).front()];
  return {best - cost, u2};
}

inline ReducedSimGame assemble(const NormalFormGame& base, const SimulationConfig& config,
                               std::vector<MixedStrategy> columns, std::vector<std::vector<size_t>> regions,
                               const std::string& sim_label) {
  ReducedSimGame r;
  r.base = base;
  r.config = config;
  r.p2_map = std::move(columns);
  r.p2_regions = std::move(regions);
  r.meta.s1_labels = base.s1_labels;
  r.meta.s1_labels.push_back(unique_label(sim_label, base.s1_labels));
  for (size_t i = 0; i < base.rows(); ++i) r.p1_map.push_back(i);
  r.p1_map.push_back(SIMULATE);
  for (const auto& v : r.p2_map) r.meta.s2_labels.push_back(strategy_label(base.s2_labels, v));
  const size_t m = base.rows() + 1, n = r.p2_map.size();
  r.meta.u1.assign(m, Vector(n));
  r.meta.u2.assign(m, Vector(n));
  for (size_t j = 0; j < n; ++j) {
    Vector c1 = row_values(base.u1, r.p2_map[j]);
    Vector c2 = row_values(base.u2, r.p2_map[j]);
    for (size_t i = 0; i < base.rows(); ++i) {
      r.meta.u1[i][j] = c1[i];
      r.meta.u2[i][j] = c2[i];
    }
    auto sim = simulate_payoff(base, config.cost, r.p2_map[j]);
    r.meta.u1[m - 1][j] = sim.u1;
    r.meta.u2[m - 1][j] = sim.u2;
  }
  return r;
}

}  // namespace detail

inline ReducedSimGame build_psim(const NormalFormGame& base, SimulationConfig config) {
  base.validate();
  config.kind = SimKind::pure;
  config.validate();
  std::vector<MixedStrategy> cols;
  std::vector<std::vector<size_t>> regions;
  for (size_t j = 0; j < base.cols(); ++j) {
    auto s = MixedStrategy::pure(2, base.cols(), j);
    regions.push_back(best_responses(base, s));
    cols.push_back(std::move(s));
  }
  return detail::assemble(base, config, std::move(cols), std::move(regions), "p-sim");
}

// Columns are the region vertices of P2's simplex, deduplicated across regions.
inline ReducedSimGame build_msim_reduced(const NormalFormGame& base, SimulationConfig config) {
  base.validate();
  config.kind = SimKind::mixed;
  config.validate();
  std::vector<MixedStrategy> cols;
  std::vector<std::vector<size_t>> regions;
  for (auto& atom : global_vertices(decompose_simplex(base))) {
    cols.push_back(std::move(atom.point));
    regions.push_back(std::move(atom.regions));
  }
  return detail::assemble(base, config, std::move(cols), std::move(regions), "m-sim");
}

inline ReducedSimGame build_reduced(const NormalFormGame& base, const SimulationConfig& config) {
  return config.kind == SimKind::pure ? build_psim(base, config) : build_msim_reduced(base, config);
}

// Aggregate base strategy of a distribution over the reduced columns.
inline MixedStrategy aggregate_of(const ReducedSimGame& r, const MixedStrategy& meta_s2) {
  MetaStrategy m;
  for (size_t j = 0; j < meta_s2.size(); ++j)
    if (meta_s2[j] != 0) m.atoms.push_back({r.p2_map[j], meta_s2[j]});
  return m.aggregate();
}

struct SimulationEquilibrium {
  EquilibriumProfile profile;
  MixedStrategy aggregate;  // P2's induced base strategy
};

// Nash subsets of the reduced game that contain a profile simulating with
// positive probability; the representative is chosen among those profiles.
inline std::vector<SimulationEquilibrium> find_simulation_equilibria(const ReducedSimGame& r) {
  const size_t sim = r.simulate_row();
  std::vector<SimulationEquilibrium> out;
  for (auto& p : enumerate_nash(r.meta)) {
    const MixedStrategy* pick = nullptr;
    for (const auto& x : p.s1_vertices)
      if (x[sim] > 0 && (!pick || x.support().size() < pick->support().size())) pick = &x;
    if (!pick) continue;
    p.s1 = *pick;
    p.support1 = p.s1.support();
    p.payoffs = expected_utility(r.meta, p.s1, p.s2);
    MixedStrategy agg = aggregate_of(r, p.s2);
    out.push_back({std::move(p), std::move(agg)});
  }
  return out;
}

// Payoffs in the unreduced m-sim game when P1 plays a reduced-game row mixture
// and P2 plays an arbitrary base mixed strategy.
inline PayoffPair msim_payoff(const ReducedSimGame& r, const MixedStrategy& meta_s1, const MixedStrategy& s2) {
  detail::require_strategy(r.meta, meta_s1, 1);
  detail::require_strategy(r.base, s2, 2);
  PayoffPair out;
  Vector c1 = row_values(r.base.u1, s2), c2 = row_values(r.base.u2, s2);
  auto sim = detail::simulate_payoff(r.base, r.config.cost, s2);
  for (size_t i = 0; i < meta_s1.size(); ++i) {
    if (meta_s1[i] == 0) continue;
    if (r.p1_map[i] == SIMULATE) {
      out.u1 += meta_s1[i] * sim.u1;
      out.u2 += meta_s1[i] * sim.u2;
    } else {
      out.u1 += meta_s1[i] * c1[r.p1_map[i]];
      out.u2 += meta_s1[i] * c2[r.p1_map[i]];
    }
  }
  return out;
}

// A base equilibrium lifted to the simulation game, with P2 playing its base
// strategy as a single atom, admits no profitable deviation.
inline bool lift_check(const NormalFormGame& base, const ReducedSimGame& r, const EquilibriumProfile& ne) {
  detail::require_strategy(base, ne.s1, 1);
  detail::require_strategy(base, ne.s2, 2);
  if (!(base == r.base)) throw StructuralError("reduced game was built from a different base game");
  if (!ne.s1.valid() || !ne.s2.valid()) throw StructuralError("equilibrium strategies are not distributions");
  PayoffPair value = expected_utility(base, ne.s1, ne.s2);

  Vector rows = row_values(base.u1, ne.s2);
  for (const auto& v : rows)
    if (v > value.u1) return false;
  if (detail::simulate_payoff(base, r.config.cost, ne.s2).u1 > value.u1) return false;

  MixedStrategy lifted{1, ne.s1.probs};
  lifted.probs.push_back(0);
  for (const auto& col : r.p2_map)
    if (msim_payoff(r, lifted, col).u2 > value.u2) return false;
  return msim_payoff(r, lifted, ne.s2).u2 <= value.u2;
}

enum class Criterion { a, b, c, d, e };

inline std::optional<Criterion> parse_criterion(const std::string& s) {
  if (s == "a") return Criterion::a;
  if (s == "b") return Criterion::b;
  if (s == "c") return Criterion::c;
  if (s == "d") return Criterion::d;
  if (s == "e") return Criterion::e;
  return std::nullopt;
}

using WelfareFn = std::function<Rational(const PayoffPair&)>;

struct HelpsReport {
  bool helps = false;
  Criterion criterion = Criterion::a;
  bool degenerate = false;  // some Nash subset in either game has more than one vertex pair
  std::vector<PayoffPair> base_payoffs;  // at extreme equilibria, deduplicated
  std::optional<ExtremeEquilibrium> witness;
};

// Within a Nash subset u1 depends only on P2's side and u2 only on P1's, so
// componentwise monotone criteria attain their extremes at extreme equilibria
// and both quantifiers can be decided on those alone.
inline HelpsReport decide_msim_helps(const NormalFormGame& base, const SimulationConfig& config, Criterion crit,
                                     WelfareFn welfare = nullptr) {
  if (crit == Criterion::d && !welfare) welfare = [](const PayoffPair& p) { return Rational(p.u1 + p.u2); };
  ReducedSimGame r = build_reduced(base, config);
  auto base_ext = extreme_equilibria(base);
  auto meta_ext = extreme_equilibria(r.meta);

  HelpsReport rep;
  rep.criterion = crit;
  for (const auto& s : nash_subsets(base, base_ext)) rep.degenerate |= s.degenerate;
  for (const auto& s : nash_subsets(r.meta, meta_ext)) rep.degenerate |= s.degenerate;
  std::set<PayoffPair> seen;
  for (const auto& e : base_ext) seen.insert(e.payoffs);
  rep.base_payoffs.assign(seen.begin(), seen.end());

  auto beats = [&](const PayoffPair& mu, const PayoffPair& nu) {
    switch (crit) {
      case Criterion::a: return pareto_strictly_improves(mu, nu);
      case Criterion::b: return mu.u1 > nu.u1;
      case Criterion::c: return mu.u2 > nu.u2;
      case Criterion::d: return welfare(mu) > welfare(nu);
      case Criterion::e: return std::min(mu.u1, mu.u2) > std::min(nu.u1, nu.u2);
    }
    return false;
  };
  for (const auto& e : meta_ext) {
    bool all = true;
    for (const auto& nu : rep.base_payoffs) all = all && beats(e.payoffs, nu);
    if (all) {
      rep.helps = true;
      rep.witness = e;
      break;
    }
  }
  return rep;
}

struct SizeReport {
  size_t base_rows = 0, base_cols = 0;
  size_t regions = 0;
  std::vector<size_t> region_vertices;  // per non-empty region
  mpz_class vertex_bound_per_region;    // C(2n, n - 1)
  mpz_class column_bound;               // |S1| * C(2n, n - 1)
  size_t reduced_rows = 0, reduced_cols = 0;
};

inline SizeReport size_report(const NormalFormGame& base) {
  base.validate();
  SizeReport s;
  s.base_rows = base.rows();
  s.base_cols = base.cols();
  auto regions = decompose_simplex(base);
  s.regions = regions.size();
  for (const auto& r : regions) s.region_vertices.push_back(r.vertices.size());
  s.vertex_bound_per_region = region_vertex_bound(base.cols());
  s.column_bound = s.vertex_bound_per_region * static_cast<unsigned long>(base.rows());
  s.reduced_rows = base.rows() + 1;
  s.reduced_cols = global_vertices(regions).size();
  return s;
}

// Writes a base mixed strategy s2 lying in region(s1) as a convex combination
// of that region's vertices, or nullopt if s2 is outside the region.
inline std::optional<std::vector<std::pair<MixedStrategy, Rational>>> decompose_in_region(
    const NormalFormGame& base, size_t s1, const MixedStrategy& s2) {
  HalfspaceSystem sys = br_region_system(base, s1);
  if (!sys.contains(s2.probs)) return std::nullopt;
  std::vector<std::pair<MixedStrategy, Rational>> out;
  Vector point = s2.probs;
  Rational left = 1;
  // Walk: restrict to the minimal face of the current point, pick a vertex of
  // it, and push the point away from that vertex until a new facet becomes
  // tight. Each step lowers the face dimension, so this terminates.
  while (true) {
    HalfspaceSystem face = sys;
    for (const auto& h : sys.inequalities)
      if (dot(h.coeffs, point) == h.bound) {
        Halfspace neg{h.coeffs, -h.bound};
        for (auto& c : neg.coeffs) c = -c;
        face.inequalities.push_back(std::move(neg));
      }
    auto verts = enumerate_vertices(face);
    if (verts.empty()) throw std::logic_error("face of a non-empty region has no vertex");
    const MixedStrategy& v = verts.front();
    if (v.probs == point) {
      out.push_back({v, left});
      break;
    }
    // point = v + t (d), d = point - v; step to the far side q = v + tmax d.
    Vector d(point.size());
    for (size_t j = 0; j < d.size(); ++j) d[j] = point[j] - v.probs[j];
    std::optional<Rational> tmax;
    for (const auto& h : sys.inequalities) {
      Rational slope = dot(h.coeffs, d);
      if (slope >= 0) continue;
      Rational t = (h.bound - dot(h.coeffs, v.probs)) / slope;
      if (!tmax || t < *tmax) tmax = t;
    }
    if (!tmax) throw std::logic_error("region is unbounded");
    // point = (1 - 1/tmax) v + (1/tmax) q
    Rational wv = 1 - 1 / *tmax;
    Vector q(point.size());
    for (size_t j = 0; j < q.size(); ++j) q[j] = v.probs[j] + *tmax * d[j];
    out.push_back({v, left * wv});
    left *= 1 / *tmax;
    point = std::move(q);
  }
  // Merge repeated vertices.
  std::vector<std::pair<MixedStrategy, Rational>> merged;
  for (auto& [v, w] : out) {
    if (w == 0) continue;
    auto it = std::find_if(merged.begin(), merged.end(), [&](const auto& p) { return p.first == v; });
    if (it == merged.end())
      merged.push_back({v, w});
    else
      it->second += w;
  }
  return merged;
}

// Leader-observed form of G0: P1 moves first and P2 sees the move, replying
// with a Pareto-optimal pure response. P2's strategies are response functions.
inline NormalFormGame informed_opponent_game(const NormalFormGame& g0) {
  g0.validate();
  std::vector<std::vector<size_t>> allowed(g0.rows());
  for (size_t i = 0; i < g0.rows(); ++i)
    for (size_t j = 0; j < g0.cols(); ++j) {
      bool dominated = false;
      for (size_t t = 0; t < g0.cols() && !dominated; ++t) {
        auto a = g0.at(i, t), b = g0.at(i, j);
        dominated = a.u1 >= b.u1 && a.u2 >= b.u2 && (a.u1 > b.u1 || a.u2 > b.u2);
      }
      if (!dominated) allowed[i].push_back(j);
    }
  NormalFormGame g;
  g.s1_labels = g0.s1_labels;
  std::vector<size_t> choice(g0.rows(), 0);
  while (true) {
    std::string label;
    for (size_t i = 0; i < g0.rows(); ++i) {
      if (i) label += ",";
      label += g0.s1_labels[i] + "->" + g0.s2_labels[allowed[i][choice[i]]];
    }
    g.s2_labels.push_back(label);
    size_t i = 0;
    while (i < g0.rows() && ++choice[i] == allowed[i].size()) choice[i++] = 0;
    if (i == g0.rows()) break;
  }
  const size_t n = g.s2_labels.size();
  g.u1.assign(g0.rows(), Vector(n));
  g.u2.assign(g0.rows(), Vector(n));
  std::fill(choice.begin(), choice.end(), 0);
  for (size_t col = 0; col < n; ++col) {
    for (size_t i = 0; i < g0.rows(); ++i) {
      g.u1[i][col] = g0.u1[i][allowed[i][choice[i]]];
      g.u2[i][col] = g0.u2[i][allowed[i][choice[i]]];
    }
    size_t i = 0;
    while (i < g0.rows() && ++choice[i] == allowed[i].size()) choice[i++] = 0;
  }
  return g;
}

struct InformedCheck {
  NormalFormGame game;
  HelpsReport helps;  // criterion (a) on the m-sim reduction
};

inline InformedCheck check_informed_opponent(const NormalFormGame& g0, const Rational& cost) {
  InformedCheck c{informed_opponent_game(g0), {}};
  c.helps = decide_msim_helps(c.game, {cost, SimKind::mixed}, Criterion::a);
  return c;
}

}  // namespace simgame
