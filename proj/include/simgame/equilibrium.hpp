#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "game.hpp"
#include "geometry.hpp"
#include "polyhedra.hpp"

namespace simgame {

// A vertex of both best-response polytopes forming an equilibrium.
struct ExtremeEquilibrium {
  MixedStrategy s1;
  MixedStrategy s2;
  PayoffPair payoffs;

  bool operator<(const ExtremeEquilibrium& o) const {
    if (s1 != o.s1) return vertex_order(s1, o.s1);
    return vertex_order(s2, o.s2);
  }
  bool operator==(const ExtremeEquilibrium& o) const { return s1 == o.s1 && s2 == o.s2; }
};

// One maximal Nash subset: every pairing of an s1 vertex with an s2 vertex is an
// equilibrium, and so is every point of the product of their convex hulls.
// (s1, s2) is a representative with the smallest supports.
struct EquilibriumProfile {
  MixedStrategy s1;
  MixedStrategy s2;
  PayoffPair payoffs;
  std::vector<size_t> support1;
  std::vector<size_t> support2;
  bool degenerate = false;
  std::vector<MixedStrategy> s1_vertices;
  std::vector<MixedStrategy> s2_vertices;
};

namespace detail {

// Entries shifted to be >= 1 and scaled to integers; equilibria are unaffected.
inline IntMatrix positive_integer_matrix(const Matrix& u) {
  Rational lo = u[0][0];
  for (const auto& row : u)
    for (const auto& x : row) lo = std::min(lo, x);
  mpz_class l = 1;
  for (const auto& row : u)
    for (const auto& x : row) {
      Rational y = x - lo + 1;
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), y.get_den_mpz_t());
    }
  IntMatrix out(u.size(), IntVector(u[0].size()));
  for (size_t i = 0; i < u.size(); ++i)
    for (size_t j = 0; j < u[i].size(); ++j) {
      Rational y = (u[i][j] - lo + 1) * Rational(l);
      out[i][j] = y.get_num();
    }
  return out;
}

inline MixedStrategy normalized(int owner, const IntVector& v, size_t n) {
  mpz_class total = 0;
  for (size_t i = 0; i < n; ++i) total += v[i];
  MixedStrategy s{owner, Vector(n)};
  for (size_t i = 0; i < n; ++i) {
    s.probs[i] = Rational(v[i], total);
    s.probs[i].canonicalize();
  }
  return s;
}

inline std::vector<ExtremeEquilibrium> extreme_equilibria_rows_le_cols(const NormalFormGame& g) {
  const size_t m = g.rows(), n = g.cols();
  IntMatrix a = positive_integer_matrix(g.u1);
  IntMatrix b = positive_integer_matrix(g.u2);

  // P = { x >= 0 : x^T B <= 1 } homogenised as (x, t).
  IntMatrix px;
  for (size_t j = 0; j < n; ++j) {
    IntVector row(m + 1);
    for (size_t i = 0; i < m; ++i) row[i] = -b[i][j];
    row[m] = 1;
    px.push_back(std::move(row));
  }
  auto xrays = orthant_cone_rays(m + 1, px);

  std::map<std::pair<std::vector<size_t>, std::vector<size_t>>, std::vector<MixedStrategy>> faces;
  std::set<ExtremeEquilibrium> found;
  for (const auto& xr : xrays) {
    if (xr.v[m] == 0) continue;
    std::vector<size_t> supp, tight;
    for (size_t i = 0; i < m; ++i)
      if (xr.v[i] != 0) supp.push_back(i);
    if (supp.empty()) continue;
    for (size_t j = 0; j < n; ++j)
      if (xr.zeros.test(m + 1 + j)) tight.push_back(j);
    if (tight.empty()) continue;

    auto key = std::make_pair(supp, tight);
    auto it = faces.find(key);
    if (it == faces.end()) {
      // Face of Q = { y >= 0 : A y <= 1 } with y outside `tight` fixed to 0 and
      // the rows in `supp` tight.
      const size_t k = tight.size();
      IntMatrix qy;
      for (size_t i = 0; i < m; ++i) {
        IntVector row(k + 1);
        for (size_t c = 0; c < k; ++c) row[c] = -a[i][tight[c]];
        row[k] = 1;
        qy.push_back(row);
      }
      for (size_t i : supp) {
        IntVector row(k + 1);
        for (size_t c = 0; c < k; ++c) row[c] = a[i][tight[c]];
        row[k] = -1;
        qy.push_back(std::move(row));
      }
      std::vector<MixedStrategy> ys;
      for (const auto& yr : orthant_cone_rays(k + 1, qy)) {
        if (yr.v[k] == 0) continue;
        IntVector full(n, mpz_class(0));
        bool nonzero = false;
        for (size_t c = 0; c < k; ++c) {
          full[tight[c]] = yr.v[c];
          if (yr.v[c] != 0) nonzero = true;
        }
        if (nonzero) ys.push_back(normalized(2, full, n));
      }
      it = faces.emplace(key, std::move(ys)).first;
    }
    MixedStrategy x = normalized(1, xr.v, m);
    for (const auto& y : it->second) {
      ExtremeEquilibrium e{x, y, expected_utility(g, x, y)};
      if (!is_nash(g, x, y)) throw std::logic_error("vertex pair failed the equilibrium check");
      found.insert(std::move(e));
    }
  }
  return {found.begin(), found.end()};
}

}  // namespace detail

// All extreme equilibria (pairs of vertices of the two best-response polytopes).
inline std::vector<ExtremeEquilibrium> extreme_equilibria(const NormalFormGame& g) {
  g.validate();
  if (g.rows() <= g.cols()) return detail::extreme_equilibria_rows_le_cols(g);
  auto swapped = detail::extreme_equilibria_rows_le_cols(swap_players(g));
  std::vector<ExtremeEquilibrium> out;
  for (auto& e : swapped) {
    MixedStrategy s1{1, e.s2.probs}, s2{2, e.s1.probs};
    out.push_back({s1, s2, {e.payoffs.u2, e.payoffs.u1}});
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Groups extreme equilibria into maximal Nash subsets (maximal bicliques of the
// vertex compatibility graph).
inline std::vector<EquilibriumProfile> nash_subsets(const NormalFormGame& g,
                                                    const std::vector<ExtremeEquilibrium>& ext) {
  std::vector<MixedStrategy> xs, ys;
  for (const auto& e : ext) {
    xs.push_back(e.s1);
    ys.push_back(e.s2);
  }
  auto uniq = [](std::vector<MixedStrategy>& v) {
    std::sort(v.begin(), v.end(), vertex_order);
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  uniq(xs);
  uniq(ys);
  auto index_of = [](const std::vector<MixedStrategy>& v, const MixedStrategy& s) {
    return static_cast<size_t>(std::lower_bound(v.begin(), v.end(), s, vertex_order) - v.begin());
  };
  std::vector<std::set<size_t>> nbr(xs.size());
  for (const auto& e : ext) nbr[index_of(xs, e.s1)].insert(index_of(ys, e.s2));

  std::set<std::set<size_t>> closed(nbr.begin(), nbr.end());
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<std::set<size_t>> cur(closed.begin(), closed.end());
    for (size_t i = 0; i < cur.size(); ++i)
      for (size_t j = i + 1; j < cur.size(); ++j) {
        std::set<size_t> meet;
        std::set_intersection(cur[i].begin(), cur[i].end(), cur[j].begin(), cur[j].end(),
                              std::inserter(meet, meet.begin()));
        if (!meet.empty() && closed.insert(meet).second) grew = true;
      }
  }

  std::vector<EquilibriumProfile> out;
  for (const auto& yset : closed) {
    if (yset.empty()) continue;
    std::vector<size_t> xset;
    for (size_t i = 0; i < xs.size(); ++i)
      if (std::includes(nbr[i].begin(), nbr[i].end(), yset.begin(), yset.end())) xset.push_back(i);
    EquilibriumProfile p;
    for (size_t i : xset) p.s1_vertices.push_back(xs[i]);
    for (size_t j : yset) p.s2_vertices.push_back(ys[j]);
    auto weight = [](const MixedStrategy& s) { return s.support().size(); };
    const MixedStrategy* bx = &p.s1_vertices.front();
    for (const auto& x : p.s1_vertices)
      if (weight(x) < weight(*bx)) bx = &x;
    const MixedStrategy* by = &p.s2_vertices.front();
    for (const auto& y : p.s2_vertices)
      if (weight(y) < weight(*by)) by = &y;
    p.s1 = *bx;
    p.s2 = *by;
    p.payoffs = expected_utility(g, p.s1, p.s2);
    p.support1 = p.s1.support();
    p.support2 = p.s2.support();
    p.degenerate = p.s1_vertices.size() > 1 || p.s2_vertices.size() > 1;
    out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end(), [](const EquilibriumProfile& a, const EquilibriumProfile& b) {
    if (a.s1 != b.s1) return vertex_order(a.s1, b.s1);
    if (a.s2 != b.s2) return vertex_order(a.s2, b.s2);
    return a.s1_vertices.size() < b.s1_vertices.size();
  });
  return out;
}

inline std::vector<EquilibriumProfile> enumerate_nash(const NormalFormGame& g) {
  return nash_subsets(g, extreme_equilibria(g));
}

struct StackelbergOutcome {
  MixedStrategy leader_strategy;
  size_t follower_reply = 0;
  PayoffPair payoffs;
};

// P2 commits, P1 answers with a favourable best response. The optimum over
// each closed region is attained at one of its vertices.
inline StackelbergOutcome stackelberg(const NormalFormGame& g) {
  g.validate();
  std::optional<StackelbergOutcome> best;
  for (const auto& region : decompose_simplex(g)) {
    for (const auto& v : region.vertices) {
      auto pay = expected_utility(g, MixedStrategy::pure(1, g.rows(), region.s1), v);
      if (!best || pay.u2 > best->payoffs.u2) best = StackelbergOutcome{v, region.s1, pay};
    }
  }
  return *best;
}

inline StackelbergOutcome pure_commitment(const NormalFormGame& g) {
  g.validate();
  std::optional<StackelbergOutcome> best;
  for (size_t j = 0; j < g.cols(); ++j) {
    auto s2 = MixedStrategy::pure(2, g.cols(), j);
    size_t r = favourable_best_responses(g, s2).front();
    auto pay = g.at(r, j);
    if (!best || pay.u2 > best->payoffs.u2) best = StackelbergOutcome{s2, r, pay};
  }
  return *best;
}

// Every optimal pure commitment strictly Pareto-improves every equilibrium.
// Checking extreme equilibria suffices: within a Nash subset u1 depends only on
// P2's vertex and u2 only on P1's.
inline bool is_generalised_trust_game(const NormalFormGame& g) {
  auto best = pure_commitment(g);
  auto ext = extreme_equilibria(g);
  for (size_t j = 0; j < g.cols(); ++j) {
    auto s2 = MixedStrategy::pure(2, g.cols(), j);
    auto pay = g.at(favourable_best_responses(g, s2).front(), j);
    if (pay.u2 != best.payoffs.u2) continue;
    for (const auto& e : ext)
      if (!pareto_strictly_improves(pay, e.payoffs)) return false;
  }
  return true;
}

}  // namespace simgame
