#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "game.hpp"

namespace simgame {

struct BipartiteGraph {
  size_t a_count = 0, b_count = 0;
  std::set<std::pair<size_t, size_t>> edges;  // (a, b), 0-based
  long k = 1;

  std::vector<std::string> violations() const {
    std::vector<std::string> out;
    if (k < 1) out.push_back("k must be at least 1");
    for (auto [a, b] : edges)
      if (a >= a_count || b >= b_count)
        out.push_back("edge (" + std::to_string(a) + ", " + std::to_string(b) + ") is out of range");
    return out;
  }

  bool has_edge(size_t a, size_t b) const { return edges.count({a, b}) > 0; }
};

// Rows and columns: a1..aA, b1..bB, OO (graph part), then T1, WO1, T2, WO2
// against C1, D1, C2, D2. Cells in different parts pay (0,0).
inline NormalFormGame hardness_gadget(const BipartiteGraph& graph, const Rational& cost) {
  auto v = graph.violations();
  if (cost <= 0) v.push_back("simulation cost must be positive");
  if (!v.empty()) throw ValidationError(v);
  const size_t A = graph.a_count, B = graph.b_count, gp = A + B + 1;
  const size_t n = gp + 4;
  const Rational k(graph.k);
  NormalFormGame g;
  for (size_t i = 0; i < A; ++i) g.s1_labels.push_back("a" + std::to_string(i + 1));
  for (size_t i = 0; i < B; ++i) g.s1_labels.push_back("b" + std::to_string(i + 1));
  g.s1_labels.push_back("OO");
  g.s2_labels = g.s1_labels;
  for (const char* s : {"T1", "WO1", "T2", "WO2"}) g.s1_labels.push_back(s);
  for (const char* s : {"C1", "D1", "C2", "D2"}) g.s2_labels.push_back(s);
  g.u1.assign(n, Vector(n, Rational(0)));
  g.u2.assign(n, Vector(n, Rational(0)));
  auto set = [&](size_t i, size_t j, Rational x, Rational y) {
    g.u1[i][j] = std::move(x);
    g.u2[i][j] = std::move(y);
  };
  const size_t oo = gp - 1;
  for (size_t i = 0; i < gp; ++i)
    for (size_t j = 0; j < gp; ++j) {
      if (i == oo && j == oo) continue;
      if (i == oo) {
        set(i, j, 1, -1);
      } else if (j == oo) {
        set(i, j, -1, 1);
      } else if (i < A && j >= A) {
        if (graph.has_edge(i, j - A)) set(i, j, 1, 1);
      } else if (i < A && j < A) {
        if (i == j) set(i, j, -k, k);
      } else if (i >= A && j >= A) {
        if (i == j) set(i, j, k, -k);
      }
    }
  for (size_t c = 0; c < 2; ++c) {
    size_t t = gp + 2 * c, wo = t + 1, cc = gp + 2 * c, d = cc + 1;
    set(t, cc, 1, 1);
    set(t, d, -1, 2);
    set(wo, cc, 1, -1);
    set(wo, d, 0, 0);
  }
  return g;
}

}  // namespace simgame
