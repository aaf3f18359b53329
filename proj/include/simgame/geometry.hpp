#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "game.hpp"
#include "linalg.hpp"

namespace simgame {

// coeffs · x >= bound
struct Halfspace {
  Vector coeffs;
  Rational bound;
};

// Polytope inside P2's simplex: the inequalities plus the implicit equality sum(x) = 1.
struct HalfspaceSystem {
  size_t dimension = 0;
  std::vector<Halfspace> inequalities;

  bool contains(const Vector& x) const {
    if (x.size() != dimension) throw StructuralError("point dimension does not match the system");
    if (sum(x) != 1) return false;
    for (const auto& h : inequalities)
      if (dot(h.coeffs, x) < h.bound) return false;
    return true;
  }
};

struct BestResponseRegion {
  size_t s1 = 0;
  HalfspaceSystem system;
  std::vector<MixedStrategy> vertices;
};

// Vertex order used throughout: descending lexicographic on the probability
// vector, so pure strategy 0 of P2 comes first.
inline bool vertex_order(const MixedStrategy& a, const MixedStrategy& b) { return b < a; }

// closure(br^-1(s1)): u1(s1, x) >= u1(t, x) for every other row t, plus x >= 0.
inline HalfspaceSystem br_region_system(const NormalFormGame& g, size_t s1) {
  if (s1 >= g.rows()) throw StructuralError("row index out of range");
  HalfspaceSystem sys;
  sys.dimension = g.cols();
  for (size_t t = 0; t < g.rows(); ++t) {
    if (t == s1) continue;
    Halfspace h{Vector(g.cols()), Rational(0)};
    for (size_t j = 0; j < g.cols(); ++j) h.coeffs[j] = g.u1[s1][j] - g.u1[t][j];
    sys.inequalities.push_back(std::move(h));
  }
  for (size_t j = 0; j < g.cols(); ++j) {
    Halfspace h{Vector(g.cols(), Rational(0)), Rational(0)};
    h.coeffs[j] = 1;
    sys.inequalities.push_back(std::move(h));
  }
  return sys;
}

// Brute force: every choice of (dimension - 1) inequalities taken as equalities,
// together with sum(x) = 1, is solved exactly; feasible solutions are kept.
inline std::vector<MixedStrategy> enumerate_vertices(const HalfspaceSystem& sys) {
  const size_t d = sys.dimension;
  if (d == 0) throw StructuralError("empty system");
  for (const auto& h : sys.inequalities)
    if (h.coeffs.size() != d) throw StructuralError("inequality has wrong length");

  IntMatrix rows;
  IntVector bounds;
  for (const auto& h : sys.inequalities) {
    Vector r = h.coeffs;
    r.push_back(h.bound);
    IntVector ir = scale_to_integers(r);
    bounds.push_back(ir.back());
    ir.pop_back();
    rows.push_back(std::move(ir));
  }
  const size_t m = rows.size();
  const size_t k = d - 1;

  std::set<IntVector> found;
  auto feasible = [&](const IntSolution& s) {
    mpz_class acc;
    for (size_t i = 0; i < m; ++i) {
      acc = 0;
      for (size_t j = 0; j < d; ++j)
        if (rows[i][j] != 0) acc += rows[i][j] * s.num[j];
      if (acc < bounds[i] * s.den) return false;
    }
    return true;
  };
  auto record = [&](IntSolution s) {
    IntVector key = s.num;
    key.push_back(s.den);
    normalize_gcd(key);
    found.insert(std::move(key));
  };

  if (k > m) return {};
  std::vector<size_t> pick(k);
  for (size_t i = 0; i < k; ++i) pick[i] = i;
  IntVector ones(d, mpz_class(1));
  while (true) {
    IntMatrix a;
    IntVector b;
    a.reserve(d);
    for (size_t i : pick) {
      a.push_back(rows[i]);
      b.push_back(bounds[i]);
    }
    a.push_back(ones);
    b.push_back(1);
    if (auto s = solve_integer(std::move(a), std::move(b)); s && feasible(*s)) record(std::move(*s));
    // next combination
    size_t i = k;
    while (i > 0 && pick[i - 1] == m - k + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }

  std::vector<MixedStrategy> out;
  for (const auto& key : found) {
    MixedStrategy v{2, Vector(d)};
    for (size_t j = 0; j < d; ++j) {
      v.probs[j] = Rational(key[j], key[d]);
      v.probs[j].canonicalize();
    }
    out.push_back(std::move(v));
  }
  std::sort(out.begin(), out.end(), vertex_order);
  return out;
}

// One region per P1 pure strategy whose closure is non-empty.
inline std::vector<BestResponseRegion> decompose_simplex(const NormalFormGame& g) {
  std::vector<BestResponseRegion> out;
  for (size_t s1 = 0; s1 < g.rows(); ++s1) {
    BestResponseRegion r{s1, br_region_system(g, s1), {}};
    r.vertices = enumerate_vertices(r.system);
    if (!r.vertices.empty()) out.push_back(std::move(r));
  }
  return out;
}

// A region vertex together with the P1 strategies whose regions contain it.
struct VertexAtom {
  MixedStrategy point;
  std::vector<size_t> regions;
};

inline std::vector<VertexAtom> global_vertices(const std::vector<BestResponseRegion>& regions) {
  std::map<Vector, std::vector<size_t>> seen;
  for (const auto& r : regions)
    for (const auto& v : r.vertices) seen[v.probs].push_back(r.s1);
  std::vector<VertexAtom> out;
  for (auto& [probs, owners] : seen) out.push_back({MixedStrategy{2, probs}, owners});
  std::sort(out.begin(), out.end(),
            [](const VertexAtom& a, const VertexAtom& b) { return vertex_order(a.point, b.point); });
  return out;
}

inline mpz_class binomial(unsigned long n, unsigned long k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// Upper bound on vertices per region for |S2| = n: C(2n, n - 1).
inline mpz_class region_vertex_bound(size_t n) { return binomial(2 * n, n - 1); }

}  // namespace simgame
