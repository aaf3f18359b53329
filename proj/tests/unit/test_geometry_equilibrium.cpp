#include <catch_amalgamated.hpp>

#include "../oracles.hpp"

using namespace simgame;

namespace {
NormalFormGame tg() { return make_game({"T", "WO"}, {"C", "D"}, {{20, -100}, {0, 0}}, {{20, 100}, {0, 0}}); }
NormalFormGame ptg() {
  return make_game({"FT", "PT", "WO"}, {"C", "D"}, {{20, -100}, {10, -25}, {0, 0}}, {{20, 100}, {10, 25}, {0, 0}});
}
MixedStrategy y2(Rational c, Rational d) { return MixedStrategy{2, {c, d}}; }
}  // namespace

TEST_CASE("trust game regions") {
  auto regions = decompose_simplex(tg());
  REQUIRE(regions.size() == 2);
  CHECK(regions[0].s1 == 0);
  CHECK(regions[0].vertices == std::vector<MixedStrategy>{y2(1, 0), y2(Rational(5, 6), Rational(1, 6))});
  CHECK(regions[1].vertices == std::vector<MixedStrategy>{y2(Rational(5, 6), Rational(1, 6)), y2(0, 1)});
}

TEST_CASE("partial trust game regions break at 2/17 and 2/7") {
  auto regions = decompose_simplex(ptg());
  REQUIRE(regions.size() == 3);
  CHECK(regions[0].vertices == std::vector<MixedStrategy>{y2(1, 0), y2(Rational(15, 17), Rational(2, 17))});
  CHECK(regions[1].vertices ==
        std::vector<MixedStrategy>{y2(Rational(15, 17), Rational(2, 17)), y2(Rational(5, 7), Rational(2, 7))});
  CHECK(regions[2].vertices == std::vector<MixedStrategy>{y2(Rational(5, 7), Rational(2, 7)), y2(0, 1)});
  auto atoms = global_vertices(regions);
  CHECK(atoms.size() == 4);
  CHECK(atoms[1].regions == std::vector<size_t>{0, 1});
}

TEST_CASE("dominated rows have empty regions") {
  auto g = make_game({"a", "b"}, {"x", "y"}, {{1, 1}, {0, 0}}, {{0, 0}, {0, 0}});
  auto regions = decompose_simplex(g);
  REQUIRE(regions.size() == 1);
  CHECK(regions[0].s1 == 0);
}

TEST_CASE("vertex bound and size report") {
  CHECK(region_vertex_bound(2) == 4);
  CHECK(region_vertex_bound(3) == 15);
  auto s = size_report(ptg());
  CHECK(s.regions == 3);
  CHECK(s.reduced_rows == 4);
  CHECK(s.reduced_cols == 4);
  CHECK(s.column_bound == 12);
}

TEST_CASE("trust game has the single equilibrium WO, D") {
  auto eqs = enumerate_nash(tg());
  REQUIRE(eqs.size() == 1);
  CHECK(eqs[0].s1 == MixedStrategy::pure(1, 2, 1));
  CHECK(eqs[0].s2 == MixedStrategy::pure(2, 2, 1));
  CHECK(eqs[0].payoffs == PayoffPair{0, 0});
  // P2 may put up to 1/6 on C while P1 walks out.
  CHECK(eqs[0].degenerate);
  CHECK(eqs[0].s2_vertices.size() == 2);
}

TEST_CASE("coordination game has two pure equilibria and a mixed one") {
  auto g = make_coordination_game({{2, 2}, {1, 1}});
  auto eqs = enumerate_nash(g);
  REQUIRE(eqs.size() == 3);
  std::set<PayoffPair> pays;
  for (const auto& e : eqs) pays.insert(e.payoffs);
  CHECK(pays.count({Rational(2, 3), Rational(2, 3)}) == 1);
  CHECK(pays.count({2, 2}) == 1);
  CHECK(pays.count({1, 1}) == 1);
}

TEST_CASE("matching pennies") {
  auto g = make_game({"H", "T"}, {"H", "T"}, {{1, -1}, {-1, 1}}, {{-1, 1}, {1, -1}});
  auto eqs = enumerate_nash(g);
  REQUIRE(eqs.size() == 1);
  CHECK(eqs[0].s1 == MixedStrategy{1, {Rational(1, 2), Rational(1, 2)}});
  CHECK_FALSE(eqs[0].degenerate);
}

TEST_CASE("fully indifferent game is one Nash subset") {
  auto g = make_game({"a", "b"}, {"x", "y", "z"}, {{0, 0, 0}, {0, 0, 0}}, {{0, 0, 0}, {0, 0, 0}});
  auto eqs = enumerate_nash(g);
  REQUIRE(eqs.size() == 1);
  CHECK(eqs[0].s1_vertices.size() == 2);
  CHECK(eqs[0].s2_vertices.size() == 3);
}

TEST_CASE("extreme equilibria match the 2x2 oracle") {
  std::mt19937_64 rng(2026);
  for (int t = 0; t < 300; ++t) {
    auto g = oracle::random_game(2, 2, rng, -2, 2);
    std::set<std::pair<Vector, Vector>> mine;
    for (const auto& e : extreme_equilibria(g)) mine.insert({e.s1.probs, e.s2.probs});
    INFO("trial " << t);
    CHECK(mine == oracle::extreme_equilibria_2x2(g));
  }
}

TEST_CASE("every Nash subset is a product of equilibria") {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 40; ++t) {
    auto g = oracle::random_game(3, 3, rng, -2, 2);
    for (const auto& p : enumerate_nash(g)) {
      for (const auto& x : p.s1_vertices)
        for (const auto& y : p.s2_vertices) CHECK(oracle::no_deviation(g, x.probs, y.probs));
      // midpoint of the subset
      Vector x(g.rows(), Rational(0)), y(g.cols(), Rational(0));
      for (const auto& v : p.s1_vertices)
        for (size_t i = 0; i < x.size(); ++i) x[i] += v[i] / Rational(p.s1_vertices.size());
      for (const auto& v : p.s2_vertices)
        for (size_t j = 0; j < y.size(); ++j) y[j] += v[j] / Rational(p.s2_vertices.size());
      CHECK(oracle::no_deviation(g, x, y));
    }
  }
}

TEST_CASE("games with more rows than columns") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 30; ++t) {
    auto g = oracle::random_game(4, 2, rng, -3, 3);
    auto ext = extreme_equilibria(g);
    CHECK_FALSE(ext.empty());
    for (const auto& e : ext) CHECK(oracle::no_deviation(g, e.s1.probs, e.s2.probs));
  }
}

TEST_CASE("Stackelberg commitments") {
  auto se = stackelberg(tg());
  CHECK(se.leader_strategy == y2(Rational(5, 6), Rational(1, 6)));
  CHECK(se.follower_reply == 0);
  CHECK(se.payoffs == PayoffPair{0, Rational(100, 3)});

  auto sp = stackelberg(ptg());
  CHECK(sp.leader_strategy == y2(Rational(15, 17), Rational(2, 17)));
  CHECK(sp.follower_reply == 0);
  CHECK(sp.payoffs == PayoffPair{Rational(100, 17), Rational(500, 17)});

  auto pc = pure_commitment(ptg());
  CHECK(pc.payoffs == PayoffPair{20, 20});
  CHECK(is_generalised_trust_game(tg()));
  CHECK(is_generalised_trust_game(ptg()));
  CHECK_FALSE(is_generalised_trust_game(make_coordination_game({{2, 2}, {1, 1}})));
}

TEST_CASE("Stackelberg beats every grid commitment") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 30; ++t) {
    auto g = oracle::random_game(3, 3, rng);
    auto se = stackelberg(g);
    for (const auto& y : oracle::simplex_grid(3, 12))
      CHECK(oracle::favourable_reply(g, y).second.u2 <= se.payoffs.u2);
  }
}
