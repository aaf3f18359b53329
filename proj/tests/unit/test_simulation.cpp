#include <catch_amalgamated.hpp>

#include "../oracles.hpp"

using namespace simgame;

namespace {
NormalFormGame tg() { return make_game({"T", "WO"}, {"C", "D"}, {{20, -100}, {0, 0}}, {{20, 100}, {0, 0}}); }
NormalFormGame ptg() {
  return make_game({"FT", "PT", "WO"}, {"C", "D"}, {{20, -100}, {10, -25}, {0, 0}}, {{20, 100}, {10, 25}, {0, 0}});
}
MixedStrategy y2(Rational c, Rational d) { return MixedStrategy{2, {c, d}}; }

// Reduced-game entries recomputed from the base game.
void check_entries(const ReducedSimGame& r) {
  const auto& b = r.base;
  for (size_t j = 0; j < r.meta.cols(); ++j) {
    const Vector& y = r.p2_map[j].probs;
    for (size_t i = 0; i < b.rows(); ++i) {
      CHECK(r.meta.u1[i][j] == oracle::u1_at(b, oracle::unit(b.rows(), i), y));
      CHECK(r.meta.u2[i][j] == oracle::u2_at(b, oracle::unit(b.rows(), i), y));
    }
    auto fav = oracle::favourable_reply(b, y).second;
    CHECK(r.meta.u1[r.simulate_row()][j] == fav.u1 - r.config.cost);
    CHECK(r.meta.u2[r.simulate_row()][j] == fav.u2);
  }
}
}  // namespace

TEST_CASE("m-sim reduction of the partial trust game") {
  auto r = build_msim_reduced(ptg(), {2, SimKind::mixed});
  CHECK(r.meta.rows() == 4);
  CHECK(r.meta.s1_labels.back() == "m-sim");
  REQUIRE(r.meta.cols() == 4);
  CHECK(r.meta.s2_labels[1] == "15/17 C + 2/17 D");
  CHECK(r.p2_map[2] == y2(Rational(5, 7), Rational(2, 7)));
  check_entries(r);
}

TEST_CASE("p-sim reduction keeps pure columns") {
  auto r = build_psim(ptg(), {2, SimKind::mixed});
  CHECK(r.config.kind == SimKind::pure);
  CHECK(r.meta.s1_labels.back() == "p-sim");
  REQUIRE(r.meta.cols() == 2);
  check_entries(r);
  CHECK_THROWS_AS(build_psim(ptg(), {0, SimKind::pure}), ValidationError);
}

TEST_CASE("simulation label avoids clashes") {
  auto g = make_game({"m-sim", "x"}, {"a", "b"}, {{1, 0}, {0, 1}}, {{1, 0}, {0, 1}});
  auto r = build_msim_reduced(g, {1, SimKind::mixed});
  CHECK(r.meta.s1_labels.back() == "m-sim'");
}

TEST_CASE("partial trust game simulation equilibrium") {
  auto r = build_msim_reduced(ptg(), {2, SimKind::mixed});
  auto eqs = find_simulation_equilibria(r);
  REQUIRE(eqs.size() == 1);
  const auto& p = eqs[0].profile;
  CHECK(p.s1 == MixedStrategy{1, {0, Rational(20, 29), 0, Rational(9, 29)}});
  CHECK(p.s2 == MixedStrategy{2, {0, Rational(23, 25), 0, Rational(2, 25)}});
  CHECK(p.payoffs == PayoffPair{Rational(58, 17), Rational(500, 29)});
  CHECK(oracle::no_deviation(r.meta, p.s1.probs, p.s2.probs));
  // 23/25 (15/17, 2/17) + 2/25 (0, 1)
  CHECK(eqs[0].aggregate == y2(Rational(69, 85), Rational(16, 85)));
}

TEST_CASE("trust game: simulation never helps") {
  for (auto c : {Rational(1, 10), Rational(1), Rational(2), Rational(10)}) {
    auto rep = decide_msim_helps(tg(), {c, SimKind::mixed}, Criterion::a);
    CHECK_FALSE(rep.helps);
    CHECK(rep.base_payoffs == std::vector<PayoffPair>{{0, 0}});
  }
}

TEST_CASE("partial trust game: simulation helps") {
  auto rep = decide_msim_helps(ptg(), {2, SimKind::mixed}, Criterion::a);
  CHECK(rep.helps);
  REQUIRE(rep.witness);
  CHECK(rep.witness->payoffs.u1 > 0);
  CHECK(rep.witness->payoffs.u2 > 0);
  for (auto crit : {Criterion::b, Criterion::c, Criterion::d, Criterion::e})
    CHECK(decide_msim_helps(ptg(), {2, SimKind::mixed}, crit).helps);
  // Pure simulation sees through the commitment-free game and gets full trust.
  CHECK(decide_msim_helps(tg(), {2, SimKind::pure}, Criterion::a).helps);
}

TEST_CASE("custom welfare for criterion d") {
  auto rep = decide_msim_helps(ptg(), {2, SimKind::mixed}, Criterion::d,
                               [](const PayoffPair& p) { return Rational(p.u1); });
  CHECK(rep.helps);
  CHECK(parse_criterion("e") == Criterion::e);
  CHECK_FALSE(parse_criterion("f"));
}

TEST_CASE("base equilibria lift to the simulation game") {
  auto r = build_msim_reduced(tg(), {1, SimKind::mixed});
  for (const auto& e : enumerate_nash(tg())) CHECK(lift_check(tg(), r, e));
  auto rp = build_msim_reduced(ptg(), {2, SimKind::mixed});
  for (const auto& e : enumerate_nash(ptg())) CHECK(lift_check(ptg(), rp, e));
}

TEST_CASE("meta-strategies") {
  MetaStrategy m;
  m.atoms = {{y2(1, 0), Rational(1, 2)}, {y2(0, 1), Rational(1, 2)}};
  CHECK(m.valid());
  CHECK(m.aggregate() == y2(Rational(1, 2), Rational(1, 2)));
  m.atoms.push_back({y2(1, 0), 0});
  CHECK_FALSE(m.valid());
  CHECK_THROWS_AS(MetaStrategy{}.aggregate(), StructuralError);
}

TEST_CASE("msim payoff against an arbitrary strategy") {
  auto r = build_msim_reduced(ptg(), {2, SimKind::mixed});
  MixedStrategy sim = MixedStrategy::pure(1, 4, 3);
  // Against 4/5 C + 1/5 D P1 answers PT: 10*4/5 - 25/5 = 3, minus the cost.
  auto p = msim_payoff(r, sim, y2(Rational(4, 5), Rational(1, 5)));
  CHECK(p.u1 == 1);
  CHECK(p.u2 == 13);
}

TEST_CASE("decomposing a strategy into region vertices") {
  auto d = decompose_in_region(ptg(), 1, y2(Rational(4, 5), Rational(1, 5)));
  REQUIRE(d);
  REQUIRE(d->size() == 2);
  Vector total(2, Rational(0));
  Rational w = 0;
  for (const auto& [v, wt] : *d) {
    CHECK(br_region_system(ptg(), 1).contains(v.probs));
    total[0] += wt * v[0];
    total[1] += wt * v[1];
    w += wt;
  }
  CHECK(w == 1);
  CHECK(total == Vector{Rational(4, 5), Rational(1, 5)});
  CHECK_FALSE(decompose_in_region(ptg(), 0, y2(0, 1)));
}

TEST_CASE("decomposition in three dimensions") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    auto g = oracle::random_game(3, 3, rng);
    auto y = oracle::random_simplex_point(3, rng);
    for (size_t s = 0; s < 3; ++s) {
      auto d = decompose_in_region(g, s, {2, y});
      CHECK(bool(d) == br_region_system(g, s).contains(y));
      if (!d) continue;
      Vector total(3, Rational(0));
      auto regions = decompose_simplex(g);
      for (const auto& [v, wt] : *d) {
        CHECK(wt > 0);
        for (size_t j = 0; j < 3; ++j) total[j] += wt * v[j];
        bool is_vertex = false;
        for (const auto& r : regions)
          if (r.s1 == s) is_vertex = std::find(r.vertices.begin(), r.vertices.end(), v) != r.vertices.end();
        CHECK(is_vertex);
      }
      CHECK(total == y);
    }
  }
}

TEST_CASE("size report counts") {
  auto s = size_report(tg());
  CHECK(s.base_rows == 2);
  CHECK(s.region_vertices == std::vector<size_t>{2, 2});
  CHECK(s.reduced_cols == 3);
  CHECK(s.vertex_bound_per_region == 4);
}

TEST_CASE("simulating an informed opponent does not help") {
  auto c = check_informed_opponent(tg(), 1);
  // T: C and D are both Pareto-optimal; WO: both give (0,0) so both survive.
  CHECK(c.game.cols() == 4);
  CHECK_FALSE(c.helps.helps);
  auto ptgc = check_informed_opponent(ptg(), 2);
  CHECK_FALSE(ptgc.helps.helps);
}
