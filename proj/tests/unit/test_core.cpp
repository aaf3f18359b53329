#include <catch_amalgamated.hpp>

#include "../oracles.hpp"

using namespace simgame;

namespace {
NormalFormGame tg() { return make_game({"T", "WO"}, {"C", "D"}, {{20, -100}, {0, 0}}, {{20, 100}, {0, 0}}); }
}  // namespace

TEST_CASE("rational literals parse and normalise") {
  CHECK(*parse_rational("3/6") == Rational(1, 2));
  CHECK(*parse_rational("-4/8") == Rational(-1, 2));
  CHECK(*parse_rational("+7") == 7);
  CHECK(*parse_rational("123456789012345678901234567890") > 0);
  CHECK_FALSE(parse_rational("1/0"));
  CHECK_FALSE(parse_rational("1.5"));
  CHECK_FALSE(parse_rational(""));
  CHECK_FALSE(parse_rational("1/-2"));
  CHECK_FALSE(parse_rational("a/b"));
}

TEST_CASE("decimal display uses 6 significant digits, half to even") {
  CHECK(to_decimal(Rational(15, 17)) == "0.882353");
  CHECK(to_decimal(Rational(9, 29)) == "0.310345");
  CHECK(to_decimal(Rational(2, 25)) == "0.08");
  CHECK(to_decimal(Rational(20, 3)) == "6.66667");
  CHECK(to_decimal(Rational(0)) == "0");
  // 1.234565 sits exactly between two 6-digit values; even wins.
  CHECK(to_decimal(*parse_rational("1234565/1000000")) == "1.23456");
  CHECK(to_decimal(*parse_rational("1234575/1000000")) == "1.23458");
  CHECK(to_decimal(Rational(-1, 3)) == "-0.333333");
}

TEST_CASE("game validation lists every violation") {
  NormalFormGame g;
  g.s1_labels = {"a", "a"};
  g.s2_labels = {"x"};
  g.u1 = {{1}, {}};
  g.u2 = {{1}};
  auto v = g.violations();
  CHECK(v.size() >= 3);
  CHECK_THROWS_AS(g.validate(), ValidationError);
  CHECK(tg().violations().empty());
}

TEST_CASE("expected utility and best responses in the trust game") {
  auto g = tg();
  MixedStrategy y{2, {Rational(5, 6), Rational(1, 6)}};
  auto br = best_responses(g, y);
  CHECK(br == std::vector<size_t>{0, 1});
  // Both rows pay 0 to P1; T is better for P2.
  CHECK(favourable_best_responses(g, y) == std::vector<size_t>{0});
  auto pay = favourable_reply_payoff(g, y);
  CHECK(pay.u1 == 0);
  CHECK(pay.u2 == Rational(100, 3));
  CHECK(expected_utility(g, MixedStrategy::pure(1, 2, 1), y) == PayoffPair{0, 0});
  CHECK_THROWS_AS(expected_utility(g, MixedStrategy::pure(1, 3, 0), y), StructuralError);
}

TEST_CASE("is_nash agrees with the no-deviation oracle on random 2x3 profiles") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 100; ++t) {
    auto g = oracle::random_game(2, 3, rng, -2, 2);
    auto x = oracle::random_simplex_point(2, rng);
    auto y = oracle::random_simplex_point(3, rng);
    if (t % 3 == 0) x = oracle::unit(2, t % 2);
    if (t % 4 == 0) y = oracle::unit(3, t % 3);
    CHECK(is_nash(g, {1, x}, {2, y}) == oracle::no_deviation(g, x, y));
  }
}

TEST_CASE("pure maxmin values") {
  // Matching pennies: every pure strategy can be punished.
  auto g = make_game({"H", "T"}, {"H", "T"}, {{1, -1}, {-1, 1}}, {{-1, 1}, {1, -1}});
  CHECK(maxmin_value(g, 1) == -1);
  CHECK(maxmin_value(g, 2) == -1);
  auto a = make_game({"a", "b"}, {"x", "y"}, {{3, 1}, {2, 2}}, {{0, 5}, {4, 1}});
  CHECK(maxmin_value(a, 1) == 2);
  CHECK(maxmin_value(a, 2) == 1);
  CHECK(maxmin_value(tg(), 1) == 0);
}

TEST_CASE("swap_players transposes roles") {
  auto g = tg();
  auto s = swap_players(g);
  CHECK(s.rows() == 2);
  CHECK(s.u1[1][0] == g.u2[0][1]);
  CHECK(s.u2[1][0] == g.u1[0][1]);
  CHECK(swap_players(s) == g);
}

TEST_CASE("integer linear solves") {
  Matrix a = {{2, 1}, {1, 3}};
  Vector b = {3, 5};
  auto x = solve(a, b);
  REQUIRE(x);
  CHECK((*x)[0] == Rational(4, 5));
  CHECK((*x)[1] == Rational(7, 5));
  CHECK(rank({{1, 2}, {2, 4}}) == 1);
  CHECK_FALSE(solve({{1, 2}, {2, 4}}, {1, 1}));
}
