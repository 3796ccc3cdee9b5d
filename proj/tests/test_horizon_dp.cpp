#include <doctest.h>

#include "hurry/exact_chain.hpp"
#include "hurry/horizon_dp.hpp"
#include "support.hpp"

using namespace hurry;

namespace {

// Exhaustive game tree: at every node try every admissible stake and keep the
// best continuation. No tables, no memoisation.
Rational tree_value(const Rational& p, int goal, int capital, int rounds_left) {
  if (capital >= goal) return Rational(1);
  if (capital <= 0 || rounds_left == 0) return Rational(0);
  Rational best(0);
  for (int x = 1; x <= std::min(capital, goal - capital); ++x) {
    const Rational v = p * tree_value(p, goal, capital + x, rounds_left - 1) +
                       (Rational(1) - p) * tree_value(p, goal, capital - x, rounds_left - 1);
    if (v > best) best = v;
  }
  return best;
}

std::vector<int> tree_maximisers(const Rational& p, int goal, int capital, int rounds_left) {
  const Rational best = tree_value(p, goal, capital, rounds_left);
  std::vector<int> out;
  for (int x = 1; x <= std::min(capital, goal - capital); ++x) {
    const Rational v = p * tree_value(p, goal, capital + x, rounds_left - 1) +
                       (Rational(1) - p) * tree_value(p, goal, capital - x, rounds_left - 1);
    if (v == best) out.push_back(x);
  }
  return out;
}

}  // namespace

TEST_CASE("best_stake examples") {
  const GameSpec spec(rat(3, 5), 4);
  auto a = best_stake<Rational>(spec, 2, 1);
  CHECK(a.stake == 2);
  CHECK(a.value == rat(3, 5));
  auto b = best_stake<Rational>(spec, 1, 2);
  CHECK(b.stake == 1);
  CHECK(b.value == rat(9, 25));
  // Unreachable goal in one round: value 0 and the largest stake.
  const GameSpec wide(rat(2, 3), 10);
  for (int i = 1; 2 * i < 10; ++i) {
    auto d = best_stake<Rational>(wide, i, 1);
    CHECK(d.value == Rational(0));
    CHECK(d.stake == std::min(i, 10 - i));
  }
  CHECK_THROWS_AS(best_stake<Rational>(spec, 0, 2), std::domain_error);
  CHECK_THROWS_AS(best_stake<Rational>(spec, 1, 0), std::domain_error);
}

TEST_CASE("build_table examples") {
  const auto big = build_table<Rational>(GameSpec(rat(11, 20), 1000), 30);
  CHECK(big.horizon == 30);
  CHECK(big.value(999, 1) == rat(11, 20));
  CHECK(build_table<Rational>(GameSpec(rat(1, 2), 4), 2).value(2, 2) == rat(1, 2));
  const auto small = build_table<Rational>(GameSpec(rat(1, 3), 3), 60);
  for (int t = 1; t < 60; ++t) CHECK(small.value(1, t) <= small.value(1, t + 1));
  CHECK(small.value(1, 60) <= rat(1, 7));
  CHECK(rat(1, 7) - small.value(1, 60) < Rational::parse("1e-6"));
}

TEST_CASE("dynamic programme equals exhaustive game-tree maximisation") {
  for (const Rational& p : {rat(1, 3), rat(1, 2), rat(11, 20), rat(3, 5)}) {
    for (int n = 2; n <= 6; ++n) {
      const GameSpec spec(p, n);
      const auto table = build_table<Rational>(spec, 6);
      for (int t = 1; t <= 6; ++t) {
        for (int i = 1; i < n; ++i) {
          CHECK(table.value(i, t) == tree_value(p, n, i, t));
          const auto maxers = tree_maximisers(p, n, i, t);
          CHECK(table.best_stake(i, t) == maxers.back());
          CHECK(best_stake<Rational>(spec, i, t).value == table.value(i, t));
        }
      }
    }
  }
}

TEST_CASE("horizon_win_prob") {
  const GameSpec spec(rat(1, 3), 3);
  CHECK(horizon_win_prob<Rational>(spec, Strategy(3, {1, 1}), 2)[0] == rat(1, 9));
  const auto masses = series_coeffs(duration_pgf_win(spec, Strategy(3, {1, 1}))[0], 2);
  CHECK(masses[0] + masses[1] + masses[2] == rat(1, 9));

  const GameSpec kspec(rat(3, 5), 200);
  const Strategy bk = breiman_kelly(200, rat(1, 10), rat(4, 5));
  const auto h = horizon_win_prob<Rational>(kspec, bk, 60);
  const auto w = win_prob(kspec, bk);
  const auto opt = build_table<Rational>(kspec, 60);
  for (int i = 1; i < 200; ++i) {
    const auto& v = h[static_cast<size_t>(i - 1)];
    CHECK(v >= Rational(0));
    CHECK(v <= w[static_cast<size_t>(i - 1)]);
    CHECK(v <= opt.value(i, 60));
  }
}

TEST_CASE("horizon_win_prob increases to the unbounded value") {
  std::mt19937_64 rng(71);
  for (int k = 0; k < 6; ++k) {
    const GameSpec spec(testing::random_probability(rng, 10), 3 + static_cast<int>(rng() % 8));
    const Strategy s = testing::random_strategy(spec.goal, rng);
    const auto w = win_prob<Decimal>(spec, s);
    std::vector<Decimal> prev(w.size(), Decimal(0));
    for (int t = 10; t <= 200; t += 10) {
      const auto h = horizon_win_prob<Decimal>(spec, s, t);
      for (size_t i = 0; i < h.size(); ++i) CHECK(h[i] >= prev[i]);
      prev = h;
    }
    for (size_t i = 0; i < w.size(); ++i) CHECK(abs(prev[i] - w[i]) < Decimal("1e-6"));
  }
}

TEST_CASE("deadline value is bounded by timid play when p >= 1/2") {
  for (const Rational& p : {rat(1, 2), rat(11, 20), rat(3, 5), rat(9, 10)}) {
    const GameSpec spec(p, 12);
    const auto table = build_table<Rational>(spec, 25);
    for (int t = 0; t <= 25; ++t)
      for (int i = 1; i < 12; ++i) CHECK(table.value(i, t) <= timid_win_prob(spec, i));
  }
}

TEST_CASE("decimal table agrees with exact") {
  const GameSpec spec(rat(11, 20), 40);
  const auto e = build_table<Rational>(spec, 40);
  const auto d = build_table<Decimal>(spec, 40);
  for (int t = 0; t <= 40; ++t)
    for (int i = 0; i <= 40; ++i) {
      CHECK(abs(d.value(i, t) - to_decimal_value(e.value(i, t))) < Decimal("1e-40"));
      if (t > 0 && i > 0 && i < 40) CHECK(d.best_stake(i, t) == e.best_stake(i, t));
    }
}

TEST_CASE("parallel rows and repeated runs are identical") {
  const GameSpec spec(rat(3, 5), 600);
  const auto a = build_table<Decimal>(spec, 20, {.keep_all_rows = true, .threads = 1});
  const auto b = build_table<Decimal>(spec, 20, {.keep_all_rows = true, .threads = 4});
  const auto c = build_table<Decimal>(spec, 20, {.keep_all_rows = true, .threads = 4});
  CHECK(a.values == b.values);
  CHECK(a.stakes == b.stakes);
  CHECK(b.stakes == c.stakes);
}

TEST_CASE("two-row mode keeps only the top rows") {
  const auto t = build_table<Rational>(GameSpec(rat(3, 5), 10), 8, {.keep_all_rows = false});
  CHECK(t.has_row(8));
  CHECK(t.has_row(7));
  CHECK_FALSE(t.has_row(3));
  CHECK_THROWS_AS(t.value(1, 3), std::out_of_range);
}

TEST_CASE("stake options") {
  const auto t = build_table<Rational>(GameSpec(rat(3, 5), 4), 2);
  const auto o = stake_options(t, 2, 1);
  REQUIRE(o.size() == 2);
  CHECK(o[0].stake == 1);
  CHECK(o[0].value == Rational(0));
  CHECK_FALSE(o[0].optimal);
  CHECK(o[1].stake == 2);
  CHECK(o[1].value == rat(3, 5));
  CHECK(o[1].optimal);
  const auto one = stake_options(t, 1, 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0].value == Rational(0));
  for (int i = 1; i < 4; ++i) {
    Rational best(0);
    for (const auto& x : stake_options(t, i, 2)) best = std::max(best, x.value);
    CHECK(best == t.value(i, 2));
  }
}

TEST_CASE("backend selection") {
  CHECK(choose_backend(GameSpec(rat(3, 5), 1000), 100, NumericMode::automatic) == Backend::exact);
  CHECK(choose_backend(GameSpec(rat(3, 5), 1000), 101, NumericMode::automatic) == Backend::decimal);
  CHECK(choose_backend(GameSpec(rat(3, 5), 1000), 500, NumericMode::exact) == Backend::exact);
  CHECK(choose_backend(GameSpec(rat(3, 5), 10), 5, NumericMode::decimal) == Backend::decimal);
  CHECK(parse_numeric_mode("auto") == NumericMode::automatic);
  CHECK_THROWS_AS(parse_numeric_mode("fast"), std::invalid_argument);
}

TEST_CASE("best_strat_story") {
  CHECK(best_strat_story({}, NumericMode::automatic).empty());
  const auto one = best_strat_story({{rat(11, 20), 1000, 30}}, NumericMode::automatic);
  REQUIRE(one.size() == 1);
  const auto table = build_table<Rational>(GameSpec(rat(11, 20), 1000), 30);
  const auto& values = std::get<std::vector<Rational>>(one[0].values);
  for (int i = 1; i < 1000; ++i) {
    CHECK(one[0].stakes[static_cast<size_t>(i - 1)] == table.best_stake(i, 30));
    CHECK(values[static_cast<size_t>(i - 1)] == table.value(i, 30));
  }
  const auto two = best_strat_story({{rat(3, 5), 4, 2}, {Rational(2), 4, 2}}, NumericMode::automatic);
  REQUIRE(two.size() == 2);
  CHECK_FALSE(two[0].error);
  CHECK(two[0].stakes == std::vector<int>{1, 2, 1});
  CHECK(two[1].error);
}
