#include <doctest.h>

#include "hurry/exact_chain.hpp"
#include "support.hpp"

using namespace hurry;
using hurry::testing::poly;

namespace {

// Forward propagation of the capital distribution; element j of the result is
// the probability of exiting at N on exactly round j (j = 0..rounds).
std::vector<Rational> win_time_masses(const GameSpec& spec, const Strategy& s, int start, int rounds) {
  std::vector<Rational> mass(static_cast<size_t>(spec.goal + 1), Rational(0)), next(mass.size());
  mass[static_cast<size_t>(start)] = Rational(1);
  std::vector<Rational> out{Rational(0)};
  for (int j = 1; j <= rounds; ++j) {
    std::fill(next.begin(), next.end(), Rational(0));
    for (int i = 1; i < spec.goal; ++i) {
      const Rational& m = mass[static_cast<size_t>(i)];
      if (m.is_zero()) continue;
      const int x = s.stake(i);
      next[static_cast<size_t>(i + x)] += m * spec.p;
      next[static_cast<size_t>(i - x)] += m * spec.q();
    }
    out.push_back(next[static_cast<size_t>(spec.goal)]);
    next[static_cast<size_t>(spec.goal)] = Rational(0);
    next[0] = Rational(0);
    std::swap(mass, next);
  }
  return out;
}

}  // namespace

TEST_CASE("the N=3 lists") {
  const GameSpec spec(rat(1, 3), 3);
  const Strategy s(3, {1, 1});
  CHECK(win_prob(spec, s) == std::vector<Rational>{rat(1, 7), rat(3, 7)});
  CHECK(expected_duration(spec, s) == std::vector<Rational>{rat(12, 7), rat(15, 7)});
  const auto edw = expected_duration_given_win(spec, s);
  REQUIRE(edw[0]);
  REQUIRE(edw[1]);
  CHECK(*edw[0] == rat(18, 7));
  CHECK(*edw[1] == rat(11, 7));
}

TEST_CASE("small exact values") {
  CHECK(win_prob(GameSpec(rat(1, 2), 4), timid(4)) == std::vector<Rational>{rat(1, 4), rat(1, 2), rat(3, 4)});
  const auto edw = expected_duration_given_win(GameSpec(rat(1, 2), 2), Strategy(2, {1}));
  CHECK(*edw[0] == Rational(1));
  const GameSpec kelly_spec(rat(3, 5), 200);
  CHECK(expected_duration(kelly_spec, bold(200))[99] == Rational(1));
  CHECK(win_prob(kelly_spec, bold(200))[99] == rat(3, 5));
}

TEST_CASE("Kelly(1/10) at N=200") {
  const GameSpec spec(rat(3, 5), 200);
  const auto r = analyze_chain(spec, kelly(200, rat(1, 10)));
  CHECK(to_decimal(r.win_prob[99], 10) == "0.9998784517");
  CHECK(to_decimal(r.exp_duration[99], 10) == "44.96134439");
  CHECK(to_decimal(*r.exp_duration_given_win[99], 10) == "44.94509484");
}

TEST_CASE("win-conditioned duration against path sums") {
  const GameSpec spec(rat(2, 5), 4);
  const Strategy s = timid(4);
  const auto edw = expected_duration_given_win<Decimal>(spec, s);
  for (int start = 1; start < 4; ++start) {
    const auto masses = win_time_masses(spec, s, start, 120);
    Rational total(0), weighted(0);
    for (size_t j = 0; j < masses.size(); ++j) {
      total += masses[j];
      weighted += masses[j] * Rational(static_cast<long>(j));
    }
    const Decimal oracle = to_decimal_value(weighted / total);
    CHECK(abs(*edw[static_cast<size_t>(start - 1)] - oracle) < Decimal("1e-12"));
  }
}

TEST_CASE("duration generating functions, N=3") {
  const GameSpec spec(rat(1, 3), 3);
  const Strategy s(3, {1, 1});
  const Polynomial den = poly({9, 0, -2});
  const auto f = duration_pgf(spec, s);
  CHECK(f[0] == RationalFunction(poly({0, 6, 1}), den));
  CHECK(f[1] == RationalFunction(poly({0, 3, 4}), den));
  const auto w = duration_pgf_win(spec, s);
  CHECK(w[0] == RationalFunction(poly({0, 0, 1}), den));
  CHECK(w[1] == RationalFunction(poly({0, 3}), den));
  CHECK(w[0](Rational(1)) == rat(1, 7));
  CHECK(w[1](Rational(1)) == rat(3, 7));
  CHECK(series_coeffs(f[0], 4) == std::vector<Rational>{0, rat(2, 3), rat(1, 9), rat(4, 27), rat(2, 81)});
  CHECK(series_coeffs(w[0], 4) == std::vector<Rational>{0, 0, rat(1, 9), 0, rat(2, 81)});
  const auto wn = duration_pgf_win_normalized(spec, s);
  REQUIRE(wn[0]);
  CHECK(wn[0]->derivative()(Rational(1)) == rat(18, 7));
  CHECK(duration_pgf(GameSpec(rat(1, 2), 2), Strategy(2, {1}))[0] == RationalFunction(poly({0, 1}), poly({1})));
}

TEST_CASE("closed forms equal the solver for timid play") {
  std::mt19937_64 rng(101);
  for (int k = 0; k < 20; ++k) {
    const GameSpec spec(testing::random_probability(rng, 30), 2 + static_cast<int>(rng() % 29));
    const auto w = win_prob(spec, timid(spec.goal));
    const auto d = expected_duration(spec, timid(spec.goal));
    for (int i = 1; i < spec.goal; ++i) {
      CHECK(w[static_cast<size_t>(i - 1)] == timid_win_prob(spec, i));
      CHECK(d[static_cast<size_t>(i - 1)] == timid_expected_time(spec, i));
    }
  }
}

TEST_CASE("generating-function calculus on random strategies") {
  std::mt19937_64 rng(202);
  for (int k = 0; k < 25; ++k) {
    const GameSpec spec(testing::random_probability(rng, 12), 2 + static_cast<int>(rng() % 11));
    const Strategy s = testing::random_strategy(spec.goal, rng);
    const auto w = win_prob(spec, s);
    const auto d = expected_duration(spec, s);
    const auto f = duration_pgf(spec, s);
    const auto fw = duration_pgf_win(spec, s);
    for (size_t i = 0; i < w.size(); ++i) {
      CHECK(f[i](Rational(1)) == Rational(1));
      CHECK(f[i].derivative()(Rational(1)) == d[i]);
      CHECK(fw[i](Rational(1)) == w[i]);
    }
  }
}

TEST_CASE("series of chain generating functions are probability masses") {
  std::mt19937_64 rng(303);
  for (int k = 0; k < 15; ++k) {
    const GameSpec spec(testing::random_probability(rng, 10), 2 + static_cast<int>(rng() % 9));
    const Strategy s = testing::random_strategy(spec.goal, rng);
    const auto f = duration_pgf(spec, s);
    const auto fw = duration_pgf_win(spec, s);
    for (size_t i = 0; i < f.size(); ++i) {
      Rational partial(0);
      for (const auto& c : series_coeffs(f[i], 12)) {
        CHECK(c >= Rational(0));
        partial += c;
        CHECK(partial <= Rational(1));
      }
      // Coefficients of the win-path function are the forward win masses.
      CHECK(series_coeffs(fw[i], 12) == win_time_masses(spec, s, static_cast<int>(i) + 1, 12));
    }
  }
}

TEST_CASE("fair game: every strategy wins with probability i/N") {
  std::mt19937_64 rng(404);
  for (int k = 0; k < 100; ++k) {
    const int n = 2 + static_cast<int>(rng() % 15);
    const auto w = win_prob(GameSpec(rat(1, 2), n), testing::random_strategy(n, rng));
    for (size_t i = 0; i < w.size(); ++i) CHECK(w[i] == rat(static_cast<long>(i) + 1, n));
  }
}

TEST_CASE("win probability and capital for p > 1/2") {
  std::mt19937_64 rng(405);
  for (int k = 0; k < 50; ++k) {
    const GameSpec spec(rat(1, 2) + testing::random_probability(rng, 12) / Rational(2), 2 + static_cast<int>(rng() % 11));
    for (const Strategy& s : {timid(spec.goal), bold(spec.goal)}) {
      const auto w = win_prob(spec, s);
      for (size_t i = 1; i < w.size(); ++i) CHECK(w[i - 1] <= w[i]);
    }
  }
  // Not monotone for every admissible table: more capital can mean a worse stake.
  const auto w = win_prob(GameSpec(rat(3, 5), 8), Strategy(8, {1, 1, 2, 4, 2, 1, 1}));
  CHECK(w[2] == rat(513, 845));
  CHECK(w[3] == rat(3, 5));
  CHECK(w[2] > w[3]);
}

TEST_CASE("decimal backend agrees with exact") {
  const GameSpec spec(rat(3, 5), 60);
  const Strategy s = breiman_kelly(60, rat(1, 5), rat(1, 2));
  const auto we = win_prob<Rational>(spec, s);
  const auto wd = win_prob<Decimal>(spec, s);
  const auto de = expected_duration<Rational>(spec, s);
  const auto dd = expected_duration<Decimal>(spec, s);
  for (size_t i = 0; i < we.size(); ++i) {
    CHECK(abs(wd[i] - to_decimal_value(we[i])) < Decimal("1e-40"));
    CHECK(abs(dd[i] - to_decimal_value(de[i])) < Decimal("1e-38"));
  }
  CHECK(chain_residual(spec, s, wd, dd) < Decimal("1e-40"));
}

TEST_CASE("mismatched strategy is rejected") {
  CHECK_THROWS_AS(win_prob(GameSpec(rat(1, 2), 5), timid(4)), std::domain_error);
}
