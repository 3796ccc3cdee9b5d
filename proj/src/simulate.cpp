#include "hurry/simulate.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

namespace hurry {

SimulationSpec::SimulationSpec(Rational win_probability, int exit_capital, bool allow_degenerate)
    : p(std::move(win_probability)), goal(exit_capital) {
  if (goal < 2) throw std::domain_error("exit capital must be >= 2");
  const bool interior = p > Rational(0) && p < Rational(1);
  const bool degenerate = p == Rational(0) || p == Rational(1);
  if (!interior && !(degenerate && allow_degenerate))
    throw std::domain_error(degenerate ? "p = " + p.str() + " requires the degenerate-mode flag"
                                       : "round-win probability must lie in [0, 1], got " + p.str());
}

OptimalPolicy OptimalPolicy::from_table(const AnyHorizonTable& any) {
  return std::visit(
      [](const auto& table) {
        if (!table.has_row(1)) throw std::domain_error("optimal policy needs the full horizon table");
        auto stakes = std::make_shared<std::vector<std::vector<int>>>();
        for (int t = 0; t <= table.horizon; ++t)
          stakes->push_back(table.has_row(t) ? table.stakes[static_cast<size_t>(t - table.first_row)]
                                             : std::vector<int>{});
        return OptimalPolicy{std::move(stakes), table.horizon};
      },
      any);
}

int OptimalPolicy::stake(int capital, int remaining) const {
  if (remaining < 1 || remaining > horizon) throw std::domain_error("remaining rounds outside the policy table");
  return stakes->at(static_cast<size_t>(remaining)).at(static_cast<size_t>(capital));
}

std::string to_string(Exit exit) {
  switch (exit) {
    case Exit::winner: return "winner";
    case Exit::loser: return "loser";
    default: return "deadline-expired";
  }
}

namespace {

std::uint64_t win_threshold(const Rational& p) {
  // p is taken at 30 significant digits; then u < p with u = k / 2^53  <=>  k < ceil(p * 2^53)
  const Rational p30 = Rational::parse(to_decimal(p, 30));
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 2, 53);
  const Integer t = ceil(p30 * Rational(scale));
  return static_cast<std::uint64_t>(t.get_ui());
}

}  // namespace

Trajectory simulate_game(const SimulationSpec& spec, const Policy& policy, int start, std::optional<int> horizon,
                         std::uint64_t seed) {
  if (start < 1 || start >= spec.goal)
    throw std::domain_error("start capital must lie in [1, " + std::to_string(spec.goal - 1) + "]");
  if (horizon && *horizon < 0) throw std::domain_error("horizon must be >= 0");
  if (const auto* s = std::get_if<Strategy>(&policy); s && s->goal() != spec.goal)
    throw std::domain_error("strategy exit capital does not match the game");
  if (const auto* o = std::get_if<OptimalPolicy>(&policy)) {
    if (!horizon) throw std::domain_error("optimal play needs a finite horizon");
    if (*horizon > o->horizon) throw std::domain_error("horizon exceeds the optimal policy table");
    if (o->stakes->at(static_cast<size_t>(std::min(1, o->horizon))).size() != static_cast<size_t>(spec.goal + 1))
      throw std::domain_error("optimal policy table does not match the game");
  }

  const std::uint64_t threshold = win_threshold(spec.p);
  std::mt19937_64 rng(seed);
  Trajectory traj;
  traj.seed = seed;
  int capital = start;
  while (capital > 0 && capital < spec.goal) {
    const int played = traj.duration();
    if (horizon && played >= *horizon) break;
    const int stake = std::visit(
        [&](const auto& p) {
          if constexpr (std::is_same_v<std::decay_t<decltype(p)>, Strategy>) return p.stake(capital);
          else return p.stake(capital, *horizon - played);
        },
        policy);
    const bool won = (rng() >> 11) < threshold;
    traj.rounds.push_back({capital, stake, won});
    capital += won ? stake : -stake;
  }
  traj.final_capital = capital;
  traj.exit = capital == spec.goal ? Exit::winner : (capital == 0 ? Exit::loser : Exit::deadline_expired);
  return traj;
}

MonteCarloSummary monte_carlo(const SimulationSpec& spec, const Policy& policy, int start, std::optional<int> horizon,
                              std::uint64_t games, std::uint64_t seed, unsigned threads) {
  if (games < 1) throw std::domain_error("games must be >= 1");
  std::vector<Exit> exits(games);
  std::vector<std::uint32_t> durations(games);
  auto run = [&](std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t g = lo; g < hi; ++g) {
      const Trajectory t = simulate_game(spec, policy, start, horizon, seed + g);
      exits[g] = t.exit;
      durations[g] = static_cast<std::uint32_t>(t.duration());
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  if (threads == 1 || games < 2) {
    run(0, games);
  } else {
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (games + threads - 1) / threads;
    for (std::uint64_t lo = 0; lo < games; lo += chunk) pool.emplace_back(run, lo, std::min(games, lo + chunk));
    for (auto& th : pool) th.join();
  }

  MonteCarloSummary s;
  s.games = games;
  s.seed = seed;
  std::uint64_t sum = 0, sum_sq = 0;
  for (std::uint64_t g = 0; g < games; ++g) {
    s.wins += exits[g] == Exit::winner;
    s.losses += exits[g] == Exit::loser;
    s.expired += exits[g] == Exit::deadline_expired;
    sum += durations[g];
    sum_sq += static_cast<std::uint64_t>(durations[g]) * durations[g];
  }
  const double n = static_cast<double>(games);
  s.win_rate = static_cast<double>(s.wins) / n;
  s.win_rate_stderr = std::sqrt(s.win_rate * (1 - s.win_rate) / n);
  s.mean_duration = static_cast<double>(sum) / n;
  if (games > 1) {
    const double var = (static_cast<double>(sum_sq) - n * s.mean_duration * s.mean_duration) / (n - 1);
    s.duration_stderr = std::sqrt(std::max(0.0, var) / n);
  }
  return s;
}

}  // namespace hurry
