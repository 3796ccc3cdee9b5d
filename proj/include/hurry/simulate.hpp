#ifndef HURRY_SIMULATE_HPP
#define HURRY_SIMULATE_HPP

#include "hurry/game_model.hpp"
#include "hurry/horizon_dp.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace hurry {

// Simulation setup. Unlike GameSpec this admits p = 0 or p = 1, but only with
// allow_degenerate set.
struct SimulationSpec {
  Rational p;
  int goal = 0;

  SimulationSpec(Rational win_probability, int exit_capital, bool allow_degenerate = false);
  explicit SimulationSpec(const GameSpec& spec) : p(spec.p), goal(spec.goal) {}
};

// Deadline-optimal play: stakes read from a horizon table with the remaining
// rounds as the time index.
struct OptimalPolicy {
  std::shared_ptr<const std::vector<std::vector<int>>> stakes;  // [remaining][capital]
  int horizon = 0;

  static OptimalPolicy from_table(const AnyHorizonTable& table);
  int stake(int capital, int remaining) const;
};

using Policy = std::variant<Strategy, OptimalPolicy>;

enum class Exit { winner, loser, deadline_expired };
std::string to_string(Exit exit);

struct Round {
  int capital = 0;  // before the round
  int stake = 0;
  bool won = false;
};

struct Trajectory {
  std::uint64_t seed = 0;
  std::vector<Round> rounds;
  Exit exit = Exit::loser;
  int final_capital = 0;
  int duration() const { return static_cast<int>(rounds.size()); }
};

// Generator and draw convention, recorded in every output for replay:
// std::mt19937_64 seeded with the game seed; each round draws u = (x >> 11) * 2^-53
// and wins iff u < p, compared exactly.
inline constexpr const char* rng_name = "mt19937_64";

// horizon empty = play until absorption (fixed strategies only).
Trajectory simulate_game(const SimulationSpec& spec, const Policy& policy, int start, std::optional<int> horizon,
                         std::uint64_t seed);

struct MonteCarloSummary {
  std::uint64_t games = 0;
  std::uint64_t wins = 0;
  std::uint64_t losses = 0;
  std::uint64_t expired = 0;
  double win_rate = 0;
  double win_rate_stderr = 0;
  double mean_duration = 0;
  double duration_stderr = 0;
  std::uint64_t seed = 0;
};

// Game g runs with seed + g, so results do not depend on the thread count.
MonteCarloSummary monte_carlo(const SimulationSpec& spec, const Policy& policy, int start, std::optional<int> horizon,
                              std::uint64_t games, std::uint64_t seed, unsigned threads = 1);

}  // namespace hurry

#endif  // HURRY_SIMULATE_HPP
