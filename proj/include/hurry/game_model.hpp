#ifndef HURRY_GAME_MODEL_HPP
#define HURRY_GAME_MODEL_HPP

#include "hurry/rational.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace hurry {

// The casino: round-win probability p and exit capital N. q = 1 - p is derived.
struct GameSpec {
  Rational p;
  int goal = 0;

  GameSpec() = default;
  // Requires 0 < p < 1 and N >= 2.
  GameSpec(Rational win_probability, int exit_capital);

  Rational q() const { return Rational(1) - p; }
  int max_stake(int capital) const { return std::min(capital, goal - capital); }

  friend bool operator==(const GameSpec&, const GameSpec&) = default;
};

struct StakeViolation {
  int capital = 0;  // 0 when the violation is about the table length
  int stake = 0;
  int bound = 0;
  std::string message;
};

std::vector<StakeViolation> validate_strategy(const GameSpec& spec, const std::vector<int>& stakes);
std::vector<StakeViolation> validate_strategy(int goal, const std::vector<int>& stakes);

// Stake table s(1..N-1). Immutable; always admissible for its exit capital.
class Strategy {
 public:
  // Throws std::domain_error listing every violation.
  Strategy(int goal, std::vector<int> stakes);

  int goal() const { return goal_; }
  int stake(int capital) const { return stakes_.at(static_cast<size_t>(capital - 1)); }
  const std::vector<int>& stakes() const { return stakes_; }

  friend bool operator==(const Strategy&, const Strategy&) = default;

 private:
  int goal_;
  std::vector<int> stakes_;
};

Strategy timid(int goal);
Strategy bold(int goal);
// s(i) = min(floor(i*f) + 1, N - i), clamped to min(i, N - i). Accepts 0 < f <= 1.
Strategy kelly(int goal, const Rational& fraction);
// Kelly at capitals i <= c*N, bold above (exact rational comparison).
Strategy breiman_kelly(int goal, const Rational& fraction, const Rational& bold_threshold);

// Classical gambler's-ruin closed forms for the timid strategy; 0 <= x <= N.
Rational timid_win_prob(const GameSpec& spec, int capital);
Rational timid_expected_time(const GameSpec& spec, int capital);

}  // namespace hurry

#endif  // HURRY_GAME_MODEL_HPP
