#include "hurry/game_model.hpp"

#include <algorithm>
#include <stdexcept>

namespace hurry {

GameSpec::GameSpec(Rational win_probability, int exit_capital) : p(std::move(win_probability)), goal(exit_capital) {
  if (p <= Rational(0) || p >= Rational(1))
    throw std::domain_error("round-win probability must satisfy 0 < p < 1, got " + p.str());
  if (goal < 2) throw std::domain_error("exit capital must be >= 2, got " + std::to_string(goal));
}

std::vector<StakeViolation> validate_strategy(int goal, const std::vector<int>& stakes) {
  std::vector<StakeViolation> out;
  if (goal < 2 || stakes.size() != static_cast<size_t>(goal - 1)) {
    out.push_back({0, 0, goal - 1,
                   "length " + std::to_string(stakes.size()) + " != " + std::to_string(goal - 1)});
    return out;
  }
  for (int i = 1; i < goal; ++i) {
    const int s = stakes[static_cast<size_t>(i - 1)];
    const int bound = std::min(i, goal - i);
    if (s < 1 || s > bound)
      out.push_back({i, s, bound,
                     "stake " + std::to_string(s) + " at capital " + std::to_string(i) + " outside [1, " +
                         std::to_string(bound) + "]"});
  }
  return out;
}

std::vector<StakeViolation> validate_strategy(const GameSpec& spec, const std::vector<int>& stakes) {
  return validate_strategy(spec.goal, stakes);
}

Strategy::Strategy(int goal, std::vector<int> stakes) : goal_(goal), stakes_(std::move(stakes)) {
  const auto violations = validate_strategy(goal_, stakes_);
  if (violations.empty()) return;
  std::string msg = "inadmissible strategy:";
  for (const auto& v : violations) msg += " " + v.message + ";";
  msg.pop_back();
  throw std::domain_error(msg);
}

Strategy timid(int goal) {
  if (goal < 2) throw std::domain_error("exit capital must be >= 2");
  return Strategy(goal, std::vector<int>(static_cast<size_t>(goal - 1), 1));
}

Strategy bold(int goal) {
  if (goal < 2) throw std::domain_error("exit capital must be >= 2");
  std::vector<int> s(static_cast<size_t>(goal - 1));
  for (int i = 1; i < goal; ++i) s[static_cast<size_t>(i - 1)] = std::min(i, goal - i);
  return Strategy(goal, std::move(s));
}

namespace {

int kelly_stake(int goal, int capital, const Rational& fraction) {
  const Integer base = floor(Rational(capital) * fraction) + 1;
  const int cap = std::min(capital, goal - capital);
  return base > cap ? cap : static_cast<int>(base.get_si());
}

void check_fraction(const Rational& fraction) {
  if (fraction <= Rational(0) || fraction > Rational(1))
    throw std::domain_error("Kelly fraction must satisfy 0 < f <= 1, got " + fraction.str());
}

}  // namespace

Strategy kelly(int goal, const Rational& fraction) {
  if (goal < 2) throw std::domain_error("exit capital must be >= 2");
  check_fraction(fraction);
  std::vector<int> s(static_cast<size_t>(goal - 1));
  for (int i = 1; i < goal; ++i) s[static_cast<size_t>(i - 1)] = kelly_stake(goal, i, fraction);
  return Strategy(goal, std::move(s));
}

Strategy breiman_kelly(int goal, const Rational& fraction, const Rational& bold_threshold) {
  if (goal < 2) throw std::domain_error("exit capital must be >= 2");
  check_fraction(fraction);
  if (bold_threshold < Rational(0) || bold_threshold > Rational(1))
    throw std::domain_error("bold threshold must satisfy 0 <= c <= 1, got " + bold_threshold.str());
  const Rational cutoff = bold_threshold * Rational(goal);
  std::vector<int> s(static_cast<size_t>(goal - 1));
  for (int i = 1; i < goal; ++i)
    s[static_cast<size_t>(i - 1)] = Rational(i) <= cutoff ? kelly_stake(goal, i, fraction) : std::min(i, goal - i);
  return Strategy(goal, std::move(s));
}

namespace {

void check_capital(const GameSpec& spec, int capital) {
  if (capital < 0 || capital > spec.goal)
    throw std::domain_error("capital " + std::to_string(capital) + " outside [0, " + std::to_string(spec.goal) + "]");
}

}  // namespace

Rational timid_win_prob(const GameSpec& spec, int capital) {
  check_capital(spec, capital);
  if (spec.p == rat(1, 2)) return Rational(capital, spec.goal);
  const Rational ratio = spec.q() / spec.p;
  return (Rational(1) - pow(ratio, static_cast<unsigned long>(capital))) /
         (Rational(1) - pow(ratio, static_cast<unsigned long>(spec.goal)));
}

Rational timid_expected_time(const GameSpec& spec, int capital) {
  check_capital(spec, capital);
  if (spec.p == rat(1, 2)) return Rational(static_cast<long>(capital) * (spec.goal - capital));
  const Rational drift = spec.q() - spec.p;
  return Rational(capital) / drift - Rational(spec.goal) / drift * timid_win_prob(spec, capital);
}

}  // namespace hurry
