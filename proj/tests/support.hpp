#ifndef HURRY_TESTS_SUPPORT_HPP
#define HURRY_TESTS_SUPPORT_HPP

#include "hurry/game_model.hpp"
#include "hurry/rational_function.hpp"

#include <random>
#include <vector>

namespace hurry::testing {

inline Polynomial poly(std::initializer_list<long> coeffs) {
  std::vector<Rational> c;
  for (long v : coeffs) c.emplace_back(v);
  return Polynomial(std::move(c));
}

inline Strategy random_strategy(int goal, std::mt19937_64& rng) {
  std::vector<int> stakes;
  for (int i = 1; i < goal; ++i) {
    std::uniform_int_distribution<int> pick(1, std::min(i, goal - i));
    stakes.push_back(pick(rng));
  }
  return Strategy(goal, std::move(stakes));
}

inline Rational random_probability(std::mt19937_64& rng, long max_den = 20) {
  std::uniform_int_distribution<long> den(2, max_den);
  const long d = den(rng);
  std::uniform_int_distribution<long> num(1, d - 1);
  return rat(num(rng), d);
}

}  // namespace hurry::testing

#endif  // HURRY_TESTS_SUPPORT_HPP
