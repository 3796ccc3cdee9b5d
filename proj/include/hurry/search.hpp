#ifndef HURRY_SEARCH_HPP
#define HURRY_SEARCH_HPP

#include "hurry/horizon_dp.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hurry {

// Parameter grid. From a resolution h: f in {h, 2h, ...} strictly below 1,
// c in {0, h, 2h, ...} up to 1 with 1 always present.
struct SearchGrid {
  std::vector<Rational> fractions;
  std::vector<Rational> thresholds;
  std::optional<Rational> resolution;

  static SearchGrid from_resolution(const Rational& h);
};

struct GridPoint {
  Rational fraction;
  std::optional<Rational> threshold;
  Decimal objective = 0;
  // Unbounded-horizon figures; filled for every point by kelly_contest and
  // by best_bk when the table is requested.
  std::optional<Decimal> win_prob;
  std::optional<Decimal> exp_duration;
  std::optional<Decimal> exp_duration_given_win;
};

struct SearchResult {
  Rational fraction;
  std::optional<Rational> threshold;
  Rational objective;
  std::string objective_kind;  // "deadline_survival" | "duration_given_win" | "win_prob"
  Rational win_prob;           // unbounded horizon
  Rational exp_duration;       // unbounded horizon, either outcome
  std::optional<Rational> exp_duration_given_win;
  std::optional<Rational> grid_resolution;
  size_t evaluations = 0;
  bool constraint_met = true;
  Backend evaluation_backend = Backend::decimal;
  std::vector<GridPoint> table;
};

struct SearchOptions {
  NumericMode mode = NumericMode::automatic;  // automatic evaluates the grid in decimal
  bool include_table = false;
  unsigned threads = 1;
};

// Best Breiman-Kelly pair (f, c) by probability of reaching N within `horizon`
// rounds from `capital`. Ties: smaller unbounded expected duration, then
// smaller f, then larger c. The winner is re-evaluated exactly.
SearchResult best_bk(const GameSpec& spec, int capital, int horizon, const SearchGrid& grid,
                     const SearchOptions& options = {});

// Kelly factor minimising the expected duration given a win, among factors
// whose win probability from `capital` is at least `confidence`. Ties go to
// the smaller f. With no qualifying factor, returns the most likely winner
// with constraint_met = false.
SearchResult kelly_contest(const GameSpec& spec, int capital, const SearchGrid& grid, const Rational& confidence,
                           const SearchOptions& options = {});

}  // namespace hurry

#endif  // HURRY_SEARCH_HPP
