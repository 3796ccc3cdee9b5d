#include "hurry/search.hpp"

#include "hurry/exact_chain.hpp"

#include <map>

namespace hurry {

SearchGrid SearchGrid::from_resolution(const Rational& h) {
  if (h <= Rational(0) || h >= Rational(1))
    throw std::domain_error("resolution must satisfy 0 < h < 1, got " + h.str());
  SearchGrid grid;
  grid.resolution = h;
  for (Rational f = h; f < Rational(1); f += h) grid.fractions.push_back(f);
  for (Rational c(0); c <= Rational(1); c += h) grid.thresholds.push_back(c);
  if (grid.thresholds.back() != Rational(1)) grid.thresholds.push_back(Rational(1));
  return grid;
}

namespace {

struct Candidate {
  Rational fraction;
  std::optional<Rational> threshold;
  size_t strategy;  // index into the de-duplicated strategy list
};

// Identical stake tables (common on coarse thresholds) are evaluated once.
struct CandidateSet {
  std::vector<Candidate> candidates;
  std::vector<Strategy> strategies;
  std::map<std::vector<int>, size_t> index;

  void add(Rational f, std::optional<Rational> c, Strategy s) {
    auto [it, inserted] = index.try_emplace(s.stakes(), strategies.size());
    if (inserted) strategies.push_back(std::move(s));
    candidates.push_back({std::move(f), std::move(c), it->second});
  }
};

template <class S>
int compare_values(const S& a, const S& b) {
  if constexpr (std::is_same_v<S, Rational>) return a < b ? -1 : (b < a ? 1 : 0);
  else return detail::DecimalArithmetic::compare(a, b);
}

template <class S>
Decimal as_decimal(const S& v) {
  if constexpr (std::is_same_v<S, Rational>) return to_decimal_value(v);
  else return v;
}

template <class S>
struct Unbounded {
  S win;
  S duration;
  std::optional<S> duration_given_win;
};

template <class S>
Unbounded<S> unbounded_at(const GameSpec& spec, const Strategy& strategy, int capital) {
  const size_t k = static_cast<size_t>(capital - 1);
  const auto wins = win_prob<S>(spec, strategy);
  const auto durations = expected_duration<S>(spec, strategy);
  const auto given_win = expected_duration_given_win<S>(spec, strategy, wins);
  return {wins[k], durations[k], given_win[k]};
}

void check_grid(const SearchGrid& grid, bool needs_thresholds) {
  if (grid.fractions.empty() || (needs_thresholds && grid.thresholds.empty()))
    throw std::domain_error("empty search grid");
}

void fill_exact(SearchResult& result, const GameSpec& spec, const Strategy& strategy, int capital) {
  const auto exact = unbounded_at<Rational>(spec, strategy, capital);
  result.win_prob = exact.win;
  result.exp_duration = exact.duration;
  result.exp_duration_given_win = exact.duration_given_win;
}

template <class S>
SearchResult run_best_bk(const GameSpec& spec, int capital, int horizon, const SearchGrid& grid,
                         const SearchOptions& options) {
  CandidateSet set;
  for (const auto& f : grid.fractions)
    for (const auto& c : grid.thresholds) set.add(f, c, breiman_kelly(spec.goal, f, c));

  const size_t k = static_cast<size_t>(capital - 1);
  std::vector<S> objective(set.strategies.size());
  detail::parallel_for(0, static_cast<int>(set.strategies.size()), options.threads, [&](int s) {
    objective[static_cast<size_t>(s)] = horizon_win_prob<S>(spec, set.strategies[static_cast<size_t>(s)], horizon)[k];
  });

  // Ordered reduction: the tie-break does not depend on evaluation order.
  size_t best = 0;
  for (size_t j = 1; j < set.strategies.size(); ++j)
    if (compare_values(objective[j], objective[best]) > 0) best = j;
  std::vector<size_t> tied;
  for (size_t j = 0; j < set.candidates.size(); ++j)
    if (compare_values(objective[set.candidates[j].strategy], objective[best]) == 0) tied.push_back(j);

  std::map<size_t, S> durations;
  if (tied.size() > 1)
    for (size_t j : tied) {
      const size_t s = set.candidates[j].strategy;
      if (!durations.count(s)) durations.emplace(s, expected_duration<S>(spec, set.strategies[s])[k]);
    }
  auto preferred = [&](const Candidate& a, const Candidate& b) {
    if (!durations.empty()) {
      const int d = compare_values(durations.at(a.strategy), durations.at(b.strategy));
      if (d != 0) return d < 0;
    }
    if (a.fraction != b.fraction) return a.fraction < b.fraction;
    return *a.threshold > *b.threshold;
  };
  size_t winner = tied.front();
  for (size_t j : tied)
    if (preferred(set.candidates[j], set.candidates[winner])) winner = j;

  const Candidate& win = set.candidates[winner];
  const Strategy& strategy = set.strategies[win.strategy];
  SearchResult result;
  result.fraction = win.fraction;
  result.threshold = win.threshold;
  result.objective_kind = "deadline_survival";
  result.objective = horizon_win_prob<Rational>(spec, strategy, horizon)[k];
  fill_exact(result, spec, strategy, capital);
  result.grid_resolution = grid.resolution;
  result.evaluations = set.candidates.size();
  result.evaluation_backend = std::is_same_v<S, Rational> ? Backend::exact : Backend::decimal;

  if (options.include_table) {
    std::vector<std::optional<Unbounded<S>>> extra(set.strategies.size());
    detail::parallel_for(0, static_cast<int>(set.strategies.size()), options.threads, [&](int s) {
      extra[static_cast<size_t>(s)] = unbounded_at<S>(spec, set.strategies[static_cast<size_t>(s)], capital);
    });
    for (const auto& c : set.candidates) {
      const auto& u = *extra[c.strategy];
      GridPoint point{c.fraction, c.threshold, as_decimal(objective[c.strategy]), as_decimal(u.win),
                      as_decimal(u.duration), std::nullopt};
      if (u.duration_given_win) point.exp_duration_given_win = as_decimal(*u.duration_given_win);
      result.table.push_back(std::move(point));
    }
  }
  return result;
}

template <class S>
SearchResult run_kelly_contest(const GameSpec& spec, int capital, const SearchGrid& grid, const Rational& confidence,
                               const SearchOptions& options, bool* near_boundary = nullptr) {
  CandidateSet set;
  for (const auto& f : grid.fractions) set.add(f, std::nullopt, kelly(spec.goal, f));

  std::vector<Unbounded<S>> eval(set.strategies.size());
  detail::parallel_for(0, static_cast<int>(set.strategies.size()), options.threads, [&](int s) {
    eval[static_cast<size_t>(s)] = unbounded_at<S>(spec, set.strategies[static_cast<size_t>(s)], capital);
  });

  const S conf = FieldTraits<S>::from_rational(confidence);
  if (near_boundary) {
    *near_boundary = false;
    for (const auto& e : eval) *near_boundary = *near_boundary || compare_values(e.win, conf) == 0;
  }
  std::optional<size_t> winner;
  for (size_t j = 0; j < set.candidates.size(); ++j) {
    const auto& e = eval[set.candidates[j].strategy];
    if (e.win < conf || !e.duration_given_win) continue;
    // Strictly shorter only: ties keep the smaller f seen first.
    if (!winner || compare_values(*e.duration_given_win,
                                  *eval[set.candidates[*winner].strategy].duration_given_win) < 0)
      winner = j;
  }
  const bool met = winner.has_value();
  if (!met) {
    winner = 0;
    for (size_t j = 1; j < set.candidates.size(); ++j)
      if (compare_values(eval[set.candidates[j].strategy].win, eval[set.candidates[*winner].strategy].win) > 0)
        winner = j;
  }

  const Candidate& win = set.candidates[*winner];
  const Strategy& strategy = set.strategies[win.strategy];
  SearchResult result;
  result.fraction = win.fraction;
  fill_exact(result, spec, strategy, capital);
  result.constraint_met = met;
  if (met) {
    result.objective_kind = "duration_given_win";
    result.objective = *result.exp_duration_given_win;
  } else {
    result.objective_kind = "win_prob";
    result.objective = result.win_prob;
  }
  result.grid_resolution = grid.resolution;
  result.evaluations = set.candidates.size();
  result.evaluation_backend = std::is_same_v<S, Rational> ? Backend::exact : Backend::decimal;
  if (options.include_table)
    for (const auto& c : set.candidates) {
      const auto& u = eval[c.strategy];
      GridPoint point{c.fraction, std::nullopt, 0, as_decimal(u.win), as_decimal(u.duration), std::nullopt};
      if (u.duration_given_win) point.exp_duration_given_win = as_decimal(*u.duration_given_win);
      point.objective = met ? point.exp_duration_given_win.value_or(Decimal(0)) : *point.win_prob;
      result.table.push_back(std::move(point));
    }
  return result;
}

void check_common(const GameSpec& spec, int capital) {
  if (capital < 1 || capital >= spec.goal)
    throw std::domain_error("capital must lie in [1, " + std::to_string(spec.goal - 1) + "]");
}

}  // namespace

SearchResult best_bk(const GameSpec& spec, int capital, int horizon, const SearchGrid& grid,
                     const SearchOptions& options) {
  check_common(spec, capital);
  if (horizon < 1) throw std::domain_error("horizon must be >= 1");
  check_grid(grid, true);
  if (options.mode == NumericMode::exact) return run_best_bk<Rational>(spec, capital, horizon, grid, options);
  return run_best_bk<Decimal>(spec, capital, horizon, grid, options);
}

SearchResult kelly_contest(const GameSpec& spec, int capital, const SearchGrid& grid, const Rational& confidence,
                           const SearchOptions& options) {
  check_common(spec, capital);
  check_grid(grid, false);
  if (confidence <= Rational(0) || confidence >= Rational(1))
    throw std::domain_error("confidence must satisfy 0 < conf < 1, got " + confidence.str());
  if (options.mode == NumericMode::exact) return run_kelly_contest<Rational>(spec, capital, grid, confidence, options);
  bool near_boundary = false;
  SearchResult result = run_kelly_contest<Decimal>(spec, capital, grid, confidence, options, &near_boundary);
  // Decimal verdicts within tie tolerance of the confidence level are settled exactly.
  if (near_boundary || result.constraint_met != (result.win_prob >= confidence))
    return run_kelly_contest<Rational>(spec, capital, grid, confidence, options);
  return result;
}

}  // namespace hurry
