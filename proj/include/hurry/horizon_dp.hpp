#ifndef HURRY_HORIZON_DP_HPP
#define HURRY_HORIZON_DP_HPP

#include "hurry/field.hpp"
#include "hurry/game_model.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <variant>
#include <vector>

namespace hurry {

enum class NumericMode { automatic, exact, decimal };
enum class Backend { exact, decimal };

// Exact rationals up to this many state-horizon units (N * T); decimal above.
inline constexpr long exact_work_limit = 100000;
// Relative tolerance under which two decimal-mode stake values count as tied.
inline const Decimal decimal_tie_tolerance{"1e-25"};

NumericMode parse_numeric_mode(const std::string& text);
std::string to_string(NumericMode mode);
std::string to_string(Backend backend);
Backend choose_backend(const GameSpec& spec, long horizon, NumericMode mode);

// f(i, t): best probability of reaching N within t rounds from capital i,
// together with the largest stake attaining it.
template <class S>
struct HorizonTable {
  GameSpec spec;
  int horizon = 0;
  int first_row = 0;                    // rows first_row..horizon are retained
  std::vector<std::vector<S>> values;   // [t - first_row][i], i = 0..N
  std::vector<std::vector<int>> stakes; // [t - first_row][i]; 0 where undefined (t = 0, i in {0, N})

  bool has_row(int t) const { return t >= first_row && t <= horizon; }
  const S& value(int capital, int t) const { return row(values, t).at(static_cast<size_t>(capital)); }
  int best_stake(int capital, int t) const {
    if (t < 1 || capital < 1 || capital >= spec.goal) throw std::domain_error("no stake defined at this state");
    return row(stakes, t).at(static_cast<size_t>(capital));
  }

 private:
  template <class Row>
  const Row& row(const std::vector<Row>& rows, int t) const {
    if (!has_row(t)) throw std::out_of_range("horizon row " + std::to_string(t) + " not retained");
    return rows[static_cast<size_t>(t - first_row)];
  }
};

template <class S>
struct StakeDecision {
  int stake = 0;
  S value{};
};

template <class S>
struct StakeOption {
  int stake = 0;
  S value{};
  bool optimal = false;
};

struct DpOptions {
  bool keep_all_rows = true;
  unsigned threads = 1;  // 0 = hardware concurrency
};

namespace detail {

template <class Fn>
void parallel_for(int begin, int end, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const int n = end - begin;
  if (threads <= 1 || n < 256) {
    for (int i = begin; i < end; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  const int chunk = (n + static_cast<int>(threads) - 1) / static_cast<int>(threads);
  for (int lo = begin; lo < end; lo += chunk) {
    const int hi = std::min(end, lo + chunk);
    pool.emplace_back([lo, hi, &fn] {
      for (int i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

// Exact rows are carried as integers V(i, t) = f(i, t) * b^t where p = a/b, so
// one step is V(i, t) = (b - a) V(i - x, t - 1) + a V(i + x, t - 1).
struct ExactArithmetic {
  using Value = Integer;
  Integer down, up, base;
  Integer goal_value = 1;  // b^t at the current row

  // q = (b - a)/b shares the denominator of p.
  explicit ExactArithmetic(const GameSpec& spec)
      : down(spec.q().numerator()), up(spec.p.numerator()), base(spec.p.denominator()) {}
  Value zero() const { return 0; }
  void advance() { goal_value *= base; }
  Value combine(const Value& lo, const Value& hi) const { return down * lo + up * hi; }
  // +1 strictly better, 0 tie, -1 worse.
  static int compare(const Value& a, const Value& b) { return cmp(a, b) > 0 ? 1 : (a == b ? 0 : -1); }
  Rational to_scalar(const Value& v, const Integer& scale) const { return Rational(v, scale); }
};

struct DecimalArithmetic {
  using Value = Decimal;
  Decimal down, up;
  Decimal goal_value = 1;

  explicit DecimalArithmetic(const GameSpec& spec)
      : down(to_decimal_value(spec.q())), up(to_decimal_value(spec.p)) {}
  Value zero() const { return 0; }
  void advance() {}
  Value combine(const Value& lo, const Value& hi) const { return down * lo + up * hi; }
  static int compare(const Value& a, const Value& b) {
    const Decimal scale = std::max(boost::multiprecision::abs(a), boost::multiprecision::abs(b));
    const Decimal gap = a - b;
    if (boost::multiprecision::abs(gap) <= decimal_tie_tolerance * scale) return 0;
    return gap > 0 ? 1 : -1;
  }
  Decimal to_scalar(const Value& v, const Decimal&) const { return v; }
};

template <class S>
using ArithmeticFor = std::conditional_t<std::is_same_v<S, Rational>, ExactArithmetic, DecimalArithmetic>;

inline void check_horizon(int horizon) {
  if (horizon < 1) throw std::domain_error("horizon must be >= 1, got " + std::to_string(horizon));
}

inline void check_capital(const GameSpec& spec, int capital) {
  if (capital < 1 || capital >= spec.goal)
    throw std::domain_error("capital must lie in [1, " + std::to_string(spec.goal - 1) + "], got " +
                            std::to_string(capital));
}

}  // namespace detail

template <class S>
HorizonTable<S> build_table(const GameSpec& spec, int horizon, const DpOptions& options = {}) {
  detail::check_horizon(horizon);
  using Arith = detail::ArithmeticFor<S>;
  Arith arith(spec);
  const int n = spec.goal;

  HorizonTable<S> table;
  table.spec = spec;
  table.horizon = horizon;
  table.first_row = options.keep_all_rows ? 0 : horizon - 1;

  std::vector<typename Arith::Value> prev(static_cast<size_t>(n + 1), arith.zero());
  prev[static_cast<size_t>(n)] = arith.goal_value;
  auto emit = [&](int t, const std::vector<typename Arith::Value>& raw, std::vector<int> stakes) {
    if (t < table.first_row) return;
    std::vector<S> row;
    row.reserve(raw.size());
    for (const auto& v : raw) row.push_back(arith.to_scalar(v, arith.goal_value));
    table.values.push_back(std::move(row));
    table.stakes.push_back(std::move(stakes));
  };
  emit(0, prev, std::vector<int>(static_cast<size_t>(n + 1), 0));

  std::vector<typename Arith::Value> cur(prev.size());
  std::vector<int> stakes(prev.size());
  for (int t = 1; t <= horizon; ++t) {
    arith.advance();
    cur[0] = arith.zero();
    cur[static_cast<size_t>(n)] = arith.goal_value;
    stakes[0] = stakes[static_cast<size_t>(n)] = 0;
    detail::parallel_for(1, n, options.threads, [&](int i) {
      const int top = spec.max_stake(i);
      typename Arith::Value best = arith.combine(prev[static_cast<size_t>(i - 1)], prev[static_cast<size_t>(i + 1)]);
      int best_x = 1;
      for (int x = 2; x <= top; ++x) {
        auto v = arith.combine(prev[static_cast<size_t>(i - x)], prev[static_cast<size_t>(i + x)]);
        const int c = Arith::compare(v, best);
        if (c >= 0) {  // ties go to the larger stake
          if (c > 0) best = std::move(v);
          best_x = x;
        }
      }
      cur[static_cast<size_t>(i)] = std::move(best);
      stakes[static_cast<size_t>(i)] = best_x;
    });
    emit(t, cur, stakes);
    std::swap(prev, cur);
  }
  return table;
}

template <class S>
StakeDecision<S> best_stake(const GameSpec& spec, int capital, int horizon) {
  detail::check_capital(spec, capital);
  detail::check_horizon(horizon);
  const auto table = build_table<S>(spec, horizon, {.keep_all_rows = false});
  return {table.best_stake(capital, horizon), table.value(capital, horizon)};
}

// Value of staking each admissible x at capital i with t rounds left, read
// from row t - 1. Requires rows t - 1 and t to be retained.
template <class S>
std::vector<StakeOption<S>> stake_options(const HorizonTable<S>& table, int capital, int t) {
  detail::check_capital(table.spec, capital);
  if (t < 1 || t > table.horizon) throw std::domain_error("horizon outside the table");
  const S q = FieldTraits<S>::from_rational(table.spec.q());
  const S p = FieldTraits<S>::from_rational(table.spec.p);
  const int chosen = table.best_stake(capital, t);
  const S& best = table.value(capital, t);
  std::vector<StakeOption<S>> out;
  for (int x = 1; x <= table.spec.max_stake(capital); ++x) {
    S v = q * table.value(capital - x, t - 1) + p * table.value(capital + x, t - 1);
    bool optimal;
    if constexpr (std::is_same_v<S, Rational>) optimal = v == best;
    else optimal = detail::DecimalArithmetic::compare(v, best) == 0;
    out.push_back({x, std::move(v), optimal || x == chosen});
  }
  return out;
}

// Probability of reaching N within `horizon` rounds when following a fixed
// stake table. N-1 entries; entry k belongs to capital k+1.
template <class S>
std::vector<S> horizon_win_prob(const GameSpec& spec, const Strategy& strategy, int horizon) {
  if (horizon < 0) throw std::domain_error("horizon must be >= 0");
  if (strategy.goal() != spec.goal) throw std::domain_error("strategy exit capital does not match the game");
  using Arith = detail::ArithmeticFor<S>;
  Arith arith(spec);
  const int n = spec.goal;
  std::vector<typename Arith::Value> prev(static_cast<size_t>(n + 1), arith.zero()), cur(prev.size());
  prev[static_cast<size_t>(n)] = arith.goal_value;
  for (int t = 1; t <= horizon; ++t) {
    arith.advance();
    cur[0] = arith.zero();
    cur[static_cast<size_t>(n)] = arith.goal_value;
    for (int i = 1; i < n; ++i) {
      const int x = strategy.stake(i);
      cur[static_cast<size_t>(i)] = arith.combine(prev[static_cast<size_t>(i - x)], prev[static_cast<size_t>(i + x)]);
    }
    std::swap(prev, cur);
  }
  std::vector<S> out;
  out.reserve(static_cast<size_t>(n - 1));
  for (int i = 1; i < n; ++i) out.push_back(arith.to_scalar(prev[static_cast<size_t>(i)], arith.goal_value));
  return out;
}

using AnyHorizonTable = std::variant<HorizonTable<Rational>, HorizonTable<Decimal>>;

AnyHorizonTable build_table_any(const GameSpec& spec, int horizon, NumericMode mode, const DpOptions& options = {});

struct StoryCase {
  Rational p;
  int goal = 0;
  int horizon = 0;
};

// One section per case: the optimal stakes and survival values with the full
// horizon remaining. A failing case records its error and the batch goes on.
struct StorySection {
  StoryCase input;
  std::optional<Backend> backend;
  std::vector<int> stakes;                                         // capitals 1..N-1
  std::variant<std::vector<Rational>, std::vector<Decimal>> values;  // capitals 1..N-1
  std::optional<std::string> error;
};

std::vector<StorySection> best_strat_story(const std::vector<StoryCase>& cases, NumericMode mode);

}  // namespace hurry

#endif  // HURRY_HORIZON_DP_HPP
