#ifndef HURRY_EXACT_CHAIN_HPP
#define HURRY_EXACT_CHAIN_HPP

#include "hurry/field.hpp"
#include "hurry/game_model.hpp"
#include "hurry/sparse_solve.hpp"

#include <optional>
#include <vector>

namespace hurry {

// Absorbing-chain analysis of a fixed strategy. Every list has N-1 entries;
// entry k belongs to starting capital k+1.

namespace detail {

// Builds   x[i] - a*q*x[i-s] - a*p*x[i+s] = extra[i]   over capitals 1..N-1,
// with x[0] = at_ruin and x[N] = at_goal moved to the right-hand side.
template <class F>
SparseSystem<F> absorption_system(const GameSpec& spec, const Strategy& strategy, const F& step, const F& at_ruin,
                                  const F& at_goal, const std::vector<F>* extra) {
  using Traits = FieldTraits<F>;
  if (strategy.goal() != spec.goal) throw std::domain_error("strategy exit capital does not match the game");
  const int n = spec.goal - 1;
  const F down = step * Traits::from_rational(spec.q());
  const F up = step * Traits::from_rational(spec.p);
  SparseSystem<F> sys(n);
  for (int i = 1; i < spec.goal; ++i) {
    const int row = i - 1;
    const int s = strategy.stake(i);
    sys.add(row, row, Traits::from_rational(Rational(1)));
    if (i - s > 0) sys.add(row, i - s - 1, -down);
    else sys.rhs[static_cast<size_t>(row)] += down * at_ruin;
    if (i + s < spec.goal) sys.add(row, i + s - 1, -up);
    else sys.rhs[static_cast<size_t>(row)] += up * at_goal;
    if (extra) sys.rhs[static_cast<size_t>(row)] += (*extra)[static_cast<size_t>(row)];
  }
  return sys;
}

template <class F>
F zero() {
  return FieldTraits<F>::from_rational(Rational(0));
}

template <class F>
F one() {
  return FieldTraits<F>::from_rational(Rational(1));
}

}  // namespace detail

template <class F = Rational>
std::vector<F> win_prob(const GameSpec& spec, const Strategy& strategy) {
  using namespace detail;
  return solve(absorption_system<F>(spec, strategy, one<F>(), zero<F>(), one<F>(), nullptr));
}

template <class F = Rational>
std::vector<F> expected_duration(const GameSpec& spec, const Strategy& strategy) {
  using namespace detail;
  const std::vector<F> ones(static_cast<size_t>(spec.goal - 1), one<F>());
  return solve(absorption_system<F>(spec, strategy, one<F>(), zero<F>(), zero<F>(), &ones));
}

// Expected duration conditioned on exiting at N. Solves
//   g[i] = q g[i-s] + p g[i+s] + W[i],  g[0] = g[N] = 0
// where W is the win probability, and returns g/W. Entries with W = 0 are
// undefined and come back empty.
template <class F = Rational>
std::vector<std::optional<F>> expected_duration_given_win(const GameSpec& spec, const Strategy& strategy,
                                                          const std::vector<F>& wins) {
  using namespace detail;
  const std::vector<F> g = solve(absorption_system<F>(spec, strategy, one<F>(), zero<F>(), zero<F>(), &wins));
  std::vector<std::optional<F>> out(g.size());
  for (size_t k = 0; k < g.size(); ++k)
    if (!FieldTraits<F>::is_zero(wins[k])) out[k] = g[k] / wins[k];
  return out;
}

template <class F = Rational>
std::vector<std::optional<F>> expected_duration_given_win(const GameSpec& spec, const Strategy& strategy) {
  return expected_duration_given_win<F>(spec, strategy, win_prob<F>(spec, strategy));
}

// PGF of the remaining duration: F[i] = t (q F[i-s] + p F[i+s]), F[0] = F[N] = 1.
std::vector<RationalFunction> duration_pgf(const GameSpec& spec, const Strategy& strategy);

// Same system with F[0] = 0, F[N] = 1: the defective generating function of
// winning paths, whose value at t = 1 is the win probability.
std::vector<RationalFunction> duration_pgf_win(const GameSpec& spec, const Strategy& strategy);

// duration_pgf_win divided by the win probability; empty where it is zero.
std::vector<std::optional<RationalFunction>> duration_pgf_win_normalized(const GameSpec& spec,
                                                                         const Strategy& strategy);

template <class F>
struct ChainReport {
  std::vector<F> win_prob;
  std::vector<F> exp_duration;
  std::vector<std::optional<F>> exp_duration_given_win;
};

template <class F = Rational>
ChainReport<F> analyze_chain(const GameSpec& spec, const Strategy& strategy) {
  ChainReport<F> report;
  report.win_prob = win_prob<F>(spec, strategy);
  report.exp_duration = expected_duration<F>(spec, strategy);
  report.exp_duration_given_win = expected_duration_given_win<F>(spec, strategy, report.win_prob);
  return report;
}

// Max-norm residual of the win-probability and duration systems at a decimal
// solution; the sanity check reported alongside decimal-mode results.
Decimal chain_residual(const GameSpec& spec, const Strategy& strategy, const std::vector<Decimal>& wins,
                       const std::vector<Decimal>& durations);

}  // namespace hurry

#endif  // HURRY_EXACT_CHAIN_HPP
