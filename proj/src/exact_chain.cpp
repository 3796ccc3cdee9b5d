#include "hurry/exact_chain.hpp"

namespace hurry {

namespace {

std::vector<RationalFunction> pgf_with_boundary(const GameSpec& spec, const Strategy& strategy, const Rational& at_ruin) {
  const RationalFunction t(Polynomial::t(), Polynomial::constant(Rational(1)));
  return solve(detail::absorption_system<RationalFunction>(spec, strategy, t, RationalFunction(at_ruin),
                                                           RationalFunction(Rational(1)), nullptr));
}

Decimal residual(const SparseSystem<Decimal>& sys, const std::vector<Decimal>& x) {
  Decimal worst = 0;
  for (int r = 0; r < sys.size(); ++r) {
    Decimal acc = -sys.rhs[static_cast<size_t>(r)];
    for (const auto& [col, v] : sys.rows[static_cast<size_t>(r)]) acc += v * x[static_cast<size_t>(col)];
    worst = std::max(worst, Decimal(boost::multiprecision::abs(acc)));
  }
  return worst;
}

}  // namespace

std::vector<RationalFunction> duration_pgf(const GameSpec& spec, const Strategy& strategy) {
  return pgf_with_boundary(spec, strategy, Rational(1));
}

std::vector<RationalFunction> duration_pgf_win(const GameSpec& spec, const Strategy& strategy) {
  return pgf_with_boundary(spec, strategy, Rational(0));
}

std::vector<std::optional<RationalFunction>> duration_pgf_win_normalized(const GameSpec& spec,
                                                                         const Strategy& strategy) {
  const auto pgf = duration_pgf_win(spec, strategy);
  const auto wins = win_prob<Rational>(spec, strategy);
  std::vector<std::optional<RationalFunction>> out(pgf.size());
  for (size_t k = 0; k < pgf.size(); ++k)
    if (!wins[k].is_zero()) out[k] = pgf[k] / RationalFunction(wins[k]);
  return out;
}

Decimal chain_residual(const GameSpec& spec, const Strategy& strategy, const std::vector<Decimal>& wins,
                       const std::vector<Decimal>& durations) {
  using namespace detail;
  const std::vector<Decimal> ones(static_cast<size_t>(spec.goal - 1), one<Decimal>());
  const auto win_sys = absorption_system<Decimal>(spec, strategy, one<Decimal>(), zero<Decimal>(), one<Decimal>(), nullptr);
  const auto dur_sys = absorption_system<Decimal>(spec, strategy, one<Decimal>(), zero<Decimal>(), zero<Decimal>(), &ones);
  return std::max(residual(win_sys, wins), residual(dur_sys, durations));
}

}  // namespace hurry
