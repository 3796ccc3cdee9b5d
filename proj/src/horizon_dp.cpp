#include "hurry/horizon_dp.hpp"

namespace hurry {

NumericMode parse_numeric_mode(const std::string& text) {
  if (text == "auto" || text == "automatic") return NumericMode::automatic;
  if (text == "exact") return NumericMode::exact;
  if (text == "decimal") return NumericMode::decimal;
  throw std::invalid_argument("unknown numeric mode '" + text + "' (expected auto|exact|decimal)");
}

std::string to_string(NumericMode mode) {
  switch (mode) {
    case NumericMode::exact: return "exact";
    case NumericMode::decimal: return "decimal";
    default: return "auto";
  }
}

std::string to_string(Backend backend) { return backend == Backend::exact ? "exact" : "decimal"; }

Backend choose_backend(const GameSpec& spec, long horizon, NumericMode mode) {
  switch (mode) {
    case NumericMode::exact: return Backend::exact;
    case NumericMode::decimal: return Backend::decimal;
    default: return static_cast<long>(spec.goal) * horizon <= exact_work_limit ? Backend::exact : Backend::decimal;
  }
}

AnyHorizonTable build_table_any(const GameSpec& spec, int horizon, NumericMode mode, const DpOptions& options) {
  if (choose_backend(spec, horizon, mode) == Backend::exact) return build_table<Rational>(spec, horizon, options);
  return build_table<Decimal>(spec, horizon, options);
}

std::vector<StorySection> best_strat_story(const std::vector<StoryCase>& cases, NumericMode mode) {
  std::vector<StorySection> out;
  out.reserve(cases.size());
  for (const auto& c : cases) {
    StorySection section;
    section.input = c;
    try {
      const GameSpec spec(c.p, c.goal);
      detail::check_horizon(c.horizon);
      const auto any = build_table_any(spec, c.horizon, mode, {.keep_all_rows = false});
      std::visit(
          [&](const auto& table) {
            using S = std::decay_t<decltype(table.value(0, 0))>;
            section.backend = std::is_same_v<S, Rational> ? Backend::exact : Backend::decimal;
            std::vector<S> values;
            for (int i = 1; i < spec.goal; ++i) {
              section.stakes.push_back(table.best_stake(i, c.horizon));
              values.push_back(table.value(i, c.horizon));
            }
            section.values = std::move(values);
          },
          any);
    } catch (const std::exception& e) {
      section.error = e.what();
    }
    out.push_back(std::move(section));
  }
  return out;
}

}  // namespace hurry
