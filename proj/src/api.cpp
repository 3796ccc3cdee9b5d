#include "hurry/api.hpp"

#include "hurry/exact_chain.hpp"
#include "hurry/search.hpp"
#include "hurry/simulate.hpp"

#include <cstdlib>

namespace hurry::api {

namespace {

constexpr long analyze_exact_goal_limit = 600;

const json& require(const json& r, const std::string& field) {
  if (!r.is_object() || !r.contains(field) || r[field].is_null())
    throw RequestError(field, "missing required field '" + field + "'");
  return r[field];
}

long get_int(const json& r, const std::string& field) {
  const json& v = require(r, field);
  if (!v.is_number_integer()) throw RequestError(field, field + ": expected an integer");
  return v.get<long>();
}

long get_int_or(const json& r, const std::string& field, long fallback) {
  return r.contains(field) && !r[field].is_null() ? get_int(r, field) : fallback;
}

bool get_bool_or(const json& r, const std::string& field, bool fallback) {
  if (!r.contains(field) || r[field].is_null()) return fallback;
  if (!r[field].is_boolean()) throw RequestError(field, field + ": expected true or false");
  return r[field].get<bool>();
}

int narrow(long v, const std::string& field) {
  if (v < -1'000'000'000L || v > 1'000'000'000L) throw RequestError(field, field + ": value out of range");
  return static_cast<int>(v);
}

template <class Fn>
auto in_field(const std::string& field, Fn&& fn) {
  try {
    return fn();
  } catch (const FieldDomainError&) {
    throw;
  } catch (const std::domain_error& e) {
    throw FieldDomainError(field, e.what());
  }
}

}  // namespace

GameSpec parse_spec(const json& r) {
  const Rational p = rational_from_json(require(r, "p"), "p");
  const int goal = narrow(get_int(r, "N"), "N");
  if (p <= Rational(0) || p >= Rational(1))
    throw FieldDomainError("p", "round-win probability must satisfy 0 < p < 1, got " + p.str());
  return in_field("N", [&] { return GameSpec(p, goal); });
}

int parse_capital(const json& r, const GameSpec& spec, const std::string& field) {
  const int c = narrow(get_int(r, field), field);
  if (c < 1 || c >= spec.goal)
    throw FieldDomainError(field, field + " must lie in [1, " + std::to_string(spec.goal - 1) + "], got " +
                                      std::to_string(c));
  return c;
}

int parse_horizon(const json& r) {
  const int t = narrow(get_int(r, "horizon"), "horizon");
  if (t < 1) throw FieldDomainError("horizon", "horizon must be >= 1, got " + std::to_string(t));
  return t;
}

int parse_sig_digits(const json& r) {
  const long s = get_int_or(r, "sig_digits", 10);
  if (s < 1 || s > 200) throw RequestError("sig_digits", "sig_digits must lie in [1, 200]");
  return static_cast<int>(s);
}

NumericMode parse_mode(const json& r) {
  if (!r.contains("mode") || r["mode"].is_null()) return default_mode();
  if (!r["mode"].is_string()) throw RequestError("mode", "mode: expected auto|exact|decimal");
  try {
    return parse_numeric_mode(r["mode"].get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw RequestError("mode", e.what());
  }
}

namespace {

Strategy get_strategy(const json& r, const GameSpec& spec, const std::string& field = "strategy") {
  const json& s = require(r, field);
  return in_field(field, [&] {
    if (s.is_string()) return strategy_from_name(spec.goal, s.get<std::string>());
    if (s.is_array()) return strategy_from_file_json(json{{"stakes", s}}, spec);
    return strategy_from_file_json(s, spec);
  });
}

Rational get_probability_field(const json& r, const std::string& field) {
  const Rational v = rational_from_json(require(r, field), field);
  if (v <= Rational(0) || v >= Rational(1))
    throw FieldDomainError(field, field + " must satisfy 0 < " + field + " < 1, got " + v.str());
  return v;
}

SearchGrid get_grid(const json& r, bool with_thresholds) {
  SearchGrid grid;
  if (r.contains("fractions") && !r["fractions"].is_null()) {
    for (const auto& f : r["fractions"]) grid.fractions.push_back(rational_from_json(f, "fractions"));
    if (with_thresholds) {
      if (r.contains("thresholds") && !r["thresholds"].is_null()) {
        for (const auto& c : r["thresholds"]) grid.thresholds.push_back(rational_from_json(c, "thresholds"));
      } else {
        grid.thresholds = {Rational(1)};
      }
    }
    if (grid.fractions.empty() || (with_thresholds && grid.thresholds.empty()))
      throw FieldDomainError("fractions", "empty search grid");
    return grid;
  }
  const Rational h = rational_from_json(require(r, "resolution"), "resolution");
  if (h <= Rational(0) || h >= Rational(1))
    throw FieldDomainError("resolution", "resolution must satisfy 0 < h < 1 (empty grid), got " + h.str());
  return SearchGrid::from_resolution(h);
}

template <class S>
json value_list(const std::vector<S>& values, int sig, json& decimals) {
  json out = json::array();
  decimals = json::array();
  for (const auto& v : values) {
    out.push_back(value_string(v));
    decimals.push_back(decimal_string(v, sig));
  }
  return out;
}

template <class S>
json optional_value_list(const std::vector<std::optional<S>>& values, int sig, json& decimals) {
  json out = json::array();
  decimals = json::array();
  for (const auto& v : values) {
    out.push_back(v ? json(value_string(*v)) : json(nullptr));
    decimals.push_back(v ? json(decimal_string(*v, sig)) : json(nullptr));
  }
  return out;
}

json header(const std::string& command, const GameSpec& spec) {
  return {{"command", command}, {"p", spec.p.str()}, {"N", spec.goal}};
}

template <class S>
std::string tie_tolerance() {
  return std::is_same_v<S, Rational> ? "0" : "1e-25";
}

}  // namespace

NumericMode default_mode() {
  const char* env = std::getenv("HG_NUMERIC_MODE");
  if (!env || !*env) return NumericMode::automatic;
  try {
    return parse_numeric_mode(env);
  } catch (const std::invalid_argument& e) {
    throw RequestError("HG_NUMERIC_MODE", e.what());
  }
}

json best_stake(const json& r) {
  const GameSpec spec = parse_spec(r);
  const int capital = parse_capital(r, spec);
  const int horizon = parse_horizon(r);
  const int sig = parse_sig_digits(r);
  json out = header("best-stake", spec);
  out["capital"] = capital;
  out["horizon"] = horizon;
  auto fill = [&](auto decision, const std::string& tol) {
    out["stake"] = decision.stake;
    out["value"] = value_string(decision.value);
    out["value_decimal"] = decimal_string(decision.value, sig);
    out["tie_rule"] = "largest stake";
    out["tie_tolerance"] = tol;
  };
  const Backend backend = choose_backend(spec, horizon, parse_mode(r));
  out["backend"] = to_string(backend);
  if (backend == Backend::exact) fill(hurry::best_stake<Rational>(spec, capital, horizon), tie_tolerance<Rational>());
  else fill(hurry::best_stake<Decimal>(spec, capital, horizon), tie_tolerance<Decimal>());
  return out;
}

json best_strat(const json& r) {
  const GameSpec spec = parse_spec(r);
  const int horizon = parse_horizon(r);
  const int sig = parse_sig_digits(r);
  const bool full = get_bool_or(r, "full", false);
  json out = header("best-strat", spec);
  out["horizon"] = horizon;
  const auto any = build_table_any(spec, horizon, parse_mode(r), {.keep_all_rows = full});
  std::visit(
      [&](const auto& table) {
        using S = std::decay_t<decltype(table.value(0, 0))>;
        out["backend"] = to_string(std::is_same_v<S, Rational> ? Backend::exact : Backend::decimal);
        out["tie_rule"] = "largest stake";
        out["tie_tolerance"] = tie_tolerance<S>();
        std::vector<int> stakes;
        std::vector<S> values;
        for (int i = 1; i < spec.goal; ++i) {
          stakes.push_back(table.best_stake(i, horizon));
          values.push_back(table.value(i, horizon));
        }
        json decimals;
        out["stakes"] = stakes;
        out["values"] = value_list(values, sig, decimals);
        out["values_decimal"] = decimals;
        if (full) {
          json rows = json::array();
          for (int t = 0; t <= horizon; ++t) {
            json row_decimals;
            const auto& vals = table.values[static_cast<size_t>(t)];
            rows.push_back({{"t", t},
                            {"values", value_list(vals, sig, row_decimals)},
                            {"values_decimal", row_decimals},
                            {"stakes", table.stakes[static_cast<size_t>(t)]}});
          }
          out["table"] = rows;
        }
      },
      any);
  return out;
}

json best_strat_story(const json& r) {
  const json& cases_json = require(r, "cases");
  if (!cases_json.is_array()) throw RequestError("cases", "cases: expected an array of {p, N, horizon}");
  const int sig = parse_sig_digits(r);
  std::vector<StoryCase> cases;
  std::vector<std::optional<std::string>> parse_errors;
  for (const auto& c : cases_json) {
    StoryCase sc;
    try {
      sc.p = rational_from_json(require(c, "p"), "p");
      sc.goal = narrow(get_int(c, "N"), "N");
      sc.horizon = narrow(get_int(c, "horizon"), "horizon");
      parse_errors.emplace_back();
    } catch (const std::exception& e) {
      parse_errors.emplace_back(e.what());
    }
    cases.push_back(sc);
  }
  const auto sections = hurry::best_strat_story(cases, parse_mode(r));
  json out = {{"command", "best-strat-story"}, {"sections", json::array()}};
  for (size_t k = 0; k < sections.size(); ++k) {
    const auto& s = sections[k];
    json sec = {{"p", s.input.p.str()}, {"N", s.input.goal}, {"horizon", s.input.horizon}};
    if (parse_errors[k] || s.error) {
      sec["error"] = parse_errors[k] ? *parse_errors[k] : *s.error;
    } else {
      sec["backend"] = to_string(*s.backend);
      sec["stakes"] = s.stakes;
      std::visit(
          [&](const auto& values) {
            json decimals;
            sec["values"] = value_list(values, sig, decimals);
            sec["values_decimal"] = decimals;
          },
          s.values);
    }
    out["sections"].push_back(sec);
  }
  return out;
}

json analyze(const json& r) {
  const GameSpec spec = parse_spec(r);
  const Strategy strategy = get_strategy(r, spec);
  const int sig = parse_sig_digits(r);
  const json& measure_json = require(r, "measure");
  if (!measure_json.is_string()) throw RequestError("measure", "measure: expected winprob|ed|edw|pgf|pgfw");
  const std::string measure = measure_json.get<std::string>();
  const NumericMode mode = parse_mode(r);

  json out = header("analyze", spec);
  out["measure"] = measure;
  out["strategy"] = strategy_to_json(spec, strategy);

  if (measure == "pgf" || measure == "pgfw") {
    if (mode == NumericMode::decimal) throw RequestError("mode", "generating functions are computed exactly only");
    const bool normalized = get_bool_or(r, "normalized", false);
    if (normalized && measure != "pgfw") throw RequestError("normalized", "normalized applies to pgfw only");
    std::vector<std::optional<RationalFunction>> pgfs;
    if (measure == "pgf") {
      for (auto& f : duration_pgf(spec, strategy)) pgfs.emplace_back(std::move(f));
    } else if (normalized) {
      pgfs = duration_pgf_win_normalized(spec, strategy);
    } else {
      for (auto& f : duration_pgf_win(spec, strategy)) pgfs.emplace_back(std::move(f));
    }
    out["backend"] = "exact";
    out["normalized"] = normalized;
    json values = json::array();
    for (const auto& f : pgfs) values.push_back(f ? to_json(*f) : json(nullptr));
    out["values"] = values;
    if (r.contains("series") && !r["series"].is_null()) {
      const long k = get_int(r, "series");
      if (k < 0 || k > 10000) throw RequestError("series", "series: order must lie in [0, 10000]");
      json series = json::array();
      for (const auto& f : pgfs) {
        if (!f) {
          series.push_back(nullptr);
          continue;
        }
        json coeffs = json::array();
        for (const auto& c : series_coeffs(*f, static_cast<size_t>(k))) coeffs.push_back(c.str());
        series.push_back(coeffs);
      }
      out["series_order"] = k;
      out["series"] = series;
    }
    return out;
  }

  if (measure != "winprob" && measure != "ed" && measure != "edw")
    throw RequestError("measure", "unknown measure '" + measure + "' (expected winprob|ed|edw|pgf|pgfw)");
  const bool exact =
      mode == NumericMode::exact || (mode == NumericMode::automatic && spec.goal <= analyze_exact_goal_limit);
  out["backend"] = exact ? "exact" : "decimal";
  auto run = [&](auto tag) {
    using S = decltype(tag);
    json decimals;
    if (measure == "winprob") {
      out["values"] = value_list(win_prob<S>(spec, strategy), sig, decimals);
    } else if (measure == "ed") {
      out["values"] = value_list(expected_duration<S>(spec, strategy), sig, decimals);
    } else {
      out["values"] = optional_value_list(expected_duration_given_win<S>(spec, strategy), sig, decimals);
    }
    out["values_decimal"] = decimals;
    if constexpr (std::is_same_v<S, Decimal>) {
      const auto w = win_prob<Decimal>(spec, strategy);
      const auto d = expected_duration<Decimal>(spec, strategy);
      out["residual"] = to_decimal(chain_residual(spec, strategy, w, d), 3);
    }
  };
  if (exact) run(Rational{});
  else run(Decimal{});
  return out;
}

json horizon_eval(const json& r) {
  const GameSpec spec = parse_spec(r);
  const Strategy strategy = get_strategy(r, spec);
  const int horizon = parse_horizon(r);
  const int sig = parse_sig_digits(r);
  json out = header("horizon-eval", spec);
  out["horizon"] = horizon;
  out["strategy"] = strategy_to_json(spec, strategy);
  const Backend backend = choose_backend(spec, horizon, parse_mode(r));
  out["backend"] = to_string(backend);
  json decimals;
  if (backend == Backend::exact) out["values"] = value_list(horizon_win_prob<Rational>(spec, strategy, horizon), sig, decimals);
  else out["values"] = value_list(horizon_win_prob<Decimal>(spec, strategy, horizon), sig, decimals);
  out["values_decimal"] = decimals;
  return out;
}

namespace {

json search_result_json(json out, const SearchResult& res, int sig) {
  auto pair = [&](const std::string& key, const Rational& v) {
    out[key] = v.str();
    out[key + "_decimal"] = to_decimal(v, sig);
  };
  out["best"] = {{"f", res.fraction.str()}, {"c", res.threshold ? json(res.threshold->str()) : json(nullptr)}};
  out["objective_kind"] = res.objective_kind;
  pair("objective", res.objective);
  pair("win_prob", res.win_prob);
  pair("exp_duration", res.exp_duration);
  if (res.exp_duration_given_win) pair("exp_duration_given_win", *res.exp_duration_given_win);
  else out["exp_duration_given_win"] = nullptr;
  out["duration_kind"] = "unbounded";
  out["grid_resolution"] = res.grid_resolution ? json(res.grid_resolution->str()) : json(nullptr);
  out["evaluations"] = res.evaluations;
  out["evaluation_backend"] = to_string(res.evaluation_backend);
  out["verified"] = "exact";
  out["constraint_met"] = res.constraint_met;
  if (!res.table.empty()) {
    json rows = json::array();
    auto dec = [&](const std::optional<Decimal>& v) { return v ? json(to_decimal(*v, sig)) : json(nullptr); };
    for (const auto& g : res.table)
      rows.push_back({{"f", g.fraction.str()},
                      {"c", g.threshold ? json(g.threshold->str()) : json(nullptr)},
                      {"objective", to_decimal(g.objective, sig)},
                      {"win_prob", dec(g.win_prob)},
                      {"exp_duration", dec(g.exp_duration)},
                      {"exp_duration_given_win", dec(g.exp_duration_given_win)}});
    out["table"] = rows;
  }
  return out;
}

SearchOptions get_search_options(const json& r) {
  SearchOptions o;
  o.mode = parse_mode(r);
  o.include_table = get_bool_or(r, "include_table", false);
  const long threads = get_int_or(r, "threads", 1);
  if (threads < 0 || threads > 256) throw RequestError("threads", "threads must lie in [0, 256]");
  o.threads = static_cast<unsigned>(threads);
  return o;
}

}  // namespace

json search_bk(const json& r) {
  const GameSpec spec = parse_spec(r);
  const int capital = parse_capital(r, spec);
  const int horizon = parse_horizon(r);
  const int sig = parse_sig_digits(r);
  const SearchGrid grid = get_grid(r, true);
  const SearchOptions options = get_search_options(r);
  const SearchResult res = in_field("fractions", [&] { return hurry::best_bk(spec, capital, horizon, grid, options); });
  json out = header("search-bk", spec);
  out["capital"] = capital;
  out["horizon"] = horizon;
  return search_result_json(std::move(out), res, sig);
}

json kelly_contest(const json& r) {
  const GameSpec spec = parse_spec(r);
  const int capital = parse_capital(r, spec);
  const Rational conf = get_probability_field(r, "conf");
  const int sig = parse_sig_digits(r);
  const SearchGrid grid = get_grid(r, false);
  const SearchOptions options = get_search_options(r);
  const SearchResult res = in_field("fractions", [&] { return hurry::kelly_contest(spec, capital, grid, conf, options); });
  json out = header("kelly-contest", spec);
  out["capital"] = capital;
  out["conf"] = conf.str();
  return search_result_json(std::move(out), res, sig);
}

json simulate(const json& r) {
  const Rational p = rational_from_json(require(r, "p"), "p");
  const int goal = narrow(get_int(r, "N"), "N");
  const bool degenerate = get_bool_or(r, "degenerate", false);
  const SimulationSpec sim = in_field("p", [&] { return SimulationSpec(p, goal, degenerate); });
  const int start = narrow(get_int(r, "capital"), "capital");
  if (start < 1 || start >= goal)
    throw FieldDomainError("capital", "capital must lie in [1, " + std::to_string(goal - 1) + "]");
  std::optional<int> horizon;
  if (r.contains("horizon") && !r["horizon"].is_null()) horizon = parse_horizon(r);
  const json& seed_json = require(r, "seed");
  if (!seed_json.is_number_unsigned() && !(seed_json.is_number_integer() && seed_json.get<long>() >= 0))
    throw RequestError("seed", "seed: expected a non-negative integer");
  const auto seed = seed_json.get<std::uint64_t>();
  const long games = get_int_or(r, "games", 1);
  if (games < 1 || games > 100'000'000L) throw RequestError("games", "games must lie in [1, 1e8]");
  const long threads = get_int_or(r, "threads", 1);
  if (threads < 0 || threads > 256) throw RequestError("threads", "threads must lie in [0, 256]");

  const json& policy_json = require(r, "policy");
  std::optional<Policy> policy;
  std::string policy_name;
  if (policy_json.is_string() && policy_json.get<std::string>() == "optimal") {
    if (!horizon) throw RequestError("horizon", "optimal play needs a horizon");
    const GameSpec spec = in_field("p", [&] { return GameSpec(p, goal); });
    policy = OptimalPolicy::from_table(build_table_any(spec, *horizon, parse_mode(r)));
    policy_name = "optimal";
  } else {
    // Strategy families only need N; p may be degenerate here.
    policy = in_field("policy", [&] {
      if (policy_json.is_string()) return strategy_from_name(goal, policy_json.get<std::string>());
      if (policy_json.is_array()) return strategy_from_file_json(json{{"stakes", policy_json}}, std::nullopt);
      return strategy_from_file_json(policy_json, std::nullopt);
    });
    if (std::get<Strategy>(*policy).goal() != goal) throw FieldDomainError("policy", "strategy N does not match N");
    policy_name = policy_json.is_string() ? policy_json.get<std::string>() : "table";
  }

  json out = {{"command", "simulate"}, {"p", p.str()},      {"N", goal},       {"capital", start},
              {"horizon", horizon ? json(*horizon) : json(nullptr)},          {"policy", policy_name},
              {"rng", rng_name},     {"seed", seed},        {"games", games}};
  if (games == 1) {
    const Trajectory t = simulate_game(sim, *policy, start, horizon, seed);
    json rounds = json::array();
    for (const auto& rd : t.rounds)
      rounds.push_back({{"capital", rd.capital}, {"stake", rd.stake}, {"outcome", rd.won ? "win" : "lose"}});
    out["trajectory"] = {{"seed", t.seed},
                         {"rounds", rounds},
                         {"exit", to_string(t.exit)},
                         {"duration", t.duration()},
                         {"final_capital", t.final_capital}};
  }
  const MonteCarloSummary s =
      monte_carlo(sim, *policy, start, horizon, static_cast<std::uint64_t>(games), seed, static_cast<unsigned>(threads));
  out["summary"] = {{"games", s.games},
                    {"wins", s.wins},
                    {"losses", s.losses},
                    {"expired", s.expired},
                    {"win_rate", s.win_rate},
                    {"win_rate_stderr", s.win_rate_stderr},
                    {"mean_duration", s.mean_duration},
                    {"duration_stderr", s.duration_stderr}};
  return out;
}

}  // namespace hurry::api
