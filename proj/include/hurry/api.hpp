#ifndef HURRY_API_HPP
#define HURRY_API_HPP

#include "hurry/horizon_dp.hpp"
#include "hurry/io.hpp"

namespace hurry::api {

// JSON request handlers shared by the command line and the HTTP service.
// Malformed input throws RequestError; mathematically invalid input (p outside
// (0, 1), inadmissible stakes, capital out of range) throws std::domain_error.
//
// Common request fields: "p" ("a/b" or number), "N", "capital", "horizon",
// "strategy" (family name, stake array, or strategy-file object), "mode"
// (auto|exact|decimal; HG_NUMERIC_MODE supplies the default), "sig_digits".

json best_stake(const json& request);
json best_strat(const json& request);
json best_strat_story(const json& request);
json analyze(const json& request);
json horizon_eval(const json& request);
json search_bk(const json& request);
json kelly_contest(const json& request);
json simulate(const json& request);

// Mode from HG_NUMERIC_MODE, or automatic when unset.
NumericMode default_mode();

// Request field readers shared with the session service.
GameSpec parse_spec(const json& request);
int parse_capital(const json& request, const GameSpec& spec, const std::string& field = "capital");
int parse_horizon(const json& request);
int parse_sig_digits(const json& request);
NumericMode parse_mode(const json& request);

}  // namespace hurry::api

#endif  // HURRY_API_HPP
