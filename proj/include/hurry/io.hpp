#ifndef HURRY_IO_HPP
#define HURRY_IO_HPP

#include "hurry/decimal.hpp"
#include "hurry/game_model.hpp"
#include "hurry/rational_function.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hurry {

using json = nlohmann::json;

// A malformed request or flag; `field` names the offending input.
class RequestError : public std::invalid_argument {
 public:
  RequestError(std::string field, const std::string& message)
      : std::invalid_argument(message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// A well-formed input outside the mathematical domain (p >= 1, capital past N, ...).
class FieldDomainError : public std::domain_error {
 public:
  FieldDomainError(std::string field, const std::string& message)
      : std::domain_error(message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Canonical value digits for decimal-backend results.
inline constexpr int decimal_value_digits = 30;

json to_json(const Rational& x);
json to_json(const RationalFunction& f);
json strategy_to_json(const GameSpec& spec, const Strategy& strategy);

Rational rational_from_json(const json& j, const std::string& field);

// Canonical machine value: "a/b" for exact, 30 significant digits for decimal.
inline std::string value_string(const Rational& x) { return x.str(); }
inline std::string value_string(const Decimal& x) { return to_decimal(x, decimal_value_digits); }
inline std::string decimal_string(const Rational& x, int sig) { return to_decimal(x, sig); }
inline std::string decimal_string(const Decimal& x, int sig) { return to_decimal(x, sig); }

// Named family "timid" | "bold" | "kelly:f" | "bk:f:c".
Strategy strategy_from_name(int goal, const std::string& name);
// {"N": int, "p": "a/b", "stakes": [...]}; N and p must agree with the game when given.
Strategy strategy_from_file_json(const json& j, const std::optional<GameSpec>& spec);

}  // namespace hurry

#endif  // HURRY_IO_HPP
