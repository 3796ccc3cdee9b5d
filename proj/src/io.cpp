#include "hurry/io.hpp"

namespace hurry {

json to_json(const Rational& x) { return x.str(); }

json to_json(const RationalFunction& f) {
  json num = json::array(), den = json::array();
  for (const auto& c : f.num().coeffs()) num.push_back(c.str());
  for (const auto& c : f.den().coeffs()) den.push_back(c.str());
  return {{"num", num}, {"den", den}, {"text", f.str()}};
}

json strategy_to_json(const GameSpec& spec, const Strategy& strategy) {
  return {{"N", spec.goal}, {"p", spec.p.str()}, {"stakes", strategy.stakes()}};
}

Rational rational_from_json(const json& j, const std::string& field) {
  try {
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_number()) return Rational::parse(j.dump());
  } catch (const std::exception& e) {
    throw RequestError(field, field + ": " + e.what());
  }
  throw RequestError(field, field + ": expected a rational such as \"3/5\" or 0.6");
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  for (size_t pos; (pos = s.find(sep, start)) != std::string::npos; start = pos + 1) out.push_back(s.substr(start, pos - start));
  out.push_back(s.substr(start));
  return out;
}

Rational parse_param(const std::string& text, const std::string& name) {
  try {
    return Rational::parse(text);
  } catch (const std::exception& e) {
    throw RequestError("strategy", "strategy '" + name + "': " + e.what());
  }
}

}  // namespace

Strategy strategy_from_name(int goal, const std::string& name) {
  const auto parts = split(name, ':');
  if (parts[0] == "timid" && parts.size() == 1) return timid(goal);
  if (parts[0] == "bold" && parts.size() == 1) return bold(goal);
  if (parts[0] == "kelly" && parts.size() == 2) return kelly(goal, parse_param(parts[1], name));
  if (parts[0] == "bk" && parts.size() == 3)
    return breiman_kelly(goal, parse_param(parts[1], name), parse_param(parts[2], name));
  throw RequestError("strategy", "unknown strategy '" + name + "' (expected timid|bold|kelly:f|bk:f:c)");
}

Strategy strategy_from_file_json(const json& j, const std::optional<GameSpec>& spec) {
  if (!j.is_object() || !j.contains("stakes") || !j["stakes"].is_array())
    throw RequestError("strategy", "strategy file needs a \"stakes\" integer array");
  std::vector<int> stakes;
  for (const auto& s : j["stakes"]) {
    if (!s.is_number_integer()) throw RequestError("strategy", "strategy stakes must be integers");
    stakes.push_back(s.get<int>());
  }
  int goal = static_cast<int>(stakes.size()) + 1;
  if (j.contains("N")) {
    if (!j["N"].is_number_integer()) throw RequestError("strategy", "strategy N must be an integer");
    goal = j["N"].get<int>();
  }
  if (spec) {
    if (goal != spec->goal)
      throw std::domain_error("strategy file N = " + std::to_string(goal) + " does not match the game's N = " +
                              std::to_string(spec->goal));
    if (j.contains("p") && rational_from_json(j["p"], "strategy.p") != spec->p)
      throw std::domain_error("strategy file p does not match the game's p");
  }
  return Strategy(goal, std::move(stakes));
}

}  // namespace hurry
