#include "hurry/cli.hpp"

#include "hurry/api.hpp"
#include "hurry/server.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace hurry::cli {

namespace {

struct Flags {
  std::string p;
  std::optional<long> goal, capital, horizon, series, seed, games;
  std::string strategy, strategy_file, measure, format = "json", mode, resolution, fractions, thresholds, conf;
  std::vector<std::string> cases;
  std::string cases_file, snapshot, host = "0.0.0.0";
  int sig_digits = 10;
  unsigned threads = 1;
  int port = 8080;
  bool normalized = false, full = false, include_table = false, degenerate = false;
};

json read_json_file(const std::string& path, const std::string& field) {
  std::ifstream in(path);
  if (!in) throw RequestError(field, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw RequestError(field, "'" + path + "' is not valid JSON: " + e.what());
  }
}

json list_of_rationals(const std::string& text, const std::string& field) {
  json out = json::array();
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (item.empty()) throw RequestError(field, field + ": empty list entry");
    out.push_back(item);
  }
  return out;
}

json base_request(const Flags& f) {
  json r = json::object();
  if (!f.p.empty()) r["p"] = f.p;
  if (f.goal) r["N"] = *f.goal;
  if (f.capital) r["capital"] = *f.capital;
  if (f.horizon) r["horizon"] = *f.horizon;
  if (!f.mode.empty()) r["mode"] = f.mode;
  r["sig_digits"] = f.sig_digits;
  if (!f.strategy_file.empty()) r["strategy"] = read_json_file(f.strategy_file, "strategy-file");
  else if (!f.strategy.empty()) r["strategy"] = f.strategy;
  if (!f.resolution.empty()) r["resolution"] = f.resolution;
  if (!f.fractions.empty()) r["fractions"] = list_of_rationals(f.fractions, "fractions");
  if (!f.thresholds.empty()) r["thresholds"] = list_of_rationals(f.thresholds, "thresholds");
  if (!f.conf.empty()) r["conf"] = f.conf;
  r["threads"] = f.threads;
  return r;
}

// "n/1" reads better as "n" in human output.
std::string display(const std::string& s) {
  const auto slash = s.find('/');
  if (slash != std::string::npos && s.substr(slash) == "/1" && slash > 0) return s.substr(0, slash);
  return s;
}

std::string join(const json& values) {
  std::string s = "[";
  for (size_t k = 0; k < values.size(); ++k) {
    if (k) s += ", ";
    const json& v = values[k];
    if (v.is_null()) s += "undefined";
    else if (v.is_object() && v.contains("text")) s += v["text"].get<std::string>();
    else if (v.is_string()) s += display(v.get<std::string>());
    else if (v.is_array()) s += join(v);
    else s += v.dump();
  }
  return s + "]";
}

std::string scalar(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  return v.dump();
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

// Per-capital rows: capital, stake?, value, value_decimal.
void write_capital_rows(std::ostream& out, const json& values, const json* decimals, const json* stakes) {
  out << "capital" << (stakes ? ",stake" : "") << ",value" << (decimals ? ",value_decimal" : "") << '\n';
  for (size_t k = 0; k < values.size(); ++k) {
    out << k + 1;
    if (stakes) out << ',' << (*stakes)[k].dump();
    const json& v = values[k];
    out << ',' << csv_cell(v.is_object() && v.contains("text") ? v["text"].get<std::string>() : scalar(v));
    if (decimals) out << ',' << scalar((*decimals)[k]);
    out << '\n';
  }
}

void write_scalars_csv(std::ostream& out, const json& doc) {
  out << "key,value\n";
  for (const auto& [k, v] : doc.items())
    if (!v.is_structured()) out << k << ',' << csv_cell(scalar(v)) << '\n';
}

void write_grid_csv(std::ostream& out, const json& table) {
  out << "f,c,objective,win_prob,exp_duration,exp_duration_given_win\n";
  for (const auto& row : table)
    out << scalar(row["f"]) << ',' << scalar(row["c"]) << ',' << scalar(row["objective"]) << ','
        << scalar(row["win_prob"]) << ',' << scalar(row["exp_duration"]) << ',' << scalar(row["exp_duration_given_win"])
        << '\n';
}

void write_csv(std::ostream& out, const std::string& command, const json& doc) {
  if (command == "best-strat") {
    if (doc.contains("table")) {
      out << "t,capital,stake,value,value_decimal\n";
      for (const auto& row : doc["table"])
        for (size_t i = 0; i < row["values"].size(); ++i)
          out << row["t"].dump() << ',' << i << ',' << row["stakes"][i].dump() << ',' << scalar(row["values"][i]) << ','
              << scalar(row["values_decimal"][i]) << '\n';
    } else {
      write_capital_rows(out, doc["values"], &doc["values_decimal"], &doc["stakes"]);
    }
  } else if (command == "best-strat-story") {
    out << "p,N,horizon,capital,stake,value,value_decimal,error\n";
    for (const auto& s : doc["sections"]) {
      const std::string head = scalar(s["p"]) + ',' + s["N"].dump() + ',' + s["horizon"].dump();
      if (s.contains("error")) {
        out << head << ",,,,," << csv_cell(s["error"].get<std::string>()) << '\n';
        continue;
      }
      for (size_t k = 0; k < s["values"].size(); ++k)
        out << head << ',' << k + 1 << ',' << s["stakes"][k].dump() << ',' << scalar(s["values"][k]) << ','
            << scalar(s["values_decimal"][k]) << ",\n";
    }
  } else if (command == "analyze" && doc.contains("series")) {
    out << "capital,order,coefficient\n";
    for (size_t k = 0; k < doc["series"].size(); ++k)
      for (size_t j = 0; j < doc["series"][k].size(); ++j)
        out << k + 1 << ',' << j << ',' << scalar(doc["series"][k][j]) << '\n';
  } else if (command == "analyze" || command == "horizon-eval") {
    write_capital_rows(out, doc["values"], doc.contains("values_decimal") ? &doc["values_decimal"] : nullptr, nullptr);
  } else if ((command == "search-bk" || command == "kelly-contest") && doc.contains("table")) {
    write_grid_csv(out, doc["table"]);
  } else if (command == "simulate") {
    if (doc.contains("trajectory")) {
      out << "round,capital,stake,outcome\n";
      const auto& rounds = doc["trajectory"]["rounds"];
      for (size_t k = 0; k < rounds.size(); ++k)
        out << k + 1 << ',' << rounds[k]["capital"].dump() << ',' << rounds[k]["stake"].dump() << ','
            << scalar(rounds[k]["outcome"]) << '\n';
    } else {
      write_scalars_csv(out, doc["summary"]);
    }
  } else {
    write_scalars_csv(out, doc);
  }
}

void write_table(std::ostream& out, const std::string& command, const json& doc) {
  if (command == "analyze") {
    if (doc.contains("series")) {
      for (size_t k = 0; k < doc["series"].size(); ++k) out << "capital " << k + 1 << ": " << join(doc["series"][k]) << '\n';
    } else {
      out << join(doc["values"]) << '\n';
    }
  } else if (command == "horizon-eval") {
    out << join(doc["values"]) << '\n';
  } else if (command == "best-stake") {
    out << "stake " << doc["stake"].dump() << ", value " << display(scalar(doc["value"])) << " (" << scalar(doc["value_decimal"])
        << ")\n";
  } else if (command == "best-strat") {
    out << "capital  stake  value\n";
    for (size_t k = 0; k < doc["stakes"].size(); ++k)
      out << k + 1 << "  " << doc["stakes"][k].dump() << "  " << display(scalar(doc["values"][k])) << " ("
          << scalar(doc["values_decimal"][k]) << ")\n";
  } else if (command == "best-strat-story") {
    for (const auto& s : doc["sections"]) {
      out << "p=" << scalar(s["p"]) << " N=" << s["N"].dump() << " T=" << s["horizon"].dump() << '\n';
      if (s.contains("error")) {
        out << "  error: " << scalar(s["error"]) << '\n';
        continue;
      }
      out << "  stakes " << join(s["stakes"]) << "\n  values " << join(s["values_decimal"]) << '\n';
    }
  } else if (command == "search-bk" || command == "kelly-contest") {
    out << "f = " << scalar(doc["best"]["f"]);
    if (!doc["best"]["c"].is_null()) out << ", c = " << scalar(doc["best"]["c"]);
    out << '\n';
    for (const char* key : {"objective", "win_prob", "exp_duration", "exp_duration_given_win"})
      if (doc.contains(std::string(key) + "_decimal"))
        out << key << " = " << scalar(doc[std::string(key) + "_decimal"]) << '\n';
    out << "constraint_met = " << doc["constraint_met"].dump() << ", evaluations = " << doc["evaluations"].dump() << '\n';
  } else if (command == "simulate") {
    if (doc.contains("trajectory")) {
      for (const auto& r : doc["trajectory"]["rounds"])
        out << "capital " << r["capital"].dump() << "  stake " << r["stake"].dump() << "  " << scalar(r["outcome"]) << '\n';
      out << "exit " << scalar(doc["trajectory"]["exit"]) << " after " << doc["trajectory"]["duration"].dump()
          << " rounds\n";
    }
    const auto& s = doc["summary"];
    out << "games " << s["games"].dump() << ": win rate " << s["win_rate"].dump() << " +- " << s["win_rate_stderr"].dump()
        << ", mean duration " << s["mean_duration"].dump() << " +- " << s["duration_stderr"].dump() << '\n';
  } else {
    out << doc.dump(2) << '\n';
  }
}

json dispatch(const std::string& command, const Flags& f) {
  json r = base_request(f);
  if (command == "best-stake") return api::best_stake(r);
  if (command == "best-strat") {
    r["full"] = f.full;
    return api::best_strat(r);
  }
  if (command == "best-strat-story") {
    json cases = json::array();
    if (!f.cases_file.empty()) {
      const json doc = read_json_file(f.cases_file, "cases-file");
      cases = doc.is_object() && doc.contains("cases") ? doc["cases"] : doc;
    }
    for (const auto& c : f.cases) {
      const json parts = list_of_rationals(c, "case");
      if (parts.size() != 3) throw RequestError("case", "case '" + c + "': expected p,N,T");
      try {
        cases.push_back({{"p", parts[0]}, {"N", std::stol(parts[1].get<std::string>())},
                         {"horizon", std::stol(parts[2].get<std::string>())}});
      } catch (const std::logic_error&) {
        throw RequestError("case", "case '" + c + "': N and T must be integers");
      }
    }
    if (cases.empty()) throw RequestError("case", "best-strat-story needs --case p,N,T or --cases-file");
    r["cases"] = cases;
    return api::best_strat_story(r);
  }
  if (command == "analyze") {
    if (f.measure.empty()) throw RequestError("measure", "--measure is required (winprob|ed|edw|pgf|pgfw)");
    r["measure"] = f.measure;
    if (f.series) r["series"] = *f.series;
    r["normalized"] = f.normalized;
    return api::analyze(r);
  }
  if (command == "horizon-eval") return api::horizon_eval(r);
  if (command == "search-bk" || command == "kelly-contest") {
    r["include_table"] = f.include_table;
    return command == "search-bk" ? api::search_bk(r) : api::kelly_contest(r);
  }
  if (command == "simulate") {
    r.erase("strategy");
    if (!f.strategy_file.empty()) r["policy"] = read_json_file(f.strategy_file, "strategy-file");
    else if (!f.strategy.empty()) r["policy"] = f.strategy;
    else throw RequestError("strategy", "simulate needs --strategy (a family or 'optimal') or --strategy-file");
    if (!f.seed) throw RequestError("seed", "simulate needs --seed");
    r["seed"] = *f.seed;
    if (f.games) r["games"] = *f.games;
    r["degenerate"] = f.degenerate;
    return api::simulate(r);
  }
  throw RequestError("subcommand", "unknown subcommand '" + command + "'");
}

int serve(const Flags& f, std::ostream& err) {
  std::optional<std::filesystem::path> snapshot;
  if (!f.snapshot.empty()) snapshot = f.snapshot;
  AdvisorEngine engine(snapshot);
  AdvisorServer server(engine);
  err << "advisor service listening on " << f.host << ':' << f.port << std::endl;
  if (!server.listen(f.host, f.port)) {
    err << "error: cannot listen on " << f.host << ':' << f.port << '\n';
    return exit_domain;
  }
  return exit_ok;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Deadline-constrained gambler's ruin: exact analysis, optimal stakes and simulation"};
  app.require_subcommand(1);
  Flags f;

  auto game = [&](CLI::App* sub, bool capital, bool horizon) {
    sub->add_option("--p", f.p, "round-win probability, \"a/b\" or decimal")->required();
    sub->add_option("--goal,-N", f.goal, "exit capital N")->required();
    if (capital) sub->add_option("--capital", f.capital, "starting capital")->required();
    if (horizon) sub->add_option("--horizon,-T", f.horizon, "rounds left before the deadline")->required();
  };
  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", f.format, "output format")->check(CLI::IsMember({"json", "csv", "table"}));
    sub->add_option("--mode", f.mode, "numeric backend (auto|exact|decimal)")
        ->check(CLI::IsMember({"auto", "automatic", "exact", "decimal"}));
    sub->add_option("--sig-digits", f.sig_digits, "significant digits of decimal mirrors")->check(CLI::Range(1, 200));
  };
  auto strategy = [&](CLI::App* sub) {
    auto* named = sub->add_option("--strategy", f.strategy, "timid | bold | kelly:f | bk:f:c");
    auto* file = sub->add_option("--strategy-file", f.strategy_file, "strategy JSON {N, p, stakes}");
    named->excludes(file);
  };
  auto grid = [&](CLI::App* sub, bool thresholds) {
    auto* res = sub->add_option("--resolution", f.resolution, "grid step h");
    auto* fr = sub->add_option("--fractions", f.fractions, "comma-separated Kelly fractions");
    if (thresholds) sub->add_option("--thresholds", f.thresholds, "comma-separated thresholds c")->needs(fr);
    res->excludes(fr);
    sub->add_flag("--include-table", f.include_table, "emit every grid point");
    sub->add_option("--threads", f.threads, "worker threads (0 = all cores)");
  };

  auto* best_stake = app.add_subcommand("best-stake", "optimal stake at (capital, horizon)");
  game(best_stake, true, true);
  common(best_stake);

  auto* best_strat = app.add_subcommand("best-strat", "optimal stake table with the full horizon left");
  game(best_strat, false, true);
  common(best_strat);
  best_strat->add_flag("--full", f.full, "emit every horizon row");

  auto* story = app.add_subcommand("best-strat-story", "best-strat over a batch of (p, N, T)");
  story->add_option("--case", f.cases, "p,N,T (repeatable)");
  story->add_option("--cases-file", f.cases_file, "JSON array of {p, N, horizon}");
  common(story);

  auto* analyze = app.add_subcommand("analyze", "unbounded-horizon measures of a fixed strategy");
  game(analyze, false, false);
  common(analyze);
  strategy(analyze);
  analyze->add_option("--measure", f.measure, "winprob | ed | edw | pgf | pgfw")
      ->required()
      ->check(CLI::IsMember({"winprob", "ed", "edw", "pgf", "pgfw"}));
  analyze->add_option("--series", f.series, "Maclaurin coefficients up to this order");
  analyze->add_flag("--normalized", f.normalized, "pgfw divided by the win probability");

  auto* horizon_eval = app.add_subcommand("horizon-eval", "win probability of a fixed strategy within a horizon");
  game(horizon_eval, false, true);
  common(horizon_eval);
  strategy(horizon_eval);

  auto* search_bk = app.add_subcommand("search-bk", "best Breiman-Kelly (f, c) for a deadline");
  game(search_bk, true, true);
  common(search_bk);
  grid(search_bk, true);

  auto* contest = app.add_subcommand("kelly-contest", "fastest Kelly fraction meeting a win-probability floor");
  game(contest, true, false);
  common(contest);
  grid(contest, false);
  contest->add_option("--conf", f.conf, "required win probability")->required();

  auto* simulate = app.add_subcommand("simulate", "seeded play of a strategy or the optimal policy");
  simulate->add_option("--p", f.p, "round-win probability")->required();
  simulate->add_option("--goal,-N", f.goal, "exit capital N")->required();
  simulate->add_option("--capital", f.capital, "starting capital")->required();
  simulate->add_option("--horizon,-T", f.horizon, "deadline in rounds");
  common(simulate);
  strategy(simulate);
  simulate->add_option("--seed", f.seed, "RNG seed")->required();
  simulate->add_option("--games", f.games, "number of games");
  simulate->add_option("--threads", f.threads, "worker threads (0 = all cores)");
  simulate->add_flag("--degenerate", f.degenerate, "allow p = 0 or p = 1");

  auto* serve_cmd = app.add_subcommand("serve", "run the advisory HTTP service");
  serve_cmd->add_option("--port", f.port, "listen port")->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--host", f.host, "listen address");
  serve_cmd->add_option("--snapshot", f.snapshot, "session snapshot file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return exit_usage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const std::string command = chosen->get_name();
  try {
    if (command == "serve") return serve(f, err);
    const json doc = dispatch(command, f);
    if (f.format == "json") out << doc.dump(2) << '\n';
    else if (f.format == "csv") write_csv(out, command, doc);
    else write_table(out, command, doc);
    return exit_ok;
  } catch (const RequestError& e) {
    err << "usage error [" << e.field() << "]: " << e.what() << '\n';
    return exit_usage;
  } catch (const FieldDomainError& e) {
    err << "domain error [" << e.field() << "]: " << e.what() << '\n';
    return exit_domain;
  } catch (const std::domain_error& e) {
    err << "domain error: " << e.what() << '\n';
    return exit_domain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_domain;
  }
}

}  // namespace hurry::cli
