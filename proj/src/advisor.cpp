#include "hurry/advisor.hpp"

#include "hurry/api.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

namespace hurry {

std::string to_string(SessionStatus status) {
  switch (status) {
    case SessionStatus::active: return "active";
    case SessionStatus::winner: return "winner";
    case SessionStatus::loser: return "loser";
    default: return "deadline-expired";
  }
}

std::shared_ptr<const AnyHorizonTable> TableCache::get(const GameSpec& spec, int horizon, Backend backend) {
  const Key key{spec.p.str(), spec.goal, backend};
  {
    std::shared_lock lock(mutex_);
    if (auto it = tables_.find(key); it != tables_.end()) {
      const int have = std::visit([](const auto& t) { return t.horizon; }, *it->second);
      if (have >= horizon) return it->second;
    }
  }
  std::unique_lock lock(mutex_);
  auto& slot = tables_[key];
  int ceiling = horizon;
  if (slot) {
    const int have = std::visit([](const auto& t) { return t.horizon; }, *slot);
    if (have >= horizon) return slot;
    ceiling = std::max(ceiling, have);
  }
  const NumericMode mode = backend == Backend::exact ? NumericMode::exact : NumericMode::decimal;
  slot = std::make_shared<const AnyHorizonTable>(build_table_any(spec, ceiling, mode));
  return slot;
}

size_t TableCache::size() const {
  std::shared_lock lock(mutex_);
  return tables_.size();
}

SessionStatus AdvisorEngine::Session::status() const {
  if (capital >= spec.goal) return SessionStatus::winner;
  if (capital <= 0) return SessionStatus::loser;
  if (remaining() <= 0) return SessionStatus::deadline_expired;
  return SessionStatus::active;
}

AdvisorEngine::AdvisorEngine(std::optional<std::filesystem::path> snapshot) : snapshot_path_(std::move(snapshot)) {
  std::random_device rd;
  id_state_ = (static_cast<std::uint64_t>(rd()) << 32) ^ rd() ^
              static_cast<std::uint64_t>(std::chrono::steady_clock::now().time_since_epoch().count());
  if (snapshot_path_) restore();
}

std::string AdvisorEngine::new_id() {
  std::lock_guard lock(id_mutex_);
  std::mt19937_64 rng(++id_state_);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(rng()));
  return buf;
}

std::shared_ptr<AdvisorEngine::Session> AdvisorEngine::find(const std::string& id) const {
  std::shared_lock lock(sessions_mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw SessionNotFound("no session with id '" + id + "'");
  return it->second;
}

size_t AdvisorEngine::session_count() const {
  std::shared_lock lock(sessions_mutex_);
  return sessions_.size();
}

json AdvisorEngine::view(const Session& s) const {
  const int remaining = s.remaining();
  const SessionStatus status = s.status();
  json out = {{"id", s.id},
              {"p", s.spec.p.str()},
              {"N", s.spec.goal},
              {"horizon", s.horizon},
              {"remaining", remaining},
              {"capital", s.capital},
              {"rounds_played", s.rounds_played},
              {"status", to_string(status)},
              {"terminal", status != SessionStatus::active},
              {"backend", to_string(s.backend)},
              {"tie_tolerance", s.backend == Backend::exact ? "0" : "1e-25"}};
  if (s.spec.p < rat(1, 2)) out["warning"] = "subfair game: p < 1/2";
  std::visit(
      [&](const auto& table) {
        const auto& survival = table.value(s.capital, remaining);
        out["survival"] = value_string(survival);
        out["survival_decimal"] = decimal_string(survival, 10);
        if (status == SessionStatus::active) {
          out["recommendation"] = {{"stake", table.best_stake(s.capital, remaining)},
                                   {"survival", value_string(survival)},
                                   {"survival_decimal", decimal_string(survival, 10)}};
        } else {
          out["recommendation"] = nullptr;
        }
      },
      *s.table);
  json history = json::array();
  int capital = 0;
  for (size_t k = 0; k < s.history.size(); ++k) {
    const auto& r = s.history[k];
    capital = r.capital + (r.won ? r.stake : -r.stake);
    history.push_back({{"round", k + 1},
                       {"capital", r.capital},
                       {"stake", r.stake},
                       {"recommended_stake", r.recommended_stake},
                       {"outcome", r.won ? "win" : "lose"},
                       {"capital_after", capital}});
  }
  out["history"] = history;
  return out;
}

json AdvisorEngine::create_session(const json& request) {
  const GameSpec spec = api::parse_spec(request);
  const int horizon = api::parse_horizon(request);
  const int capital = api::parse_capital(request, spec);
  const NumericMode mode = api::parse_mode(request);

  auto s = std::make_shared<Session>(spec);
  s->horizon = horizon;
  s->capital = capital;
  s->mode = mode;
  s->backend = choose_backend(spec, horizon, mode);
  s->table = cache_.get(spec, horizon, s->backend);
  s->id = new_id();
  {
    std::unique_lock lock(sessions_mutex_);
    while (sessions_.count(s->id)) s->id = new_id();
    sessions_[s->id] = s;
  }
  std::lock_guard lock(s->mutex);
  persist(*s);
  return view(*s);
}

json AdvisorEngine::get_session(const std::string& id) const {
  const auto s = find(id);
  std::lock_guard lock(s->mutex);
  return view(*s);
}

json AdvisorEngine::record_outcome(const std::string& id, const json& request) {
  const auto s = find(id);
  std::lock_guard lock(s->mutex);
  if (s->status() != SessionStatus::active)
    throw SessionConflict("session '" + id + "' has ended (" + to_string(s->status()) + ")");

  if (!request.is_object() || !request.contains("outcome") || !request["outcome"].is_string())
    throw RequestError("outcome", "missing required field 'outcome' (win|lose)");
  const std::string outcome = request["outcome"].get<std::string>();
  if (outcome != "win" && outcome != "lose")
    throw RequestError("outcome", "outcome must be 'win' or 'lose', got '" + outcome + "'");

  const int recommended = std::visit([&](const auto& t) { return t.best_stake(s->capital, s->remaining()); }, *s->table);
  int stake = recommended;
  if (request.contains("stake") && !request["stake"].is_null()) {
    if (!request["stake"].is_number_integer()) throw RequestError("stake", "stake: expected an integer");
    const long x = request["stake"].get<long>();
    const int bound = s->spec.max_stake(s->capital);
    if (x < 1 || x > bound)
      throw FieldDomainError("stake", "stake " + std::to_string(x) + " is not admissible at capital " +
                                          std::to_string(s->capital) + ": must lie in [1, " + std::to_string(bound) +
                                          "]");
    stake = static_cast<int>(x);
  }
  const bool won = outcome == "win";
  s->history.push_back({s->capital, stake, recommended, won});
  s->capital += won ? stake : -stake;
  ++s->rounds_played;
  persist(*s);
  return view(*s);
}

json AdvisorEngine::stake_options(const std::string& id) const {
  const auto s = find(id);
  std::lock_guard lock(s->mutex);
  if (s->status() != SessionStatus::active)
    throw SessionConflict("session '" + id + "' has ended (" + to_string(s->status()) + ")");
  json out = {{"id", s->id}, {"capital", s->capital}, {"remaining", s->remaining()}};
  json options = json::array();
  std::visit(
      [&](const auto& table) {
        for (const auto& o : hurry::stake_options(table, s->capital, s->remaining()))
          options.push_back({{"stake", o.stake},
                             {"survival", value_string(o.value)},
                             {"survival_decimal", decimal_string(o.value, 10)},
                             {"optimal", o.optimal}});
        out["survival"] = value_string(table.value(s->capital, s->remaining()));
        out["recommended_stake"] = table.best_stake(s->capital, s->remaining());
      },
      *s->table);
  out["options"] = options;
  return out;
}

json AdvisorEngine::snapshot_entry(const Session& s) const {
  json history = json::array();
  for (const auto& r : s.history)
    history.push_back({{"capital", r.capital}, {"stake", r.stake}, {"recommended_stake", r.recommended_stake}, {"won", r.won}});
  return {{"p", s.spec.p.str()},
          {"N", s.spec.goal},
          {"horizon", s.horizon},
          {"capital", s.capital},
          {"rounds_played", s.rounds_played},
          {"mode", to_string(s.mode)},
          {"history", history}};
}

void AdvisorEngine::persist(const Session& s) {
  if (!snapshot_path_) return;
  std::lock_guard lock(persist_mutex_);
  snapshot_doc_[s.id] = snapshot_entry(s);
  const auto tmp = snapshot_path_->string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write session snapshot " + tmp);
    out << json{{"sessions", snapshot_doc_}}.dump(2) << '\n';
  }
  std::filesystem::rename(tmp, *snapshot_path_);
}

void AdvisorEngine::restore() {
  std::ifstream in(*snapshot_path_);
  if (!in) return;
  const json doc = json::parse(in);
  if (!doc.contains("sessions")) return;
  for (const auto& [id, e] : doc["sessions"].items()) {
    auto s = std::make_shared<Session>(GameSpec(Rational::parse(e.at("p").get<std::string>()), e.at("N").get<int>()));
    s->id = id;
    s->horizon = e.at("horizon").get<int>();
    s->capital = e.at("capital").get<int>();
    s->rounds_played = e.at("rounds_played").get<int>();
    s->mode = parse_numeric_mode(e.at("mode").get<std::string>());
    for (const auto& r : e.at("history"))
      s->history.push_back({r.at("capital").get<int>(), r.at("stake").get<int>(), r.at("recommended_stake").get<int>(),
                            r.at("won").get<bool>()});
    s->backend = choose_backend(s->spec, s->horizon, s->mode);
    s->table = cache_.get(s->spec, s->horizon, s->backend);
    sessions_[id] = s;
  }
  snapshot_doc_ = doc["sessions"];
}

}  // namespace hurry
