#ifndef HURRY_ADVISOR_HPP
#define HURRY_ADVISOR_HPP

#include "hurry/horizon_dp.hpp"
#include "hurry/io.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace hurry {

class SessionNotFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Mutation of a session that has already ended.
class SessionConflict : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SessionStatus { active, winner, loser, deadline_expired };
std::string to_string(SessionStatus status);

struct SessionRound {
  int capital = 0;
  int stake = 0;
  int recommended_stake = 0;
  bool won = false;
};

// Horizon tables shared between sessions, keyed by (p, N, backend). A request
// for a longer horizon than the cached one rebuilds the entry at that ceiling.
class TableCache {
 public:
  std::shared_ptr<const AnyHorizonTable> get(const GameSpec& spec, int horizon, Backend backend);
  size_t size() const;

 private:
  using Key = std::tuple<std::string, int, Backend>;
  mutable std::shared_mutex mutex_;
  std::map<Key, std::shared_ptr<const AnyHorizonTable>> tables_;
};

// Live advisory sessions for a player racing a deadline.
class AdvisorEngine {
 public:
  // With a snapshot path, sessions are restored from it and rewritten after
  // every mutation.
  explicit AdvisorEngine(std::optional<std::filesystem::path> snapshot = std::nullopt);

  // {"p", "N", "horizon", "capital", optional "mode"} -> session view.
  json create_session(const json& request);
  json get_session(const std::string& id) const;
  // {"outcome": "win"|"lose", optional "stake"} -> session view.
  json record_outcome(const std::string& id, const json& request);
  json stake_options(const std::string& id) const;

  size_t session_count() const;
  const TableCache& cache() const { return cache_; }

 private:
  struct Session {
    explicit Session(GameSpec game) : spec(std::move(game)) {}

    std::string id;
    GameSpec spec;
    int horizon = 0;
    int capital = 0;
    int rounds_played = 0;
    NumericMode mode = NumericMode::automatic;
    Backend backend = Backend::exact;
    std::vector<SessionRound> history;
    std::shared_ptr<const AnyHorizonTable> table;
    mutable std::mutex mutex;

    int remaining() const { return horizon - rounds_played; }
    SessionStatus status() const;
  };

  std::shared_ptr<Session> find(const std::string& id) const;
  json view(const Session& s) const;
  json snapshot_entry(const Session& s) const;
  void persist(const Session& s);
  void restore();
  std::string new_id();

  TableCache cache_;
  mutable std::shared_mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::optional<std::filesystem::path> snapshot_path_;
  std::mutex persist_mutex_;
  json snapshot_doc_ = json::object();
  std::mutex id_mutex_;
  std::uint64_t id_state_;
};

}  // namespace hurry

#endif  // HURRY_ADVISOR_HPP
