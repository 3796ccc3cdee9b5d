#include <doctest.h>

#include "hurry/advisor.hpp"
#include "hurry/api.hpp"
#include "hurry/server.hpp"
#include "support.hpp"

#include <filesystem>
#include <random>
#include <thread>

using namespace hurry;

namespace {

json session_request(const std::string& p, int goal, int horizon, int capital) {
  return {{"p", p}, {"N", goal}, {"horizon", horizon}, {"capital", capital}};
}

Rational survival(const json& view) { return Rational::parse(view["survival"].get<std::string>()); }

}  // namespace

TEST_CASE("session examples") {
  AdvisorEngine engine;
  const json a = engine.create_session(session_request("3/5", 4, 2, 1));
  CHECK(a["recommendation"]["stake"] == 1);
  CHECK(a["recommendation"]["survival"] == "9/25");
  CHECK(a["status"] == "active");
  CHECK(a["backend"] == "exact");
  CHECK_FALSE(a.contains("warning"));
  const json b = engine.record_outcome(a["id"], {{"outcome", "win"}});
  CHECK(b["capital"] == 2);
  CHECK(b["remaining"] == 1);
  CHECK(b["recommendation"]["stake"] == 2);
  CHECK(b["recommendation"]["survival"] == "3/5");

  const json opts = engine.stake_options(a["id"]);
  REQUIRE(opts["options"].size() == 2);
  CHECK(opts["options"][0]["survival"] == "0/1");
  CHECK(opts["options"][1]["survival"] == "3/5");
  CHECK(opts["options"][1]["optimal"] == true);

  const json fair = engine.create_session(session_request("1/2", 2, 1, 1));
  CHECK(fair["recommendation"]["stake"] == 1);
  CHECK(fair["survival"] == "1/2");
  const json end = engine.record_outcome(fair["id"], {{"outcome", "lose"}});
  CHECK(end["status"] == "loser");
  CHECK(end["terminal"] == true);
  CHECK(end["recommendation"].is_null());
  CHECK(end["survival"] == "0/1");
  CHECK_THROWS_AS(engine.record_outcome(fair["id"], {{"outcome", "win"}}), SessionConflict);
  CHECK_THROWS_AS(engine.stake_options(fair["id"]), SessionConflict);
  CHECK(engine.session_count() == 2);
}

TEST_CASE("session request validation") {
  AdvisorEngine engine;
  CHECK_THROWS_AS(engine.create_session(session_request("3/5", 4, 0, 1)), FieldDomainError);
  CHECK_THROWS_AS(engine.create_session(session_request("3/5", 4, 2, 4)), FieldDomainError);
  CHECK_THROWS_AS(engine.create_session(session_request("1", 4, 2, 1)), FieldDomainError);
  CHECK_THROWS_AS(engine.create_session(session_request("banana", 4, 2, 1)), RequestError);
  CHECK_THROWS_AS(engine.create_session(json{{"p", "1/2"}}), RequestError);
  CHECK_THROWS_AS(engine.get_session("nope"), SessionNotFound);

  const json s = engine.create_session(session_request("2/5", 10, 5, 3));
  CHECK(s["warning"] == "subfair game: p < 1/2");
  CHECK_THROWS_AS(engine.record_outcome(s["id"], json::object()), RequestError);
  CHECK_THROWS_AS(engine.record_outcome(s["id"], {{"outcome", "draw"}}), RequestError);
  try {
    engine.record_outcome(s["id"], {{"outcome", "win"}, {"stake", 4}});
    FAIL("stake 4 at capital 3 accepted");
  } catch (const FieldDomainError& e) {
    CHECK(e.field() == "stake");
    CHECK(std::string(e.what()).find("[1, 3]") != std::string::npos);
  }
  CHECK(engine.get_session(s["id"])["rounds_played"] == 0);
  const json v = engine.record_outcome(s["id"], {{"outcome", "win"}, {"stake", 2}});
  CHECK(v["capital"] == 5);
  CHECK(v["history"][0]["stake"] == 2);
  CHECK(v["history"][0]["capital_after"] == 5);
}

TEST_CASE("survival is a martingale under the recommended stake") {
  AdvisorEngine engine;
  std::mt19937_64 rng(17);
  for (int k = 0; k < 40; ++k) {
    const Rational p = testing::random_probability(rng, 12);
    const int goal = 3 + static_cast<int>(rng() % 14);
    const int horizon = 1 + static_cast<int>(rng() % 12);
    const int capital = 1 + static_cast<int>(rng() % static_cast<unsigned>(goal - 1));
    json view = engine.create_session(session_request(p.str(), goal, horizon, capital));
    const std::string id = view["id"];
    while (!view["terminal"].get<bool>()) {
      const int i = view["capital"];
      const int x = view["recommendation"]["stake"];
      const int t = view["remaining"];
      const auto table = build_table<Rational>(GameSpec(p, goal), t);
      const Rational expected = p * table.value(i + x, t - 1) + (Rational(1) - p) * table.value(i - x, t - 1);
      CHECK(survival(view) == expected);
      const json direct = api::best_stake({{"p", p.str()}, {"N", goal}, {"capital", i}, {"horizon", t}});
      CHECK(direct["stake"] == x);
      CHECK(direct["value"] == view["survival"]);
      view = engine.record_outcome(id, {{"outcome", (rng() & 1) ? "win" : "lose"}});
    }
    const std::string status = view["status"];
    const int c = view["capital"];
    if (status == "winner") CHECK(c == goal);
    if (status == "loser") CHECK(c == 0);
    if (status == "deadline-expired") CHECK(view["remaining"] == 0);
  }
}

TEST_CASE("tables are shared between sessions") {
  AdvisorEngine engine;
  engine.create_session(session_request("3/5", 20, 5, 3));
  engine.create_session(session_request("3/5", 20, 8, 4));
  engine.create_session(session_request("3/5", 20, 3, 5));
  CHECK(engine.cache().size() == 1);
  const json d = engine.create_session({{"p", "3/5"}, {"N", 20}, {"horizon", 5}, {"capital", 3}, {"mode", "decimal"}});
  CHECK(d["backend"] == "decimal");
  CHECK(d["tie_tolerance"] == "1e-25");
  CHECK(engine.cache().size() == 2);
}

TEST_CASE("snapshot restore") {
  const auto path = std::filesystem::temp_directory_path() / "hurry_sessions_test.json";
  std::filesystem::remove(path);
  std::string id;
  json before;
  {
    AdvisorEngine engine(path);
    id = engine.create_session(session_request("11/20", 10, 6, 4))["id"];
    engine.record_outcome(id, {{"outcome", "win"}});
    before = engine.record_outcome(id, {{"outcome", "lose"}, {"stake", 1}});
  }
  AdvisorEngine restored(path);
  CHECK(restored.session_count() == 1);
  CHECK(restored.get_session(id) == before);
  std::filesystem::remove(path);
}

TEST_CASE("HTTP round trip") {
  AdvisorEngine engine;
  AdvisorServer server(engine);
  const int port = server.bind_to_any_port("127.0.0.1");
  REQUIRE(port > 0);
  std::thread worker([&] { server.listen_after_bind(); });
  server.wait_until_ready();
  httplib::Client client("127.0.0.1", port);

  auto health = client.Get("/api/health");
  REQUIRE(health);
  CHECK(health->status == 200);
  CHECK(json::parse(health->body)["status"] == "ok");
  CHECK(health->get_header_value("Access-Control-Allow-Origin") == "*");

  auto created = client.Post("/api/session", session_request("3/5", 4, 2, 1).dump(), "application/json");
  REQUIRE(created);
  CHECK(created->status == 201);
  const json s = json::parse(created->body);
  CHECK(s["recommendation"]["survival"] == "9/25");
  const std::string base = "/api/session/" + s["id"].get<std::string>();

  auto bad = client.Post(base + "/outcome", R"({"outcome": "win", "stake": 2})", "application/json");
  REQUIRE(bad);
  CHECK(bad->status == 422);
  CHECK(json::parse(bad->body)["field"] == "stake");

  auto won = client.Post(base + "/outcome", R"({"outcome": "win"})", "application/json");
  REQUIRE(won);
  CHECK(won->status == 200);
  CHECK(json::parse(won->body)["recommendation"]["survival"] == "3/5");

  auto opts = client.Get(base + "/options");
  REQUIRE(opts);
  CHECK(json::parse(opts->body)["options"].size() == 2);

  auto lost = client.Post(base + "/outcome", R"({"outcome": "lose"})", "application/json");
  CHECK(json::parse(lost->body)["status"] == "loser");
  auto conflict = client.Post(base + "/outcome", R"({"outcome": "win"})", "application/json");
  CHECK(conflict->status == 409);
  CHECK(client.Get("/api/session/missing")->status == 404);
  CHECK(client.Post("/api/session", "{not json", "application/json")->status == 400);
  CHECK(client.Post("/api/session", session_request("3/5", 4, 0, 1).dump(), "application/json")->status == 422);

  auto analysis = client.Post("/api/analyze", R"({"p": "1/3", "N": 3, "strategy": "timid", "measure": "winprob"})",
                              "application/json");
  REQUIRE(analysis);
  CHECK(json::parse(analysis->body)["values"] == json{"1/7", "3/7"});

  auto preflight = client.Options("/api/session");
  REQUIRE(preflight);
  CHECK(preflight->status == 204);
  CHECK_FALSE(preflight->get_header_value("Access-Control-Allow-Methods").empty());

  server.stop();
  worker.join();
}
