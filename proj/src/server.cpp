#include "hurry/server.hpp"

#include "hurry/api.hpp"

#include <functional>

namespace hurry {

namespace {

void send(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& message, const json& field) {
  send(res, status, {{"error", message}, {"field", field}, {"status", status}});
}

json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  try {
    return json::parse(req.body);
  } catch (const json::parse_error& e) {
    throw RequestError("body", std::string("request body is not valid JSON: ") + e.what());
  }
}

void guarded(httplib::Response& res, const std::function<json()>& fn, int ok_status = 200) {
  try {
    send(res, ok_status, fn());
  } catch (const RequestError& e) {
    send_error(res, 400, e.what(), e.field());
  } catch (const FieldDomainError& e) {
    send_error(res, 422, e.what(), e.field());
  } catch (const SessionNotFound& e) {
    send_error(res, 404, e.what(), "id");
  } catch (const SessionConflict& e) {
    send_error(res, 409, e.what(), "id");
  } catch (const std::domain_error& e) {
    send_error(res, 422, e.what(), nullptr);
  } catch (const json::exception& e) {
    send_error(res, 400, e.what(), nullptr);
  } catch (const std::exception& e) {
    send_error(res, 500, e.what(), nullptr);
  }
}

using Handler = json (*)(const json&);

}  // namespace

AdvisorServer::AdvisorServer(AdvisorEngine& engine) : engine_(engine) {
  http_.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                             {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                             {"Access-Control-Allow-Headers", "Content-Type"}});
  http_.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  http_.Get("/api/health", [this](const httplib::Request&, httplib::Response& res) {
    send(res, 200, {{"status", "ok"}, {"sessions", engine_.session_count()}, {"cached_tables", engine_.cache().size()}});
  });

  http_.Post("/api/session", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { return engine_.create_session(parse_body(req)); }, 201);
  });
  http_.Get(R"(/api/session/([0-9A-Za-z_-]+))", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { return engine_.get_session(req.matches[1]); });
  });
  http_.Post(R"(/api/session/([0-9A-Za-z_-]+)/outcome)", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { return engine_.record_outcome(req.matches[1], parse_body(req)); });
  });
  http_.Get(R"(/api/session/([0-9A-Za-z_-]+)/options)", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { return engine_.stake_options(req.matches[1]); });
  });

  const std::pair<const char*, Handler> analysis[] = {{"/api/analyze", api::analyze},
                                                      {"/api/search/bk", api::search_bk},
                                                      {"/api/kelly-contest", api::kelly_contest},
                                                      {"/api/simulate", api::simulate}};
  for (const auto& [path, handler] : analysis) {
    http_.Post(path, [handler](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] { return handler(parse_body(req)); });
    });
  }
}

bool AdvisorServer::listen(const std::string& host, int port) { return http_.listen(host, port); }
int AdvisorServer::bind_to_any_port(const std::string& host) { return http_.bind_to_any_port(host); }
bool AdvisorServer::listen_after_bind() { return http_.listen_after_bind(); }
void AdvisorServer::stop() { http_.stop(); }
bool AdvisorServer::is_running() const { return http_.is_running(); }
void AdvisorServer::wait_until_ready() const { http_.wait_until_ready(); }

}  // namespace hurry
