#ifndef HURRY_SERVER_HPP
#define HURRY_SERVER_HPP

#include "hurry/advisor.hpp"

#include <httplib.h>

#include <string>

namespace hurry {

// HTTP facade over an AdvisorEngine plus the stateless analysis handlers.
// Errors come back as {"error", "field", "status"} with 400 (malformed),
// 404 (unknown session), 409 (session ended) or 422 (outside the domain).
class AdvisorServer {
 public:
  explicit AdvisorServer(AdvisorEngine& engine);

  bool listen(const std::string& host, int port);
  // Binds an ephemeral port and returns it; follow with listen_after_bind().
  int bind_to_any_port(const std::string& host);
  bool listen_after_bind();
  void stop();
  bool is_running() const;
  void wait_until_ready() const;

 private:
  AdvisorEngine& engine_;
  httplib::Server http_;
};

}  // namespace hurry

#endif  // HURRY_SERVER_HPP
