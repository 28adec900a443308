#include "remap/server.hpp"

#include <algorithm>

#include "httplib.h"
#include "remap/errors.hpp"
#include "remap/machine_io.hpp"

namespace remap {

namespace {

int status_for(const Error& e) {
  const auto& k = e.kind();
  if (k == "UnknownSession") return 404;
  if (k == "WrongQuestionId") return 409;
  if (k == "SessionClosed") return 410;
  return 400;
}

void send_json(httplib::Response& res, const nlohmann::ordered_json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& kind, const std::string& message) {
  send_json(res, {{"error", kind}, {"message", message}}, status);
}

// Runs `fn`, mapping library errors to JSON error responses.
template <class Fn>
void guarded(httplib::Response& res, Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    send_error(res, status_for(e), e.kind(), e.what());
  } catch (const nlohmann::json::exception& e) {
    send_error(res, 400, "BadRequest", e.what());
  } catch (const std::invalid_argument& e) {
    send_error(res, 400, "BadRequest", e.what());
  } catch (const std::out_of_range& e) {
    send_error(res, 400, "BadRequest", e.what());
  }
}

}  // namespace

void register_session_routes(httplib::Server& server, SessionManager& sessions) {
  server.Post("/sessions", [&](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      nlohmann::json body;
      try {
        body = nlohmann::json::parse(req.body);
      } catch (const nlohmann::json::parse_error& e) {
        throw BadConfig(e.what());
      }
      const std::string id = sessions.start_session(body);
      send_json(res, {{"id", id}, {"state", to_string(sessions.find(id)->state())}}, 201);
    });
  });

  server.Get(R"(/sessions/([^/]+)/pending)", [&](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const std::string id = req.matches[1];
      long wait_ms = 0;
      if (req.has_param("wait_ms")) wait_ms = std::clamp(std::stol(req.get_param_value("wait_ms")), 0L, 30000L);
      auto session = sessions.find(id);
      auto q = session->pending(std::chrono::milliseconds(wait_ms));
      nlohmann::ordered_json j{{"state", to_string(session->state())}};
      j["question"] = q ? to_json(*q, session->config().input) : nlohmann::ordered_json(nullptr);
      send_json(res, j);
    });
  });

  server.Post(R"(/sessions/([^/]+)/answer)", [&](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const std::string id = req.matches[1];
      nlohmann::json body;
      try {
        body = nlohmann::json::parse(req.body);
      } catch (const nlohmann::json::parse_error& e) {
        throw InvalidAnswer(e.what());
      }
      sessions.post_answer(id, body);
      send_json(res, {{"accepted", true}});
    });
  });

  server.Get(R"(/sessions/([^/]+)/state)", [&](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { send_json(res, sessions.get_state(req.matches[1])); });
  });

  server.Get(R"(/sessions/([^/]+)/machine)", [&](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      auto m = sessions.machine(req.matches[1]);
      if (!m) return send_error(res, 409, "NotDone", "session has no final machine yet");
      res.status = 200;
      res.set_content(dump_machine(*m), "application/json");
    });
  });

  server.Delete(R"(/sessions/([^/]+))", [&](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      sessions.close(req.matches[1]);
      send_json(res, {{"closed", true}});
    });
  });
}

void serve(SessionManager& sessions, const ServeOptions& options) {
  httplib::Server server;
  register_session_routes(server, sessions);
  if (options.static_dir && !server.set_mount_point("/", options.static_dir->string()))
    throw BadConfig("static directory " + options.static_dir->string() + " does not exist");
  if (!server.listen(options.host, options.port))
    throw std::runtime_error("cannot listen on " + options.host + ":" + std::to_string(options.port));
}

}  // namespace remap
