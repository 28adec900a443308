#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "remap/session.hpp"

namespace httplib {
class Server;
}

namespace remap {

// Installs the session routes:
//   POST   /sessions                 {input_alphabet, output_alphabet} -> {id, state}
//   GET    /sessions/{id}/pending    [?wait_ms=N] -> {state, question}
//   POST   /sessions/{id}/answer     {question_id, kind, answer}
//   GET    /sessions/{id}/state
//   GET    /sessions/{id}/machine
//   DELETE /sessions/{id}
// Errors are {"error": kind, "message": text} with a 4xx status.
void register_session_routes(httplib::Server& server, SessionManager& sessions);

struct ServeOptions {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::optional<std::filesystem::path> static_dir;
};

// Blocks serving until the process is stopped.
void serve(SessionManager& sessions, const ServeOptions& options);

}  // namespace remap
