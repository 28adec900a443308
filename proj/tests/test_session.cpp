#include <chrono>
#include <thread>

#include "doctest.h"
#include "httplib.h"
#include "remap/automata.hpp"
#include "remap/errors.hpp"
#include "remap/machine_io.hpp"
#include "remap/server.hpp"
#include "remap/session.hpp"
#include "support.hpp"

using namespace remap;
using namespace std::chrono_literals;
using nlohmann::json;

namespace {

struct Transcript {
  std::vector<std::pair<Sequence, Sequence>> preferences;
  std::vector<Sequence> counterexamples;
  std::size_t eq_queries = 0;
};

class RecordingTeacher : public Teacher {
public:
  explicit RecordingTeacher(const MooreMachine& truth) : truth_(truth) {}
  int preference(const Sequence& a, const Sequence& b) override {
    log.preferences.emplace_back(a, b);
    return pref_query(truth_, a, b);
  }
  std::optional<Counterexample> equivalence(const MooreMachine& h) override {
    ++log.eq_queries;
    auto c = equivalence_query_exact(truth_, h);
    if (c) log.counterexamples.push_back(c->sequence);
    return c;
  }
  Transcript log;

private:
  const MooreMachine& truth_;
};

json config_json() { return {{"input_alphabet", {"a", "b"}}, {"output_alphabet", {"0", "1"}}}; }

json exact_answer(const MooreMachine& truth, const PendingQuestion& q, Transcript& log) {
  if (q.kind == QuestionKind::preference) {
    log.preferences.emplace_back(q.left, q.right);
    return {{"question_id", q.id}, {"kind", "preference"}, {"answer", pref_query(truth, q.left, q.right)}};
  }
  ++log.eq_queries;
  auto c = equivalence_query_exact(truth, *q.hypothesis);
  if (!c) return {{"question_id", q.id}, {"kind", "equivalence"}, {"answer", "correct"}};
  log.counterexamples.push_back(c->sequence);
  return {{"question_id", q.id},
          {"kind", "equivalence"},
          {"answer", {{"sequence", truth.input_alphabet().labels_of(c->sequence)}, {"value", c->value.str()}}}};
}

Transcript in_process_transcript(const MooreMachine& truth) {
  RecordingTeacher teacher(truth);
  run_remap(truth.input_alphabet(), truth.output_alphabet(), teacher);
  return teacher.log;
}

}  // namespace

TEST_CASE("first pending question compares ε with a") {
  SessionManager sessions;
  const auto id = sessions.start_session(config_json());
  auto q = sessions.get_pending(id, 2000ms);
  REQUIRE(q);
  CHECK(q->kind == QuestionKind::preference);
  CHECK(q->left == Sequence{});
  CHECK(q->right == Sequence{0});
  CHECK(sessions.get_state(id)["state"] == "WAITING_FOR_ANSWER");
}

TEST_CASE("bad configurations are rejected") {
  SessionManager sessions;
  CHECK_THROWS_AS(sessions.start_session(json{{"input_alphabet", {"a"}}, {"output_alphabet", json::array()}}), BadConfig);
  CHECK_THROWS_AS(sessions.start_session(json{{"input_alphabet", json::array()}, {"output_alphabet", {"0"}}}), BadConfig);
  CHECK_THROWS_AS(sessions.start_session(json{{"output_alphabet", {"0"}}}), BadConfig);
  CHECK_THROWS_AS(sessions.get_pending("nope"), UnknownSession);
}

TEST_CASE("two sessions are independent") {
  SessionManager sessions;
  const auto a = sessions.start_session(config_json());
  const auto b = sessions.start_session(config_json());
  CHECK(a != b);
  auto qa = sessions.get_pending(a, 2000ms);
  REQUIRE(qa);
  sessions.post_answer(a, {{"question_id", qa->id}, {"kind", "preference"}, {"answer", 0}});
  auto qa2 = sessions.get_pending(a, 2000ms);
  auto qb = sessions.get_pending(b, 2000ms);
  REQUIRE(qa2);
  REQUIRE(qb);
  CHECK(qa2->id == qa->id + 1);
  CHECK(qb->id == 1);
}

TEST_CASE("answers are validated") {
  SessionManager sessions;
  const auto id = sessions.start_session(config_json());
  auto q = sessions.get_pending(id, 2000ms);
  REQUIRE(q);
  CHECK_THROWS_AS(sessions.post_answer(id, {{"question_id", q->id}, {"kind", "preference"}, {"answer", 2}}), InvalidAnswer);
  CHECK_THROWS_AS(sessions.post_answer(id, {{"question_id", q->id}, {"kind", "preference"}, {"answer", "left"}}),
                  InvalidAnswer);
  CHECK_THROWS_AS(sessions.post_answer(id, {{"question_id", q->id}, {"kind", "equivalence"}, {"answer", "correct"}}),
                  InvalidAnswer);
  CHECK_THROWS_AS(sessions.post_answer(id, {{"question_id", q->id + 5}, {"kind", "preference"}, {"answer", 0}}),
                  WrongQuestionId);
  // Still the same question after the rejected answers.
  auto again = sessions.get_pending(id);
  REQUIRE(again);
  CHECK(again->id == q->id);

  sessions.post_answer(id, {{"question_id", q->id}, {"kind", "preference"}, {"answer", 0}});
  // Replaying the consumed answer is stale.
  CHECK_THROWS_AS(sessions.post_answer(id, {{"question_id", q->id}, {"kind", "preference"}, {"answer", 0}}),
                  WrongQuestionId);
}

TEST_CASE("closing mid-query surfaces SessionClosed") {
  QuestionChannel channel;
  InteractiveTeacher teacher(channel);
  std::exception_ptr seen;
  std::thread learner([&] {
    try {
      teacher.preference(Sequence{}, Sequence{0});
    } catch (...) {
      seen = std::current_exception();
    }
  });
  REQUIRE(channel.wait_pending(2000ms));
  channel.close();
  learner.join();
  REQUIRE(seen);
  CHECK_THROWS_AS(std::rethrow_exception(seen), SessionClosed);
  CHECK_THROWS_AS(channel.answer(1, Answer{}), SessionClosed);

  SessionManager sessions;
  const auto id = sessions.start_session(config_json());
  REQUIRE(sessions.get_pending(id, 2000ms));
  auto session = sessions.find(id);
  sessions.close(id);
  CHECK(session->state() == SessionState::closed);
  CHECK_THROWS_AS(sessions.get_pending(id), UnknownSession);
}

TEST_CASE("scripted in-process client reproduces the exact-teacher run") {
  const auto truth = testing::astarb();
  SessionManager sessions;
  const auto id = sessions.start_session(config_json());
  Transcript log;
  for (int step = 0; step < 10000; ++step) {
    auto q = sessions.get_pending(id, 2000ms);
    if (!q) break;
    sessions.post_answer(id, exact_answer(truth, *q, log));
  }
  const auto state = sessions.get_state(id);
  CHECK(state["state"] == "DONE");
  auto m = sessions.machine(id);
  REQUIRE(m);
  CHECK(isomorphic(*m, truth));
  const auto expected = in_process_transcript(truth);
  CHECK(log.preferences == expected.preferences);
  CHECK(log.counterexamples == expected.counterexamples);
  CHECK(log.eq_queries == 2);
  CHECK(state["trace"].size() > 0);
  CHECK(state["trace"].back()["kind"] == "eq_query");
}

TEST_CASE("HTTP scripted client") {
  const auto truth = testing::astarb();
  SessionManager sessions;
  httplib::Server server;
  register_session_routes(server, sessions);
  const int port = server.bind_to_any_port("127.0.0.1");
  REQUIRE(port > 0);
  std::thread listener([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  httplib::Client client("127.0.0.1", port);
  client.set_read_timeout(10, 0);

  auto bad = client.Post("/sessions", R"({"input_alphabet":["a","b"],"output_alphabet":[]})", "application/json");
  REQUIRE(bad);
  CHECK(bad->status == 400);
  CHECK(json::parse(bad->body)["error"] == "BadConfig");

  auto created = client.Post("/sessions", config_json().dump(), "application/json");
  REQUIRE(created);
  CHECK(created->status == 201);
  const std::string id = json::parse(created->body)["id"];
  const std::string base = "/sessions/" + id;

  auto not_yet = client.Get(base + "/machine");
  REQUIRE(not_yet);
  CHECK(not_yet->status == 409);

  Transcript log;
  std::optional<std::uint64_t> first_id;
  for (int step = 0; step < 10000; ++step) {
    auto res = client.Get(base + "/pending?wait_ms=2000");
    REQUIRE(res);
    REQUIRE(res->status == 200);
    const json body = json::parse(res->body);
    if (body["question"].is_null()) break;
    const json& jq = body["question"];
    PendingQuestion q;
    q.id = jq["id"];
    if (jq["kind"] == "preference") {
      q.kind = QuestionKind::preference;
      q.left = truth.input_alphabet().parse(jq["left"].get<std::vector<std::string>>());
      q.right = truth.input_alphabet().parse(jq["right"].get<std::vector<std::string>>());
    } else {
      q.kind = QuestionKind::equivalence;
      q.hypothesis = std::get<MooreMachine>(parse_machine(jq["hypothesis"].dump()));
    }
    if (!first_id) {
      first_id = q.id;
      auto invalid = client.Post(base + "/answer",
                                 json{{"question_id", q.id}, {"kind", "preference"}, {"answer", 2}}.dump(),
                                 "application/json");
      REQUIRE(invalid);
      CHECK(invalid->status == 400);
      CHECK(json::parse(invalid->body)["error"] == "InvalidAnswer");
    }
    auto posted = client.Post(base + "/answer", exact_answer(truth, q, log).dump(), "application/json");
    REQUIRE(posted);
    REQUIRE(posted->status == 200);
    if (q.id == *first_id) {
      auto stale = client.Post(base + "/answer",
                               json{{"question_id", q.id}, {"kind", "preference"}, {"answer", 0}}.dump(),
                               "application/json");
      REQUIRE(stale);
      CHECK(stale->status == 409);
      CHECK(json::parse(stale->body)["error"] == "WrongQuestionId");
    }
  }

  auto state = client.Get(base + "/state");
  REQUIRE(state);
  const json st = json::parse(state->body);
  CHECK(st["state"] == "DONE");
  CHECK(st.contains("table"));

  auto machine = client.Get(base + "/machine");
  REQUIRE(machine);
  CHECK(machine->status == 200);
  const auto learned = std::get<MooreMachine>(parse_machine(machine->body));
  CHECK(isomorphic(learned, truth));

  const auto expected = in_process_transcript(truth);
  CHECK(log.preferences == expected.preferences);
  CHECK(log.counterexamples == expected.counterexamples);
  CHECK(log.eq_queries == expected.eq_queries);

  auto closed = client.Delete(base);
  REQUIRE(closed);
  CHECK(closed->status == 200);
  auto gone = client.Get(base + "/state");
  REQUIRE(gone);
  CHECK(gone->status == 404);

  server.stop();
  listener.join();
}
