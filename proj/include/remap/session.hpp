#pragma once

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>

#include "json.hpp"
#include "remap/learner.hpp"
#include "remap/teacher.hpp"

namespace remap {

enum class QuestionKind { preference, equivalence };
const char* to_string(QuestionKind kind);

struct PendingQuestion {
  std::uint64_t id = 0;
  QuestionKind kind = QuestionKind::preference;
  Sequence left;                          // preference
  Sequence right;                         // preference
  std::optional<MooreMachine> hypothesis;  // equivalence
};

struct Answer {
  QuestionKind kind = QuestionKind::preference;
  int preference = 0;
  std::optional<Counterexample> counterexample;  // equivalence; nullopt = correct
};

// Blocking hand-off between a learner thread and outside clients. At most one
// question is pending; ids increase and are never reused.
class QuestionChannel {
public:
  // Learner side: publishes `q` (its id is assigned here) and blocks until
  // answered. Throws SessionClosed.
  Answer ask(PendingQuestion q);

  std::optional<PendingQuestion> pending() const;
  // Waits until a question is pending, the channel closes, or the timeout
  // elapses; also wakes on notify().
  std::optional<PendingQuestion> wait_pending(std::chrono::milliseconds timeout) const;
  // Client side. Throws SessionClosed, WrongQuestionId (no such pending id) or
  // InvalidAnswer (kind mismatch).
  void answer(std::uint64_t question_id, Answer a);
  void close();
  bool closed() const;
  void notify();

private:
  mutable std::mutex mutex_;
  mutable std::condition_variable cv_;
  std::optional<PendingQuestion> pending_;
  std::optional<Answer> answer_;
  std::uint64_t next_id_ = 1;
  bool closed_ = false;
};

// Teacher whose answers come from a QuestionChannel. `before_ask` runs on the
// learner thread right before each question is published.
class InteractiveTeacher : public Teacher {
public:
  InteractiveTeacher(QuestionChannel& channel, std::function<void()> before_ask = {})
      : channel_(channel), before_ask_(std::move(before_ask)) {}
  int preference(const Sequence& s1, const Sequence& s2) override;
  std::optional<Counterexample> equivalence(const MooreMachine& hypothesis) override;

private:
  QuestionChannel& channel_;
  std::function<void()> before_ask_;
};

enum class SessionState { running, waiting_for_answer, done, failed, closed };
const char* to_string(SessionState state);

struct SessionConfig {
  Alphabet input;
  OutputAlphabet output;
};

// Parses {"input_alphabet": [...], "output_alphabet": [...]}. Throws BadConfig.
SessionConfig session_config_from_json(const nlohmann::json& j);

// A learner running on its own thread against an InteractiveTeacher.
class Session {
public:
  Session(std::string id, SessionConfig config);
  ~Session();
  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  const std::string& id() const noexcept { return id_; }
  const SessionConfig& config() const noexcept { return config_; }
  SessionState state() const;
  std::optional<PendingQuestion> pending(std::chrono::milliseconds wait = std::chrono::milliseconds(0)) const;
  void answer(std::uint64_t question_id, Answer a);
  std::optional<MooreMachine> machine() const;
  nlohmann::ordered_json state_json() const;
  void close();

private:
  void run();
  void capture();

  std::string id_;
  SessionConfig config_;
  QuestionChannel channel_;
  InteractiveTeacher teacher_;
  RemapLearner learner_;

  mutable std::mutex mutex_;
  bool finished_ = false;
  std::optional<MooreMachine> machine_;
  std::string error_;
  nlohmann::ordered_json snapshot_;
  TerminationTrace trace_;
  std::thread thread_;
};

// Owns all live sessions. Thread safe.
class SessionManager {
public:
  ~SessionManager();

  // Throws BadConfig.
  std::string start_session(SessionConfig config);
  std::string start_session(const nlohmann::json& config) { return start_session(session_config_from_json(config)); }

  std::optional<PendingQuestion> get_pending(const std::string& id,
                                             std::chrono::milliseconds wait = std::chrono::milliseconds(0));
  // Validates a wire answer {question_id, kind, answer} and hands it to the
  // learner. Throws UnknownSession, InvalidAnswer, WrongQuestionId, SessionClosed.
  void post_answer(const std::string& id, const nlohmann::json& body);
  nlohmann::ordered_json get_state(const std::string& id);
  std::optional<MooreMachine> machine(const std::string& id);
  void close(const std::string& id);

  std::shared_ptr<Session> find(const std::string& id);

private:
  std::mutex mutex_;
  std::uint64_t next_id_ = 1;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
};

nlohmann::ordered_json to_json(const PendingQuestion& q, const Alphabet& input);
// Decodes a wire answer against a session's alphabets. Throws InvalidAnswer.
Answer answer_from_json(const nlohmann::json& answer, QuestionKind kind, const SessionConfig& config);

}  // namespace remap
