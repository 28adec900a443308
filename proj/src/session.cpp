#include "remap/session.hpp"

#include "remap/errors.hpp"
#include "remap/machine_io.hpp"

namespace remap {

const char* to_string(QuestionKind kind) {
  return kind == QuestionKind::preference ? "preference" : "equivalence";
}

const char* to_string(SessionState state) {
  switch (state) {
    case SessionState::running: return "RUNNING";
    case SessionState::waiting_for_answer: return "WAITING_FOR_ANSWER";
    case SessionState::done: return "DONE";
    case SessionState::failed: return "FAILED";
    case SessionState::closed: return "CLOSED";
  }
  return "?";
}

Answer QuestionChannel::ask(PendingQuestion q) {
  std::unique_lock lock(mutex_);
  if (closed_) throw SessionClosed("session closed");
  q.id = next_id_++;
  pending_ = std::move(q);
  answer_.reset();
  cv_.notify_all();
  cv_.wait(lock, [&] { return closed_ || answer_.has_value(); });
  if (!answer_) throw SessionClosed("session closed while waiting for an answer");
  Answer a = std::move(*answer_);
  answer_.reset();
  return a;
}

std::optional<PendingQuestion> QuestionChannel::pending() const {
  std::lock_guard lock(mutex_);
  return pending_;
}

std::optional<PendingQuestion> QuestionChannel::wait_pending(std::chrono::milliseconds timeout) const {
  std::unique_lock lock(mutex_);
  cv_.wait_for(lock, timeout, [&] { return closed_ || pending_.has_value(); });
  return pending_;
}

void QuestionChannel::answer(std::uint64_t question_id, Answer a) {
  std::lock_guard lock(mutex_);
  if (closed_) throw SessionClosed("session closed");
  if (!pending_ || pending_->id != question_id)
    throw WrongQuestionId("question " + std::to_string(question_id) + " is not pending");
  if (pending_->kind != a.kind)
    throw InvalidAnswer(std::string("pending question is a ") + to_string(pending_->kind) + " question");
  pending_.reset();
  answer_ = std::move(a);
  cv_.notify_all();
}

void QuestionChannel::close() {
  std::lock_guard lock(mutex_);
  closed_ = true;
  pending_.reset();
  cv_.notify_all();
}

bool QuestionChannel::closed() const {
  std::lock_guard lock(mutex_);
  return closed_;
}

void QuestionChannel::notify() {
  std::lock_guard lock(mutex_);
  cv_.notify_all();
}

int InteractiveTeacher::preference(const Sequence& s1, const Sequence& s2) {
  if (before_ask_) before_ask_();
  PendingQuestion q;
  q.kind = QuestionKind::preference;
  q.left = s1;
  q.right = s2;
  return channel_.ask(std::move(q)).preference;
}

std::optional<Counterexample> InteractiveTeacher::equivalence(const MooreMachine& hypothesis) {
  if (before_ask_) before_ask_();
  PendingQuestion q;
  q.kind = QuestionKind::equivalence;
  q.hypothesis = hypothesis;
  return channel_.ask(std::move(q)).counterexample;
}

SessionConfig session_config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw BadConfig("session config must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "input_alphabet" && it.key() != "output_alphabet")
      throw BadConfig("unknown field '" + it.key() + "'");
  try {
    std::vector<std::string> labels = j.at("input_alphabet").get<std::vector<std::string>>();
    std::vector<Rational> outs;
    for (const auto& v : j.at("output_alphabet")) {
      if (v.is_string())
        outs.push_back(Rational::parse(v.get<std::string>()));
      else if (v.is_number_integer())
        outs.emplace_back(v.get<std::int64_t>());
      else
        throw BadConfig("output values must be strings or integers");
    }
    if (labels.empty()) throw BadConfig("empty input alphabet");
    if (outs.empty()) throw BadConfig("empty output alphabet");
    return SessionConfig{Alphabet(std::move(labels)), make_output_alphabet(std::move(outs))};
  } catch (const nlohmann::json::exception& e) {
    throw BadConfig(e.what());
  } catch (const std::invalid_argument& e) {
    throw BadConfig(e.what());
  }
}

Session::Session(std::string id, SessionConfig config)
    : id_(std::move(id)),
      config_(std::move(config)),
      teacher_(channel_, [this] { capture(); }),
      learner_(config_.input, config_.output, teacher_) {
  snapshot_ = learner_.snapshot();
  thread_ = std::thread([this] { run(); });
}

Session::~Session() { close(); }

void Session::capture() {
  std::lock_guard lock(mutex_);
  snapshot_ = learner_.snapshot();
  trace_ = learner_.trace();
}

void Session::run() {
  std::optional<MooreMachine> result;
  std::string error;
  try {
    result = learner_.run().machine;
  } catch (const SessionClosed&) {
    error = "closed";
  } catch (const std::exception& e) {
    error = e.what();
  }
  {
    std::lock_guard lock(mutex_);
    snapshot_ = learner_.snapshot();
    trace_ = learner_.trace();
    machine_ = std::move(result);
    error_ = std::move(error);
    finished_ = true;
  }
  channel_.notify();
}

SessionState Session::state() const {
  {
    std::lock_guard lock(mutex_);
    if (finished_) {
      if (machine_) return SessionState::done;
      return error_ == "closed" ? SessionState::closed : SessionState::failed;
    }
  }
  if (channel_.closed()) return SessionState::closed;
  return channel_.pending() ? SessionState::waiting_for_answer : SessionState::running;
}

std::optional<PendingQuestion> Session::pending(std::chrono::milliseconds wait) const {
  if (wait.count() > 0) {
    const auto deadline = std::chrono::steady_clock::now() + wait;
    // Wake periodically so a session that finishes without a new question is
    // noticed before the deadline.
    while (std::chrono::steady_clock::now() < deadline) {
      if (auto q = channel_.wait_pending(std::chrono::milliseconds(20))) return q;
      const auto s = state();
      if (s != SessionState::running) break;
    }
  }
  return channel_.pending();
}

void Session::answer(std::uint64_t question_id, Answer a) {
  {
    std::lock_guard lock(mutex_);
    if (finished_) throw SessionClosed("session has finished");
  }
  channel_.answer(question_id, std::move(a));
}

std::optional<MooreMachine> Session::machine() const {
  std::lock_guard lock(mutex_);
  return machine_;
}

nlohmann::ordered_json Session::state_json() const {
  const SessionState s = state();
  std::lock_guard lock(mutex_);
  auto trace = nlohmann::ordered_json::array();
  for (const auto& e : trace_) trace.push_back(to_json(e));
  nlohmann::ordered_json j{{"id", id_}, {"state", to_string(s)}, {"table", snapshot_}, {"trace", std::move(trace)}};
  if (machine_) j["machine"] = to_json(*machine_);
  if (s == SessionState::failed) j["error"] = error_;
  return j;
}

void Session::close() {
  channel_.close();
  if (thread_.joinable()) thread_.join();
}

SessionManager::~SessionManager() {
  std::map<std::string, std::shared_ptr<Session>> sessions;
  {
    std::lock_guard lock(mutex_);
    sessions.swap(sessions_);
  }
  for (auto& [id, s] : sessions) s->close();
}

std::string SessionManager::start_session(SessionConfig config) {
  if (config.input.size() == 0) throw BadConfig("empty input alphabet");
  if (config.output.empty()) throw BadConfig("empty output alphabet");
  std::lock_guard lock(mutex_);
  std::string id = std::to_string(next_id_++);
  sessions_.emplace(id, std::make_shared<Session>(id, std::move(config)));
  return id;
}

std::shared_ptr<Session> SessionManager::find(const std::string& id) {
  std::lock_guard lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw UnknownSession("no session '" + id + "'");
  return it->second;
}

std::optional<PendingQuestion> SessionManager::get_pending(const std::string& id, std::chrono::milliseconds wait) {
  return find(id)->pending(wait);
}

Answer answer_from_json(const nlohmann::json& answer, QuestionKind kind, const SessionConfig& config) {
  Answer a;
  a.kind = kind;
  if (kind == QuestionKind::preference) {
    if (!answer.is_number_integer()) throw InvalidAnswer("preference answer must be -1, 0 or 1");
    const auto p = answer.get<std::int64_t>();
    if (p < -1 || p > 1) throw InvalidAnswer("preference answer must be -1, 0 or 1, got " + std::to_string(p));
    a.preference = static_cast<int>(p);
    return a;
  }
  if (answer.is_string() && answer.get<std::string>() == "correct") return a;
  if (!answer.is_object() || !answer.contains("sequence") || !answer.contains("value") || answer.size() != 2)
    throw InvalidAnswer("equivalence answer must be \"correct\" or {sequence, value}");
  Counterexample c;
  const auto& seq = answer.at("sequence");
  if (!seq.is_array()) throw InvalidAnswer("counterexample sequence must be an array of symbols");
  for (const auto& sym : seq) {
    if (!sym.is_string()) throw InvalidAnswer("counterexample symbols must be strings");
    auto s = config.input.find(sym.get<std::string>());
    if (!s) throw InvalidAnswer("unknown symbol '" + sym.get<std::string>() + "'");
    c.sequence.push_back(*s);
  }
  const auto& v = answer.at("value");
  try {
    if (v.is_string())
      c.value = Rational::parse(v.get<std::string>());
    else if (v.is_number_integer())
      c.value = Rational(v.get<std::int64_t>());
    else
      throw InvalidAnswer("counterexample value must be a string or integer");
  } catch (const std::invalid_argument& e) {
    throw InvalidAnswer(e.what());
  }
  if (!output_index(config.output, c.value)) throw InvalidAnswer("value " + c.value.str() + " is not an output");
  a.counterexample = std::move(c);
  return a;
}

void SessionManager::post_answer(const std::string& id, const nlohmann::json& body) {
  auto session = find(id);
  if (!body.is_object() || !body.contains("question_id") || !body.contains("kind") || !body.contains("answer"))
    throw InvalidAnswer("answer body needs question_id, kind and answer");
  if (!body.at("question_id").is_number_unsigned() && !body.at("question_id").is_number_integer())
    throw InvalidAnswer("question_id must be an integer");
  const auto& kind_text = body.at("kind");
  QuestionKind kind;
  if (kind_text == "preference")
    kind = QuestionKind::preference;
  else if (kind_text == "equivalence")
    kind = QuestionKind::equivalence;
  else
    throw InvalidAnswer("kind must be preference or equivalence");
  const auto qid = body.at("question_id").get<std::int64_t>();
  if (qid < 0) throw WrongQuestionId("negative question id");
  session->answer(static_cast<std::uint64_t>(qid), answer_from_json(body.at("answer"), kind, session->config()));
}

nlohmann::ordered_json SessionManager::get_state(const std::string& id) { return find(id)->state_json(); }

std::optional<MooreMachine> SessionManager::machine(const std::string& id) { return find(id)->machine(); }

void SessionManager::close(const std::string& id) {
  std::shared_ptr<Session> s;
  {
    std::lock_guard lock(mutex_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) throw UnknownSession("no session '" + id + "'");
    s = it->second;
    sessions_.erase(it);
  }
  s->close();
}

nlohmann::ordered_json to_json(const PendingQuestion& q, const Alphabet& input) {
  nlohmann::ordered_json j{{"id", q.id}, {"kind", to_string(q.kind)}};
  if (q.kind == QuestionKind::preference) {
    j["left"] = input.labels_of(q.left);
    j["right"] = input.labels_of(q.right);
  } else {
    j["hypothesis"] = to_json(*q.hypothesis);
  }
  return j;
}

}  // namespace remap
