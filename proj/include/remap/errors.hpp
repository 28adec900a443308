#pragma once

#include <stdexcept>
#include <string>

namespace remap {

// Base of every error the library raises. `kind()` is the stable name used in
// CLI diagnostics and HTTP error bodies.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

private:
  std::string kind_;
};

#define REMAP_DEFINE_ERROR(Name)                                        \
  class Name : public Error {                                           \
  public:                                                               \
    explicit Name(const std::string& what) : Error(#Name, what) {}      \
  }

// automata
REMAP_DEFINE_ERROR(UnknownSymbol);
REMAP_DEFINE_ERROR(IncompleteMachine);
REMAP_DEFINE_ERROR(UnsupportedPattern);
REMAP_DEFINE_ERROR(AlphabetMismatch);
REMAP_DEFINE_ERROR(BadRegex);
REMAP_DEFINE_ERROR(BadGuard);
REMAP_DEFINE_ERROR(BadMachineFile);

// table / constraints / solver
REMAP_DEFINE_ERROR(UnknownPrefix);
REMAP_DEFINE_ERROR(NotUnified);
REMAP_DEFINE_ERROR(ValueConflict);
REMAP_DEFINE_ERROR(CyclicOrder);
REMAP_DEFINE_ERROR(Unsatisfiable);

// learner / teacher / session
REMAP_DEFINE_ERROR(InconsistentTeacher);
REMAP_DEFINE_ERROR(SessionClosed);
REMAP_DEFINE_ERROR(InvalidAnswer);
REMAP_DEFINE_ERROR(WrongQuestionId);
REMAP_DEFINE_ERROR(UnknownSession);
REMAP_DEFINE_ERROR(BadConfig);

#undef REMAP_DEFINE_ERROR

}  // namespace remap
