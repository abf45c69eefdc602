#pragma once

#include <stdexcept>
#include <string>

namespace lrprop {

enum class ErrorKind {
  InvalidInput,         // precondition violated by the caller
  UnsupportedRegime,    // parameter range the method is not defined for
  Divergence,           // quantity diverges at the requested point
  Evaluation,           // a user-supplied callable produced a non-finite value
  InternalConsistency,  // an internal cross-check failed (formula bug)
  NoFront,              // front detection found nothing above threshold
  ResourceGuard,        // request exceeds a hard memory/size guard
  Configuration,        // bad CLI/config input
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
  throw Error(kind, msg);
}

}  // namespace lrprop
