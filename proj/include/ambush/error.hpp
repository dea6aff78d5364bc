#pragma once

#include <stdexcept>
#include <string>

namespace ambush {

enum class ErrorKind {
  kUsage,
  kParse,
  kOutOfDomain,
  kDegenerateInput,
  kConstruction,
  kInfeasiblePruning,
  kPlanning,
  kLookup,
  kContract,
  kSolver,
  kIterationCap,
};

const char* to_string(ErrorKind kind);

// Single exception type for the library; callers branch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ambush
