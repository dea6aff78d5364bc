#include "ambush/error.hpp"

namespace ambush {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kUsage: return "usage error";
    case ErrorKind::kParse: return "parse error";
    case ErrorKind::kOutOfDomain: return "out of domain";
    case ErrorKind::kDegenerateInput: return "degenerate input";
    case ErrorKind::kConstruction: return "construction error";
    case ErrorKind::kInfeasiblePruning: return "infeasible pruning";
    case ErrorKind::kPlanning: return "planning error";
    case ErrorKind::kLookup: return "lookup error";
    case ErrorKind::kContract: return "contract violation";
    case ErrorKind::kSolver: return "solver failure";
    case ErrorKind::kIterationCap: return "iteration cap exceeded";
  }
  return "error";
}

}  // namespace ambush
