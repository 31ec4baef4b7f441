#include "horolab/error.hpp"

namespace horolab {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::domain: return "domain";
    case ErrorCode::degenerate_node: return "degenerate node";
    case ErrorCode::convergence: return "convergence";
    case ErrorCode::capacity: return "capacity";
    case ErrorCode::numeric_degeneracy: return "numeric degeneracy";
    case ErrorCode::incomplete_orbit: return "incomplete orbit";
    case ErrorCode::node_choice: return "node choice";
    case ErrorCode::config: return "config";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

void raise(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace horolab
