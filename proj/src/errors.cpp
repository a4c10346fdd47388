#include "zeno/errors.hpp"

namespace zeno {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::parse: return "parse";
    case ErrorCode::dimension: return "dimension";
    case ErrorCode::capacity: return "capacity";
    case ErrorCode::invalid_code: return "invalid_code";
    case ErrorCode::rank: return "rank";
    case ErrorCode::phase: return "phase";
    case ErrorCode::membership: return "membership";
    case ErrorCode::assumption_violation: return "assumption_violation";
    case ErrorCode::domain: return "domain";
    case ErrorCode::model: return "model";
    case ErrorCode::precondition: return "precondition";
    case ErrorCode::degenerate: return "degenerate";
    case ErrorCode::schema: return "schema";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

}  // namespace zeno
