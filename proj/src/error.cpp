#include "wsan/error.hpp"

namespace wsan {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidSpec: return "invalid-spec";
    case ErrorKind::kOutOfBounds: return "out-of-bounds";
    case ErrorKind::kUndefinedHeading: return "undefined-heading";
    case ErrorKind::kEncoding: return "encoding";
    case ErrorKind::kKindMismatch: return "kind-mismatch";
    case ErrorKind::kTruncation: return "truncation";
    case ErrorKind::kCorruption: return "corruption";
    case ErrorKind::kRouting: return "routing";
    case ErrorKind::kConfiguration: return "configuration";
    case ErrorKind::kScheduling: return "scheduling";
    case ErrorKind::kWiring: return "wiring";
    case ErrorKind::kValidation: return "validation";
  }
  return "unknown";
}

}  // namespace wsan
