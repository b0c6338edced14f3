#include "mirspec/error.hpp"

namespace mirspec {

const char* status_name(Status s) {
  switch (s) {
    case Status::ok: return "ok";
    case Status::invalid_argument: return "invalid argument";
    case Status::numerical: return "numerical failure";
    case Status::pole: return "pole";
    case Status::check_failed: return "check failed";
    case Status::internal: return "internal error";
  }
  return "unknown";
}

}  // namespace mirspec
