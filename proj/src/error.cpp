#include "rsq/error.hpp"

namespace rsq {

const char* status_name(Status s) noexcept {
  switch (s) {
    case Status::ok: return "ok";
    case Status::domain: return "domain";
    case Status::pole: return "pole";
    case Status::overflow: return "overflow";
    case Status::strip: return "strip";
    case Status::budget: return "budget";
    case Status::non_finite: return "non_finite";
    case Status::divergence: return "divergence";
    case Status::continuation: return "continuation";
    case Status::coincident: return "coincident";
    case Status::unknown_check: return "unknown_check";
    case Status::config: return "config";
    case Status::parse: return "parse";
    case Status::io: return "io";
  }
  return "unknown";
}

}  // namespace rsq
