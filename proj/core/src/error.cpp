#include "hyperforge/error.hpp"

#include <cstdlib>
#include <string>

namespace hyperforge {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::parse_error: return "parse_error";
    case ErrorCode::io_error: return "io_error";
    case ErrorCode::inconsistent_space: return "inconsistent_space";
    case ErrorCode::weight_table_exhausted: return "weight_table_exhausted";
    case ErrorCode::prerequisite_missing: return "prerequisite_missing";
    case ErrorCode::no_witness: return "no_witness";
    case ErrorCode::search_exhausted: return "search_exhausted";
    case ErrorCode::degenerate_element: return "degenerate_element";
    case ErrorCode::certificate_failed: return "certificate_failed";
  }
  return "unknown";
}

int exit_status(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::certificate_failed: return 1;
    case ErrorCode::invalid_argument: return 2;
    case ErrorCode::parse_error: return 3;
    case ErrorCode::io_error: return 4;
    case ErrorCode::inconsistent_space: return 5;
    case ErrorCode::weight_table_exhausted: return 6;
    case ErrorCode::prerequisite_missing: return 7;
    case ErrorCode::no_witness: return 8;
    case ErrorCode::search_exhausted: return 9;
    case ErrorCode::degenerate_element: return 10;
  }
  return 70;
}

std::uint64_t effective_budget(std::uint64_t requested) {
  const char* env = std::getenv("HYPERFORGE_BUDGET");
  if (env == nullptr || *env == '\0') return requested;
  char* end = nullptr;
  const unsigned long long cap = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0') {
    throw Error(ErrorCode::invalid_argument,
                std::string("HYPERFORGE_BUDGET is not an unsigned integer: ") + env);
  }
  return cap < requested ? cap : requested;
}

}  // namespace hyperforge
