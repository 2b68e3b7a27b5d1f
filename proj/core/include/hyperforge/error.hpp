#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hyperforge {

enum class ErrorCode {
  invalid_argument,
  parse_error,
  io_error,
  inconsistent_space,
  weight_table_exhausted,
  prerequisite_missing,
  no_witness,
  search_exhausted,
  degenerate_element,
  certificate_failed,
};

std::string_view to_string(ErrorCode code) noexcept;

// Process exit status used by the CLI for each error code; 1 is reserved for
// "ran fine but some certificate or report failed".
int exit_status(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Caps a requested search budget by HYPERFORGE_BUDGET when that is set.
std::uint64_t effective_budget(std::uint64_t requested);

}  // namespace hyperforge
