#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "hyperforge/wide_complex.hpp"

namespace hyperforge {

/// Outcome of one finitely checkable inequality "value < bound".
/// Both sides are kept as natural logs so tiny values stay comparable.
struct Certificate {
  bool pass = true;
  wide_real log_value = -std::numeric_limits<wide_real>::infinity();
  wide_real log_bound = 0;
  std::string detail;

  static Certificate strict_less(wide_real log_value, wide_real log_bound, std::string detail = {}) {
    Certificate c;
    c.log_value = log_value;
    c.log_bound = log_bound;
    c.pass = log_value < log_bound;
    c.detail = std::move(detail);
    return c;
  }

  double value() const { return decode(log_value); }
  double bound() const { return decode(log_bound); }

  // Combines two certificates keeping the one with the larger margin ratio.
  void absorb(const Certificate& other) {
    const bool take = (!other.pass && pass) ||
                      (other.pass == pass && other.log_value - other.log_bound > log_value - log_bound);
    if (take) *this = other;
  }

  static double decode(wide_real l) {
    if (std::isinf(l) && l < 0) return 0.0;
    return static_cast<double>(std::exp(l));
  }
};

struct CheckResult {
  bool pass = true;
  std::string detail;

  void fail(std::string why) {
    if (pass) detail = std::move(why);
    pass = false;
  }
};

}  // namespace hyperforge
