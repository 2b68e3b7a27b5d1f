#pragma once

#include <complex>
#include <optional>
#include <string_view>

namespace hyperforge {

// Working precision for log-magnitudes and phases. Weight products such as
// n! at n ~ 10^5 have log-magnitudes near 10^6, so the extra mantissa bits of
// long double keep relative errors of decoded values near 1e-13.
using wide_real = long double;

/// Complex scalar with an extended exponent range.
///
/// Stored in log-polar form: natural log of the modulus and a phase in
/// (-pi, pi]. Zero is an explicit flag (log-modulus -inf, phase 0), so
/// products and coordinatewise intersections produce exact zeros rather than
/// underflowed numbers.
class WideComplex {
 public:
  constexpr WideComplex() noexcept = default;
  WideComplex(double re, double im = 0.0);  // NOLINT: numeric literals read naturally
  explicit WideComplex(std::complex<double> z);
  explicit WideComplex(std::complex<wide_real> z);

  static WideComplex polar_log(wide_real log_mag, wide_real phase);
  static WideComplex one() { return polar_log(0, 0); }

  bool is_zero() const noexcept { return zero_; }
  wide_real log_abs() const noexcept;
  wide_real phase() const noexcept { return phase_; }

  // Decoded values; saturate to inf / 0 outside the double range.
  double abs() const noexcept;
  std::complex<double> to_complex() const noexcept;
  std::complex<wide_real> to_complex_wide() const noexcept;

  WideComplex operator-() const;
  WideComplex conj() const;
  WideComplex inverse() const;
  WideComplex pow(unsigned j) const;
  // Principal m-th root: phase divided by m lands in (-pi/m, pi/m]; 0^{1/m} = 0.
  WideComplex root(unsigned m) const;
  // Multiplies by exp(delta_log + i*delta_phase).
  WideComplex scaled(wide_real delta_log, wide_real delta_phase = 0) const;

  WideComplex& operator*=(const WideComplex& rhs);
  WideComplex& operator/=(const WideComplex& rhs);
  WideComplex& operator+=(const WideComplex& rhs);
  WideComplex& operator-=(const WideComplex& rhs);

  friend WideComplex operator*(WideComplex lhs, const WideComplex& rhs) { return lhs *= rhs; }
  friend WideComplex operator/(WideComplex lhs, const WideComplex& rhs) { return lhs /= rhs; }
  friend WideComplex operator+(WideComplex lhs, const WideComplex& rhs) { return lhs += rhs; }
  friend WideComplex operator-(WideComplex lhs, const WideComplex& rhs) { return lhs -= rhs; }

  // Exact representation equality.
  friend bool operator==(const WideComplex&, const WideComplex&) = default;

 private:
  wide_real log_mag_ = 0;
  wide_real phase_ = 0;
  bool zero_ = true;
};

wide_real normalize_phase(wide_real phase) noexcept;

// |a - b| / max(|a|, |b|), evaluated in rescaled form; 0 when both are zero.
wide_real relative_difference(const WideComplex& a, const WideComplex& b);

/// Max-rescaled accumulation: terms are summed relative to the largest
/// log-modulus seen so far, so sums of numbers like 1e-4000 never underflow.
class WideAccumulator {
 public:
  void add(const WideComplex& z);
  WideComplex value() const;

 private:
  wide_real ref_ = 0;
  std::complex<wide_real> sum_{0, 0};
  bool any_ = false;
};

// log(sum_i exp(x_i)) over a running set of log-values; -inf when empty.
class LogSumExp {
 public:
  void add(wide_real log_value);
  wide_real value() const;

 private:
  wide_real ref_ = 0;
  wide_real sum_ = 0;
  bool any_ = false;
};

// Parses "a", "bi", "a+bi", "a-bi", "i", "-i" (decimal or exponent notation).
std::optional<std::complex<double>> parse_complex(std::string_view text);

}  // namespace hyperforge
