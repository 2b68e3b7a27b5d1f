#include "hyperforge/wide_complex.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <string>

#include "hyperforge/error.hpp"

namespace hyperforge {

namespace {

constexpr wide_real kPi = std::numbers::pi_v<wide_real>;
constexpr wide_real kTwoPi = 2 * std::numbers::pi_v<wide_real>;

// r e^{i phase}, exact on the real and imaginary axes so that values such as
// 2 and -2 cancel to an exact zero.
std::complex<wide_real> axis_exact_polar(wide_real r, wide_real phase) {
  if (phase == 0) return {r, 0};
  if (phase == kPi || phase == -kPi) return {-r, 0};
  if (phase == kPi / 2) return {0, r};
  if (phase == -kPi / 2) return {0, -r};
  return std::polar(r, phase);
}

}  // namespace

wide_real normalize_phase(wide_real phase) noexcept {
  if (phase > -kPi && phase <= kPi) return phase;
  wide_real r = std::remainder(phase, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  if (r > kPi) r -= kTwoPi;
  return r;
}

WideComplex::WideComplex(double re, double im)
    : WideComplex(std::complex<wide_real>(re, im)) {}

WideComplex::WideComplex(std::complex<double> z)
    : WideComplex(std::complex<wide_real>(z.real(), z.imag())) {}

WideComplex::WideComplex(std::complex<wide_real> z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw Error(ErrorCode::invalid_argument, "non-finite complex value");
  }
  if (z.real() == 0 && z.imag() == 0) return;
  log_mag_ = std::log(std::abs(z));
  phase_ = normalize_phase(std::arg(z));
  zero_ = false;
}

WideComplex WideComplex::polar_log(wide_real log_mag, wide_real phase) {
  WideComplex z;
  if (std::isinf(log_mag) && log_mag < 0) return z;
  if (!std::isfinite(log_mag) || !std::isfinite(phase)) {
    throw Error(ErrorCode::invalid_argument, "non-finite log-polar value");
  }
  z.log_mag_ = log_mag;
  z.phase_ = normalize_phase(phase);
  z.zero_ = false;
  return z;
}

wide_real WideComplex::log_abs() const noexcept {
  return zero_ ? -std::numeric_limits<wide_real>::infinity() : log_mag_;
}

double WideComplex::abs() const noexcept {
  if (zero_) return 0.0;
  return static_cast<double>(std::exp(log_mag_));
}

std::complex<wide_real> WideComplex::to_complex_wide() const noexcept {
  if (zero_) return {0, 0};
  return axis_exact_polar(std::exp(log_mag_), phase_);
}

std::complex<double> WideComplex::to_complex() const noexcept {
  if (zero_) return {0.0, 0.0};
  const double mag = static_cast<double>(std::exp(log_mag_));
  return {mag * static_cast<double>(std::cos(phase_)),
          mag * static_cast<double>(std::sin(phase_))};
}

WideComplex WideComplex::operator-() const {
  if (zero_) return *this;
  return polar_log(log_mag_, phase_ + kPi);
}

WideComplex WideComplex::conj() const {
  if (zero_) return *this;
  return polar_log(log_mag_, -phase_);
}

WideComplex WideComplex::inverse() const {
  if (zero_) throw Error(ErrorCode::invalid_argument, "inverse of zero");
  return polar_log(-log_mag_, -phase_);
}

WideComplex WideComplex::pow(unsigned j) const {
  if (j == 0) return one();
  if (zero_) return *this;
  return polar_log(log_mag_ * j, phase_ * j);
}

WideComplex WideComplex::root(unsigned m) const {
  if (m == 0) throw Error(ErrorCode::invalid_argument, "zeroth root");
  if (zero_) return *this;
  return polar_log(log_mag_ / m, phase_ / m);
}

WideComplex WideComplex::scaled(wide_real delta_log, wide_real delta_phase) const {
  if (zero_) return *this;
  return polar_log(log_mag_ + delta_log, phase_ + delta_phase);
}

WideComplex& WideComplex::operator*=(const WideComplex& rhs) {
  if (zero_) return *this;
  if (rhs.zero_) return *this = WideComplex{};
  *this = polar_log(log_mag_ + rhs.log_mag_, phase_ + rhs.phase_);
  return *this;
}

WideComplex& WideComplex::operator/=(const WideComplex& rhs) {
  return *this *= rhs.inverse();
}

WideComplex& WideComplex::operator+=(const WideComplex& rhs) {
  WideAccumulator acc;
  acc.add(*this);
  acc.add(rhs);
  return *this = acc.value();
}

WideComplex& WideComplex::operator-=(const WideComplex& rhs) {
  return *this += -rhs;
}

wide_real relative_difference(const WideComplex& a, const WideComplex& b) {
  if (a.is_zero() && b.is_zero()) return 0;
  if (a.is_zero() || b.is_zero()) return 1;
  const wide_real ref = std::max(a.log_abs(), b.log_abs());
  const auto za = std::polar(std::exp(a.log_abs() - ref), a.phase());
  const auto zb = std::polar(std::exp(b.log_abs() - ref), b.phase());
  return std::abs(za - zb);
}

void WideAccumulator::add(const WideComplex& z) {
  if (z.is_zero()) return;
  const wide_real l = z.log_abs();
  if (!any_) {
    ref_ = l;
    sum_ = axis_exact_polar(1, z.phase());
    any_ = true;
    return;
  }
  if (l > ref_) {
    sum_ *= std::exp(ref_ - l);
    ref_ = l;
    sum_ += axis_exact_polar(1, z.phase());
  } else {
    sum_ += axis_exact_polar(std::exp(l - ref_), z.phase());
  }
}

WideComplex WideAccumulator::value() const {
  if (!any_) return {};
  const wide_real mag = std::abs(sum_);
  if (mag == 0) return {};
  return WideComplex::polar_log(ref_ + std::log(mag), std::arg(sum_));
}

void LogSumExp::add(wide_real log_value) {
  if (std::isinf(log_value) && log_value < 0) return;
  if (!any_) {
    ref_ = log_value;
    sum_ = 1;
    any_ = true;
    return;
  }
  if (log_value > ref_) {
    sum_ = sum_ * std::exp(ref_ - log_value) + 1;
    ref_ = log_value;
  } else {
    sum_ += std::exp(log_value - ref_);
  }
}

wide_real LogSumExp::value() const {
  if (!any_) return -std::numeric_limits<wide_real>::infinity();
  return ref_ + std::log(sum_);
}

namespace {

std::optional<double> parse_real(const std::string& s) {
  if (s.empty()) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || !std::isfinite(v)) return std::nullopt;
  // strtod accepts hex floats and "inf"; only plain decimals are allowed here.
  for (char c : s) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == 'e' ||
          c == 'E' || c == '+' || c == '-')) {
      return std::nullopt;
    }
  }
  return v;
}

std::optional<double> parse_imag_coefficient(const std::string& s) {
  if (s.empty() || s == "+") return 1.0;
  if (s == "-") return -1.0;
  return parse_real(s);
}

}  // namespace

std::optional<std::complex<double>> parse_complex(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) return std::nullopt;
  if (s.back() != 'i') {
    auto re = parse_real(s);
    if (!re) return std::nullopt;
    return std::complex<double>(*re, 0.0);
  }
  s.pop_back();
  // Split at the last sign that is not an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) {
    auto im = parse_imag_coefficient(s);
    if (!im) return std::nullopt;
    return std::complex<double>(0.0, *im);
  }
  auto re = parse_real(s.substr(0, split));
  auto im = parse_imag_coefficient(s.substr(split));
  if (!re || !im) return std::nullopt;
  return std::complex<double>(*re, *im);
}

}  // namespace hyperforge
