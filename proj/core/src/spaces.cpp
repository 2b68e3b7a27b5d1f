#include "hyperforge/spaces.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "hyperforge/error.hpp"

namespace hyperforge {

namespace {

constexpr wide_real kNegInf = -std::numeric_limits<wide_real>::infinity();

double decode(wide_real log_value) {
  if (std::isinf(log_value) && log_value < 0) return 0.0;
  return static_cast<double>(std::exp(log_value));
}

wide_real log_q(unsigned q) {
  static const auto table = [] {
    std::array<wide_real, 257> t{};
    for (unsigned i = 1; i < t.size(); ++i) t[i] = std::log(static_cast<wide_real>(i));
    return t;
  }();
  return q < table.size() ? table[q] : std::log(static_cast<wide_real>(q));
}

void require_q(unsigned q) {
  if (q < 1) throw Error(ErrorCode::invalid_argument, "seminorm index q must be >= 1");
}

// max_{theta_k} |sum_n x_n q^n e^{i n theta_k}|, log form.
wide_real log_sampled_sup(const FiniteSeq& x, unsigned q) {
  const wide_real lq = log_q(q);
  wide_real best = kNegInf;
  for (unsigned k = 0; k < kCauchySupSamples; ++k) {
    const wide_real theta = 2 * std::numbers::pi_v<wide_real> * k / kCauchySupSamples;
    WideAccumulator acc;
    for (const auto& [n, c] : x) {
      const wide_real nn = static_cast<wide_real>(n);
      acc.add(c.scaled(nn * lq, nn * theta));
    }
    best = std::max(best, acc.value().log_abs());
  }
  return best;
}

}  // namespace

std::string_view to_string(Product p) noexcept {
  return p == Product::cauchy ? "cauchy" : "coordinatewise";
}

Product natural_product(SpaceId id) noexcept {
  switch (id) {
    case SpaceId::l1:
    case SpaceId::entire_cauchy:
    case SpaceId::omega_cauchy:
      return Product::cauchy;
    default:
      return Product::coordinatewise;
  }
}

SpaceSpec SpaceSpec::make(SpaceId id, double p) { return make(id, natural_product(id), p); }

SpaceSpec SpaceSpec::make(SpaceId id, Product product, double p) {
  if (product != natural_product(id)) {
    throw Error(ErrorCode::inconsistent_space,
                "product '" + std::string(to_string(product)) + "' does not match the space");
  }
  if (id == SpaceId::lp) {
    if (!(p >= 1.0) || !std::isfinite(p)) {
      throw Error(ErrorCode::invalid_argument, "l_p needs a finite p >= 1");
    }
  } else {
    p = 1.0;
  }
  return SpaceSpec(id, product, p);
}

SpaceSpec SpaceSpec::parse(std::string_view text) {
  if (text == "c0") return make(SpaceId::c0);
  if (text == "l1") return make(SpaceId::l1);
  if (text == "entire_hadamard") return make(SpaceId::entire_hadamard);
  if (text == "entire_cauchy") return make(SpaceId::entire_cauchy);
  if (text == "omega_coord") return make(SpaceId::omega_coord);
  if (text == "omega_cauchy") return make(SpaceId::omega_cauchy);
  if (text.rfind("l_p:", 0) == 0) {
    const std::string num(text.substr(4));
    char* end = nullptr;
    const double p = std::strtod(num.c_str(), &end);
    if (num.empty() || end != num.c_str() + num.size()) {
      throw Error(ErrorCode::parse_error, "bad exponent in space id: " + std::string(text));
    }
    return make(SpaceId::lp, p);
  }
  throw Error(ErrorCode::parse_error, "unknown space id: " + std::string(text));
}

std::string SpaceSpec::name() const {
  switch (id_) {
    case SpaceId::lp: {
      std::ostringstream os;
      os.precision(17);
      os << "l_p:" << p_;
      return os.str();
    }
    case SpaceId::c0: return "c0";
    case SpaceId::l1: return "l1";
    case SpaceId::entire_hadamard: return "entire_hadamard";
    case SpaceId::entire_cauchy: return "entire_cauchy";
    case SpaceId::omega_coord: return "omega_coord";
    case SpaceId::omega_cauchy: return "omega_cauchy";
  }
  return {};
}

bool SpaceSpec::is_banach() const noexcept {
  return id_ == SpaceId::lp || id_ == SpaceId::c0 || id_ == SpaceId::l1;
}

FiniteSeq SpaceSpec::multiply(const FiniteSeq& x, const FiniteSeq& y) const {
  return product_ == Product::cauchy ? cauchy_product(x, y) : coordinatewise_product(x, y);
}

FiniteSeq SpaceSpec::power(const FiniteSeq& x, unsigned m) const {
  return product_ == Product::cauchy ? cauchy_power(x, m) : coordinatewise_power(x, m);
}

std::vector<std::string> builtin_space_ids() {
  return {"l_p:<p>", "c0", "l1", "entire_hadamard", "entire_cauchy", "omega_coord", "omega_cauchy"};
}

wide_real log_seminorm_upper(const SpaceSpec& space, unsigned q, const FiniteSeq& x) {
  require_q(q);
  switch (space.id()) {
    case SpaceId::lp: {
      const wide_real p = space.p();
      LogSumExp lse;
      for (const auto& [n, c] : x) lse.add(p * c.log_abs());
      return lse.value() / p;
    }
    case SpaceId::c0: {
      wide_real best = kNegInf;
      for (const auto& [n, c] : x) best = std::max(best, c.log_abs());
      return best;
    }
    case SpaceId::l1: {
      LogSumExp lse;
      for (const auto& [n, c] : x) lse.add(c.log_abs());
      return lse.value();
    }
    case SpaceId::entire_hadamard:
    case SpaceId::entire_cauchy: {
      const wide_real lq = log_q(q);
      LogSumExp lse;
      for (const auto& [n, c] : x) lse.add(c.log_abs() + static_cast<wide_real>(n) * lq);
      return lse.value();
    }
    case SpaceId::omega_coord: {
      wide_real best = kNegInf;
      for (auto it = x.begin(); it != x.end() && it->first <= q; ++it) {
        best = std::max(best, it->second.log_abs());
      }
      return best;
    }
    case SpaceId::omega_cauchy: {
      LogSumExp lse;
      for (auto it = x.begin(); it != x.end() && it->first <= q; ++it) lse.add(it->second.log_abs());
      return lse.value();
    }
  }
  return kNegInf;
}

SeminormValue seminorm_eval(const SpaceSpec& space, unsigned q, const FiniteSeq& x) {
  SeminormValue v;
  v.log_upper = log_seminorm_upper(space, q, x);
  v.log_lower = space.id() == SpaceId::entire_cauchy && !x.empty()
                    ? std::min(log_sampled_sup(x, q), v.log_upper)
                    : v.log_upper;
  v.upper = decode(v.log_upper);
  v.lower = decode(v.log_lower);
  return v;
}

bool seminorm_below(const SpaceSpec& space, unsigned q, const FiniteSeq& x, double bound) {
  const wide_real l = log_seminorm_upper(space, q, x);
  if (std::isinf(l) && l < 0) return bound > 0;
  return l < std::log(static_cast<wide_real>(bound));
}

wide_real log_basis_seminorm(const SpaceSpec& space, unsigned q, index_t n) {
  require_q(q);
  switch (space.id()) {
    case SpaceId::lp:
    case SpaceId::c0:
    case SpaceId::l1:
      return 0;
    case SpaceId::entire_hadamard:
    case SpaceId::entire_cauchy:
      return static_cast<wide_real>(n) * log_q(q);
    case SpaceId::omega_coord:
    case SpaceId::omega_cauchy:
      return n <= q ? 0 : kNegInf;
  }
  return kNegInf;
}

double basis_seminorm(const SpaceSpec& space, unsigned q, index_t n) {
  return decode(log_basis_seminorm(space, q, n));
}

}  // namespace hyperforge
