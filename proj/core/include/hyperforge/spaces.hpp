#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hyperforge/finite_seq.hpp"

namespace hyperforge {

enum class SpaceId { lp, c0, l1, entire_hadamard, entire_cauchy, omega_coord, omega_cauchy };
enum class Product { coordinatewise, cauchy };

std::string_view to_string(Product p) noexcept;

/// A concrete Fréchet sequence algebra: a seminorm family (||.||_q)_{q>=1}
/// together with its product. l1, entire_cauchy and omega_cauchy carry the
/// Cauchy product; l_p, c0, entire_hadamard and omega_coord the
/// coordinatewise one.
class SpaceSpec {
 public:
  static SpaceSpec make(SpaceId id, double p = 1.0);
  // Rejects a product that does not match the space.
  static SpaceSpec make(SpaceId id, Product product, double p = 1.0);
  // "l_p:<p>", "c0", "l1", "entire_hadamard", "entire_cauchy", "omega_coord", "omega_cauchy".
  static SpaceSpec parse(std::string_view text);

  SpaceId id() const noexcept { return id_; }
  Product product() const noexcept { return product_; }
  double p() const noexcept { return p_; }
  std::string name() const;
  // Banach spaces: the seminorm does not depend on q.
  bool is_banach() const noexcept;

  FiniteSeq multiply(const FiniteSeq& x, const FiniteSeq& y) const;
  FiniteSeq power(const FiniteSeq& x, unsigned m) const;

  friend bool operator==(const SpaceSpec&, const SpaceSpec&) = default;

 private:
  SpaceSpec(SpaceId id, Product product, double p) : id_(id), product_(product), p_(p) {}

  SpaceId id_;
  Product product_;
  double p_;
};

Product natural_product(SpaceId id) noexcept;
std::vector<std::string> builtin_space_ids();

/// Interval enclosure of a seminorm. Closed-form families have
/// lower == upper; for entire_cauchy the lower end is a sampled maximum on
/// |z| = q and the upper end is sum |x_n| q^n. Decoded values saturate to
/// +inf (and 0) while the log fields stay exact.
struct SeminormValue {
  double lower = 0;
  double upper = 0;
  wide_real log_lower = 0;
  wide_real log_upper = 0;
};

SeminormValue seminorm_eval(const SpaceSpec& space, unsigned q, const FiniteSeq& x);
// Upper end only, in log form (-inf for zero). Used on hot paths.
wide_real log_seminorm_upper(const SpaceSpec& space, unsigned q, const FiniteSeq& x);
bool seminorm_below(const SpaceSpec& space, unsigned q, const FiniteSeq& x, double bound);

// log ||e_n||_q in closed form (-inf when the seminorm vanishes).
wide_real log_basis_seminorm(const SpaceSpec& space, unsigned q, index_t n);
double basis_seminorm(const SpaceSpec& space, unsigned q, index_t n);

inline constexpr unsigned kCauchySupSamples = 256;

}  // namespace hyperforge
