#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hyperforge/finite_seq.hpp"
#include "hyperforge/wide_complex.hpp"

namespace hyperforge {

/// Weight sequence (w_n) with w_0 = 1, and its products v_n = w_0 * ... * w_n.
///
/// Products are kept as log|v_n| plus the unwrapped sum of principal
/// arguments, so fixed-branch roots w_k^{j/m} can be multiplied over long
/// index ranges without re-wrapping phases.
class Weight {
 public:
  enum class Kind { constant, maclane, table };

  static Weight constant(std::complex<double> lambda);
  static Weight maclane();
  // Values for w_1, w_2, ...; every entry must be nonzero.
  static Weight table(std::vector<std::complex<double>> values);
  // "const:<complex>", "maclane", or "table:<path>" (JSON list of [re, im]).
  static Weight parse(std::string_view spec);

  Kind kind() const noexcept { return kind_; }
  std::string spec() const;
  std::complex<double> lambda() const noexcept { return lambda_; }
  const std::vector<std::complex<double>>& table_values() const;
  // Largest n for which w_n is defined; nullopt for unbounded kinds.
  std::optional<index_t> max_index() const;

  WideComplex w(index_t n) const;
  wide_real log_abs_v(index_t n) const;
  // sum_{k<=n} Arg(w_k) with each Arg in (-pi, pi].
  wide_real arg_sum(index_t n) const;
  WideComplex v(index_t n) const;

  // v_{n+a} / v_n = w_{n+1} ... w_{n+a}.
  wide_real log_abs_ratio(index_t n, index_t a) const;
  WideComplex ratio(index_t n, index_t a) const;
  // w_{n+1}^{j/m} ... w_{n+a}^{j/m}, each factor the j-th power of the
  // principal m-th root of w_k.
  WideComplex root_ratio(index_t n, index_t a, unsigned j, unsigned m) const;

 private:
  struct Table;

  Kind kind_ = Kind::constant;
  std::complex<double> lambda_{1.0, 0.0};
  wide_real log_abs_lambda_ = 0;
  wide_real arg_lambda_ = 0;
  std::string source_;
  std::shared_ptr<const Table> table_;

  void check_index(index_t n) const;
};

}  // namespace hyperforge
