#include "hyperforge/lambda_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "hyperforge/error.hpp"

namespace hyperforge {

namespace {

struct GridPoint {
  std::complex<double> value;
  unsigned denominator;  // reduced
  double angle;
  double modulus;
};

std::vector<GridPoint> grid(unsigned D) {
  std::vector<GridPoint> pts;
  const int d = static_cast<int>(D);
  for (int p = -d; p <= d; ++p) {
    for (int pi = -d; pi <= d; ++pi) {
      if (p * p + pi * pi > d * d) continue;
      const unsigned g = std::gcd(std::gcd(static_cast<unsigned>(std::abs(p)), static_cast<unsigned>(std::abs(pi))), D);
      const std::complex<double> z(static_cast<double>(p) / d, static_cast<double>(pi) / d);
      double angle = std::atan2(z.imag(), z.real());
      if (angle < 0) angle += 2 * std::numbers::pi;
      pts.push_back({z, (p == 0 && pi == 0) ? 1u : D / g, angle, std::abs(z)});
    }
  }
  std::sort(pts.begin(), pts.end(), [](const GridPoint& a, const GridPoint& b) {
    const bool az = a.modulus == 0, bz = b.modulus == 0;
    if (az != bz) return bz;
    if (a.angle != b.angle) return a.angle < b.angle;
    return a.modulus > b.modulus;
  });
  return pts;
}

}  // namespace

LambdaMatrix::LambdaMatrix(unsigned rows, std::size_t max_elements) : rows_(rows) {
  if (rows < 1) throw Error(ErrorCode::invalid_argument, "coefficient matrix needs at least one row");
  for (unsigned D = 1; elements_.size() < max_elements; ++D) {
    const std::vector<GridPoint> g = grid(D);
    std::vector<std::size_t> pos(rows, 0);
    while (true) {
      unsigned l = 1;
      for (std::size_t i : pos) l = std::lcm(l, g[i].denominator);
      if (l == D) {
        std::vector<std::complex<double>> tuple;
        for (std::size_t i : pos) tuple.push_back(g[i].value);
        elements_.push_back(std::move(tuple));
        if (elements_.size() >= max_elements) break;
      }
      // Lexicographic successor, first coordinate slowest.
      std::size_t k = rows;
      while (k > 0 && ++pos[k - 1] == g.size()) pos[--k] = 0;
      if (k == 0) break;
    }
  }
}

const std::vector<std::complex<double>>& LambdaMatrix::element(std::size_t index) const {
  if (index >= elements_.size()) {
    throw Error(ErrorCode::search_exhausted, "coefficient set enumerated only up to its configured size");
  }
  return elements_[index];
}

std::size_t LambdaMatrix::element_index(std::uint64_t nu) {
  if (nu < 1) throw Error(ErrorCode::invalid_argument, "columns start at 1");
  // Block T holds columns T(T-1)/2 + 1 .. T(T+1)/2 and uses elements 0..T-1.
  std::uint64_t T = static_cast<std::uint64_t>((1.0 + std::sqrt(8.0 * static_cast<double>(nu))) / 2.0);
  while (T > 1 && T * (T - 1) / 2 >= nu) --T;
  while (T * (T + 1) / 2 < nu) ++T;
  return static_cast<std::size_t>(nu - T * (T - 1) / 2 - 1);
}

std::uint64_t LambdaMatrix::column_for(std::size_t index, std::uint64_t min_nu) {
  const std::uint64_t idx = index;
  // Block T contains the element when T > idx.
  std::uint64_t T = std::max<std::uint64_t>(idx + 1, 1);
  while (T * (T - 1) / 2 + idx + 1 < min_nu) ++T;
  return T * (T - 1) / 2 + idx + 1;
}

const std::vector<std::complex<double>>& LambdaMatrix::column(std::uint64_t nu) const {
  return element(element_index(nu));
}

std::complex<double> LambdaMatrix::entry(unsigned k, std::uint64_t nu) const {
  if (k < 1 || k > rows_) throw Error(ErrorCode::invalid_argument, "row out of range");
  return column(nu)[k - 1];
}

LeadingColumn leading_form_column(const AlgebraElement& z, const LambdaMatrix& lambda, std::uint64_t min_nu,
                                  double threshold) {
  z.require_nonzero();
  if (z.generators() > lambda.rows()) {
    throw Error(ErrorCode::invalid_argument, "element uses more generators than the matrix has rows");
  }
  // Each column costs one form evaluation; cap the scan at a fixed number of columns.
  constexpr std::uint64_t kScanColumns = 10'000'000;
  const std::uint64_t last = std::min(min_nu + kScanColumns,
                                      LambdaMatrix::column_for(lambda.size() - 1, min_nu) + 1);
  for (std::uint64_t nu = min_nu; nu < last; ++nu) {
    const std::size_t idx = LambdaMatrix::element_index(nu);
    const std::complex<double> rho = leading_form_value(z, lambda.element(idx));
    if (std::abs(rho) > threshold) return {nu, idx, rho};
  }
  throw Error(ErrorCode::degenerate_element,
              "top-degree form is numerically zero on every scanned column of the coefficient matrix");
}

}  // namespace hyperforge
