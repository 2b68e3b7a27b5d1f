#include "hyperforge/algebra_element.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "hyperforge/error.hpp"

namespace hyperforge {

namespace {

std::string format_coefficient(std::complex<double> c) {
  std::ostringstream os;
  os.precision(15);
  if (c.imag() == 0) {
    os << c.real();
  } else if (c.real() == 0) {
    os << c.imag() << "i";
  } else {
    os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
  }
  return os.str();
}

}  // namespace

unsigned total_degree(const MultiIndex& beta) { return std::accumulate(beta.begin(), beta.end(), 0u); }

std::vector<unsigned> active_generators(const MultiIndex& beta) {
  std::vector<unsigned> out;
  for (std::size_t k = 0; k < beta.size(); ++k) {
    if (beta[k] > 0) out.push_back(static_cast<unsigned>(k + 1));
  }
  return out;
}

AlgebraElement AlgebraElement::univariate(const std::vector<std::pair<unsigned, std::complex<double>>>& terms) {
  AlgebraElement z;
  for (const auto& [deg, c] : terms) z.add_term({deg}, c);
  return z;
}

void AlgebraElement::add_term(MultiIndex beta, std::complex<double> c) {
  while (!beta.empty() && beta.back() == 0) beta.pop_back();
  if (beta.empty()) throw Error(ErrorCode::invalid_argument, "constant terms are not allowed");
  if (beta.size() > generators_) {
    Terms grown;
    for (auto& [b, v] : terms_) {
      MultiIndex nb = b;
      nb.resize(beta.size(), 0);
      grown.emplace(std::move(nb), v);
    }
    terms_ = std::move(grown);
    generators_ = static_cast<unsigned>(beta.size());
  }
  beta.resize(generators_, 0);
  const auto it = terms_.find(beta);
  const std::complex<double> total = (it == terms_.end() ? std::complex<double>{} : it->second) + c;
  if (total == std::complex<double>{}) {
    if (it != terms_.end()) terms_.erase(it);
  } else {
    terms_[beta] = total;
  }
}

unsigned AlgebraElement::degree() const {
  unsigned d = 0;
  for (const auto& [b, c] : terms_) d = std::max(d, total_degree(b));
  return d;
}

unsigned AlgebraElement::lowest_degree() const {
  unsigned d = 0;
  for (const auto& [b, c] : terms_) {
    const unsigned deg = total_degree(b);
    if (d == 0 || deg < d) d = deg;
  }
  return d;
}

AlgebraElement::Terms AlgebraElement::homogeneous(unsigned mu) const {
  Terms out;
  for (const auto& [b, c] : terms_) {
    if (total_degree(b) == mu) out.emplace(b, c);
  }
  return out;
}

AlgebraElement AlgebraElement::padded(unsigned K) const {
  if (K < generators_) throw Error(ErrorCode::invalid_argument, "element uses more generators than available");
  AlgebraElement out;
  out.generators_ = K;
  for (const auto& [b, c] : terms_) {
    MultiIndex nb = b;
    nb.resize(K, 0);
    out.terms_.emplace(std::move(nb), c);
  }
  return out;
}

void AlgebraElement::require_nonzero() const {
  if (terms_.empty()) throw Error(ErrorCode::degenerate_element, "the zero element has no orbit to verify");
}

std::string AlgebraElement::to_string() const {
  if (terms_.empty()) return "0";
  // Lower degree first, then generator order.
  std::vector<std::pair<MultiIndex, std::complex<double>>> sorted(terms_.begin(), terms_.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto& a, const auto& b) { return total_degree(a.first) < total_degree(b.first); });
  std::ostringstream os;
  bool first = true;
  for (const auto& [b, c] : sorted) {
    if (!first) os << " + ";
    first = false;
    bool need_star = false;
    if (c != std::complex<double>(1.0, 0.0)) {
      os << format_coefficient(c);
      need_star = true;
    }
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (b[k] == 0) continue;
      if (need_star) os << "*";
      os << "x" << (k + 1);
      if (b[k] > 1) os << "^" << b[k];
      need_star = true;
    }
  }
  return os.str();
}

FiniteSeq evaluate(const AlgebraElement& z, const std::vector<FiniteSeq>& generators, const SpaceSpec& space) {
  if (z.generators() > generators.size()) {
    throw Error(ErrorCode::invalid_argument, "element uses more generators than the bundle provides");
  }
  // Powers are cached per (generator, exponent).
  std::map<std::pair<std::size_t, unsigned>, FiniteSeq> powers;
  auto power = [&](std::size_t k, unsigned e) -> const FiniteSeq& {
    auto key = std::make_pair(k, e);
    auto it = powers.find(key);
    if (it == powers.end()) it = powers.emplace(key, space.power(generators[k], e)).first;
    return it->second;
  };
  FiniteSeq out;
  for (const auto& [beta, c] : z.terms()) {
    FiniteSeq term;
    bool started = false;
    for (std::size_t k = 0; k < beta.size(); ++k) {
      if (beta[k] == 0) continue;
      term = started ? space.multiply(term, power(k, beta[k])) : power(k, beta[k]);
      started = true;
    }
    out += term.scaled(WideComplex(c));
  }
  return out;
}

std::complex<double> leading_form_value(const AlgebraElement& z, const std::vector<std::complex<double>>& a) {
  const unsigned m = z.degree();
  std::complex<double> sum{};
  for (const auto& [beta, c] : z.homogeneous(m)) {
    std::complex<double> term = c;
    for (std::size_t k = 0; k < beta.size(); ++k) {
      const std::complex<double> ak = k < a.size() ? a[k] : std::complex<double>{};
      for (unsigned e = 0; e < beta[k]; ++e) term *= ak;
    }
    sum += term;
  }
  return sum;
}

}  // namespace hyperforge
