#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hyperforge/algebra_element.hpp"

namespace hyperforge {

// Grammar (whitespace ignored):
//   expr    := ['+'|'-'] term (('+'|'-') term)*
//   term    := [coef ['*']] factor (['*'] factor)*
//   factor  := 'x' int ('^' int)?
//   coef    := real | real 'i' | 'i' | '(' complex ')'
//   complex := a+bi, a-bi, a, bi
struct ElementTerm {
  std::complex<double> coefficient{1.0, 0.0};
  // (generator, exponent) in source order; generators are 1-based.
  std::vector<std::pair<unsigned, unsigned>> factors;
};

struct ElementExpr {
  std::string source;
  std::vector<ElementTerm> terms;

  // Collects like terms; throws parse_error when everything cancels.
  AlgebraElement to_element() const;
};

// Syntax errors report a 1-based column; a term without factors is rejected
// as a constant term.
ElementExpr parse_element(std::string_view text);

inline AlgebraElement parse_algebra_element(std::string_view text) { return parse_element(text).to_element(); }

}  // namespace hyperforge
