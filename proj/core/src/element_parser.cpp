#include "hyperforge/element_parser.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <sstream>

#include "hyperforge/error.hpp"

namespace hyperforge {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ElementExpr parse() {
    ElementExpr expr;
    expr.source = std::string(text_);
    skip();
    if (done()) fail("empty expression");
    double sign = 1.0;
    if (peek() == '+' || peek() == '-') {
      sign = peek() == '-' ? -1.0 : 1.0;
      ++pos_;
    }
    expr.terms.push_back(term(sign));
    while (!done()) {
      const char c = peek();
      if (c != '+' && c != '-') fail(std::string("expected '+' or '-', found '") + c + "'");
      ++pos_;
      expr.terms.push_back(term(c == '-' ? -1.0 : 1.0));
    }
    return expr;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    std::ostringstream os;
    os << "syntax error at column " << pos_ + 1 << ": " << what;
    throw Error(ErrorCode::parse_error, os.str());
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool done() {
    skip();
    return pos_ >= text_.size();
  }
  char peek() {
    skip();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool at_number() {
    const char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.';
  }

  double number() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
      ++pos_;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t save = pos_++;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      } else {
        pos_ = save;
      }
    }
    const std::string token(text_.substr(start, pos_ - start));
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (token.empty() || end != token.c_str() + token.size()) {
      pos_ = start;
      fail("malformed number");
    }
    return v;
  }

  unsigned integer(const char* what) {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    unsigned v = 0;
    const auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
    if (pos_ == start || ec != std::errc{}) {
      pos_ = start;
      fail(std::string("expected ") + what);
    }
    (void)ptr;
    return v;
  }

  // real ['i'] | 'i'
  std::complex<double> simple_coefficient() {
    if (peek() == 'i') {
      ++pos_;
      return {0.0, 1.0};
    }
    const double v = number();
    if (pos_ < text_.size() && text_[pos_] == 'i') {
      ++pos_;
      return {0.0, v};
    }
    return {v, 0.0};
  }

  // '(' [sign] part (sign part)? ')'
  std::complex<double> parenthesized() {
    ++pos_;
    std::complex<double> total;
    bool first = true;
    while (peek() != ')') {
      if (done()) fail("unterminated '('");
      double sign = 1.0;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1.0 : 1.0;
        ++pos_;
      } else if (!first) {
        fail("expected '+' or '-' inside complex literal");
      }
      if (!at_number() && peek() != 'i') fail("expected a number");
      total += sign * simple_coefficient();
      first = false;
    }
    if (first) fail("empty parentheses");
    ++pos_;
    return total;
  }

  std::pair<unsigned, unsigned> factor() {
    if (peek() != 'x') fail("expected a generator such as x1");
    ++pos_;
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      fail("expected generator index after 'x'");
    }
    const unsigned k = integer("generator index");
    if (k == 0) fail("generators are numbered from 1");
    unsigned e = 1;
    if (peek() == '^') {
      ++pos_;
      e = integer("exponent");
      if (e == 0) fail("exponent must be positive");
    }
    return {k, e};
  }

  ElementTerm term(double sign) {
    ElementTerm t;
    const std::size_t start = pos_;
    bool has_coef = false;
    if (peek() == '(') {
      t.coefficient = parenthesized();
      has_coef = true;
    } else if (at_number() || peek() == 'i') {
      t.coefficient = simple_coefficient();
      has_coef = true;
    }
    t.coefficient *= sign;
    if (has_coef && peek() == '*') ++pos_;
    while (true) {
      const char c = peek();
      if (c == 'x') {
        t.factors.push_back(factor());
      } else if (c == '*' && !t.factors.empty()) {
        ++pos_;
        if (peek() != 'x') fail("expected a generator after '*'");
      } else {
        break;
      }
    }
    if (t.factors.empty()) {
      if (!has_coef) fail("expected a term");
      std::ostringstream os;
      os << "semantic error at column " << start + 1 << ": constant terms are not allowed";
      throw Error(ErrorCode::parse_error, os.str());
    }
    return t;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

AlgebraElement ElementExpr::to_element() const {
  AlgebraElement z;
  for (const ElementTerm& t : terms) {
    MultiIndex beta;
    for (const auto& [k, e] : t.factors) {
      if (beta.size() < k) beta.resize(k, 0);
      beta[k - 1] += e;
    }
    z.add_term(std::move(beta), t.coefficient);
  }
  if (z.is_zero()) throw Error(ErrorCode::parse_error, "semantic error: the element is zero");
  return z;
}

ElementExpr parse_element(std::string_view text) { return Parser(text).parse(); }

}  // namespace hyperforge
