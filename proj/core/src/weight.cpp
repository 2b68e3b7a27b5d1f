#include "hyperforge/weight.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hyperforge/error.hpp"

namespace hyperforge {

struct Weight::Table {
  std::vector<std::complex<double>> values;  // w_1, w_2, ...
  std::vector<wide_real> log_abs_v;          // index n -> log|v_n|
  std::vector<wide_real> arg_sum;            // index n -> sum of args
};

namespace {

constexpr index_t kMaclaneCacheSize = index_t{1} << 18;

// log(n!) for n < kMaclaneCacheSize; lgammal beyond.
wide_real log_factorial(index_t n) {
  static const std::vector<wide_real> cache = [] {
    std::vector<wide_real> t(kMaclaneCacheSize);
    for (index_t k = 0; k < kMaclaneCacheSize; ++k) {
      t[k] = std::lgamma(static_cast<wide_real>(k) + 1);
    }
    return t;
  }();
  if (n < kMaclaneCacheSize) return cache[n];
  return std::lgamma(static_cast<wide_real>(n) + 1);
}

}  // namespace

Weight Weight::constant(std::complex<double> lambda) {
  if (lambda == std::complex<double>(0.0, 0.0) || !std::isfinite(lambda.real()) ||
      !std::isfinite(lambda.imag())) {
    throw Error(ErrorCode::invalid_argument, "constant weight must be finite and nonzero");
  }
  Weight w;
  w.kind_ = Kind::constant;
  w.lambda_ = lambda;
  const std::complex<wide_real> lw(lambda.real(), lambda.imag());
  w.log_abs_lambda_ = std::log(std::abs(lw));
  w.arg_lambda_ = std::arg(lw);
  return w;
}

Weight Weight::maclane() {
  Weight w;
  w.kind_ = Kind::maclane;
  return w;
}

Weight Weight::table(std::vector<std::complex<double>> values) {
  if (values.empty()) throw Error(ErrorCode::invalid_argument, "weight table is empty");
  auto t = std::make_shared<Table>();
  t->log_abs_v.reserve(values.size() + 1);
  t->arg_sum.reserve(values.size() + 1);
  t->log_abs_v.push_back(0);
  t->arg_sum.push_back(0);
  for (std::size_t k = 0; k < values.size(); ++k) {
    const auto& c = values[k];
    if (c == std::complex<double>(0.0, 0.0) || !std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw Error(ErrorCode::invalid_argument,
                  "weight table entry w_" + std::to_string(k + 1) + " is zero or non-finite");
    }
    const std::complex<wide_real> cw(c.real(), c.imag());
    t->log_abs_v.push_back(t->log_abs_v.back() + std::log(std::abs(cw)));
    t->arg_sum.push_back(t->arg_sum.back() + std::arg(cw));
  }
  t->values = std::move(values);
  Weight w;
  w.kind_ = Kind::table;
  w.table_ = std::move(t);
  return w;
}

Weight Weight::parse(std::string_view spec) {
  if (spec == "maclane") return maclane();
  if (spec.rfind("const:", 0) == 0) {
    auto z = parse_complex(spec.substr(6));
    if (!z) throw Error(ErrorCode::parse_error, "bad complex literal in weight spec: " + std::string(spec));
    return constant(*z);
  }
  if (spec.rfind("table:", 0) == 0) {
    const std::string path(spec.substr(6));
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::io_error, "cannot open weight table " + path);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::parse_error, "weight table " + path + ": " + e.what());
    }
    if (!j.is_array()) throw Error(ErrorCode::parse_error, "weight table must be a JSON list of [re, im]");
    std::vector<std::complex<double>> values;
    for (const auto& entry : j) {
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number()) {
        throw Error(ErrorCode::parse_error, "weight table entries must be [re, im]");
      }
      values.emplace_back(entry[0].get<double>(), entry[1].get<double>());
    }
    Weight w = table(std::move(values));
    w.source_ = path;
    return w;
  }
  throw Error(ErrorCode::parse_error, "unknown weight spec: " + std::string(spec));
}

std::string Weight::spec() const {
  switch (kind_) {
    case Kind::maclane:
      return "maclane";
    case Kind::table:
      return "table:" + source_;
    case Kind::constant: {
      std::ostringstream os;
      os.precision(17);
      os << "const:" << lambda_.real();
      if (lambda_.imag() != 0.0) {
        os << (lambda_.imag() < 0 ? "-" : "+") << std::abs(lambda_.imag()) << "i";
      }
      return os.str();
    }
  }
  return {};
}

const std::vector<std::complex<double>>& Weight::table_values() const {
  static const std::vector<std::complex<double>> empty;
  return table_ ? table_->values : empty;
}

std::optional<index_t> Weight::max_index() const {
  if (kind_ == Kind::table) return static_cast<index_t>(table_->values.size());
  return std::nullopt;
}

void Weight::check_index(index_t n) const {
  if (kind_ == Kind::table && n > table_->values.size()) {
    throw Error(ErrorCode::weight_table_exhausted,
                "weight table has " + std::to_string(table_->values.size()) +
                    " entries, index " + std::to_string(n) + " requested");
  }
}

WideComplex Weight::w(index_t n) const {
  if (n == 0) return WideComplex::one();
  switch (kind_) {
    case Kind::constant:
      return WideComplex::polar_log(log_abs_lambda_, arg_lambda_);
    case Kind::maclane:
      return WideComplex(static_cast<double>(n));
    case Kind::table:
      check_index(n);
      return WideComplex(table_->values[n - 1]);
  }
  return {};
}

wide_real Weight::log_abs_v(index_t n) const {
  switch (kind_) {
    case Kind::constant:
      return log_abs_lambda_ * static_cast<wide_real>(n);
    case Kind::maclane:
      return log_factorial(n);
    case Kind::table:
      check_index(n);
      return table_->log_abs_v[n];
  }
  return 0;
}

wide_real Weight::arg_sum(index_t n) const {
  switch (kind_) {
    case Kind::constant:
      return arg_lambda_ * static_cast<wide_real>(n);
    case Kind::maclane:
      return 0;
    case Kind::table:
      check_index(n);
      return table_->arg_sum[n];
  }
  return 0;
}

WideComplex Weight::v(index_t n) const {
  return WideComplex::polar_log(log_abs_v(n), arg_sum(n));
}

wide_real Weight::log_abs_ratio(index_t n, index_t a) const {
  if (kind_ == Kind::constant) return log_abs_lambda_ * static_cast<wide_real>(a);
  return log_abs_v(n + a) - log_abs_v(n);
}

WideComplex Weight::ratio(index_t n, index_t a) const {
  const wide_real phase =
      kind_ == Kind::constant ? arg_lambda_ * static_cast<wide_real>(a) : arg_sum(n + a) - arg_sum(n);
  return WideComplex::polar_log(log_abs_ratio(n, a), phase);
}

WideComplex Weight::root_ratio(index_t n, index_t a, unsigned j, unsigned m) const {
  if (m == 0) throw Error(ErrorCode::invalid_argument, "root index m must be >= 1");
  const wide_real phase_sum =
      kind_ == Kind::constant ? arg_lambda_ * static_cast<wide_real>(a) : arg_sum(n + a) - arg_sum(n);
  const wide_real log_root = log_abs_ratio(n, a) / m;
  const wide_real phase_root = phase_sum / m;
  return WideComplex::polar_log(log_root * j, phase_root * j);
}

}  // namespace hyperforge
