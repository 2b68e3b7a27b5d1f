#include "hyperforge/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "hyperforge/error.hpp"

namespace hyperforge {

namespace {

// |log| below this keeps re/im well inside the double range.
constexpr wide_real kDecodedLogLimit = 600;

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::parse_error, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <class T>
T get(const json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const json::exception&) {
    bad(std::string("field '") + key + "' has the wrong type");
  }
}

// Splits a long double into two doubles whose sum is exact.
void put_wide(json& out, const char* key, wide_real v) {
  const double hi = static_cast<double>(v);
  out[key] = hi;
  const double lo = static_cast<double>(v - static_cast<wide_real>(hi));
  if (lo != 0.0) out[std::string(key) + "_lo"] = lo;
}

wide_real get_wide(const json& j, const char* key) {
  wide_real v = get<double>(j, key);
  const std::string lo = std::string(key) + "_lo";
  if (j.contains(lo)) v += j.at(lo).get<double>();
  return v;
}

// Logs may be -inf (exact zero); JSON has no infinities so those become null.
// Finite logs are [hi, lo] so reloading reproduces them exactly.
json log_to_json(wide_real l) {
  if (std::isinf(l)) return l < 0 ? json(nullptr) : json("inf");
  const double hi = static_cast<double>(l);
  return json::array({hi, static_cast<double>(l - static_cast<wide_real>(hi))});
}

wide_real log_from_json(const json& j) {
  if (j.is_null()) return -std::numeric_limits<wide_real>::infinity();
  if (j.is_string() && j.get<std::string>() == "inf") return std::numeric_limits<wide_real>::infinity();
  if (j.is_number()) return j.get<double>();
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    bad("log value must be [hi, lo], a number or null");
  }
  return static_cast<wide_real>(j[0].get<double>()) + j[1].get<double>();
}

// Long double as [hi, lo] with hi + lo exact.
json wide_pair(wide_real v) {
  const double hi = static_cast<double>(v);
  return json::array({hi, static_cast<double>(v - static_cast<wide_real>(hi))});
}

wide_real wide_from_pair(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) bad("expected [hi, lo]");
  return static_cast<wide_real>(j[0].get<double>()) + j[1].get<double>();
}

json wide_list(const std::vector<wide_real>& values) {
  json out = json::array();
  for (wide_real v : values) out.push_back(wide_pair(v));
  return out;
}

std::vector<wide_real> wide_list_from_json(const json& j) {
  if (!j.is_array()) bad("expected a list");
  std::vector<wide_real> out;
  for (const json& e : j) out.push_back(wide_from_pair(e));
  return out;
}

json complex_to_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

std::complex<double> complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) bad("expected [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json seq_list(const std::vector<FiniteSeq>& xs) {
  json out = json::array();
  for (const FiniteSeq& x : xs) out.push_back(to_json(x));
  return out;
}

json pk_options_json(const PkOptions& o) {
  json j{{"horizon_n", o.horizon_n}, {"horizon_q", o.horizon_q}, {"tol", o.tol}, {"scan_limit", o.scan_limit}};
  if (o.growth_threshold) j["growth_threshold"] = *o.growth_threshold;
  return j;
}

PkOptions pk_options_from_json(const json& j) {
  PkOptions o;
  o.horizon_n = get<index_t>(j, "horizon_n");
  o.horizon_q = get<unsigned>(j, "horizon_q");
  o.tol = get<double>(j, "tol");
  o.scan_limit = get<std::uint64_t>(j, "scan_limit");
  if (j.contains("growth_threshold")) o.growth_threshold = j.at("growth_threshold").get<double>();
  return o;
}

std::string fnv1a(const std::string& text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace

namespace {

// The compact [re, im] form is used only when it reloads to the identical value.
bool compact_is_exact(const WideComplex& z) {
  if (z.is_zero()) return true;
  if (!(std::abs(z.log_abs()) < kDecodedLogLimit)) return false;
  return WideComplex(z.to_complex()) == z;
}

}  // namespace

json to_json(const WideComplex& z) {
  if (z.is_zero()) return json::array({0.0, 0.0});
  if (compact_is_exact(z)) return complex_to_json(z.to_complex());
  json j = json::object();
  put_wide(j, "log_mag", z.log_abs());
  put_wide(j, "phase", z.phase());
  return j;
}

WideComplex wide_complex_from_json(const json& j) {
  if (j.is_array()) return WideComplex(complex_from_json(j));
  if (j.is_number()) return WideComplex(j.get<double>());
  if (j.is_object()) return WideComplex::polar_log(get_wide(j, "log_mag"), get_wide(j, "phase"));
  bad("expected a complex number");
}

json to_json(const FiniteSeq& x) {
  json coeffs = json::array();
  for (const auto& [n, c] : x) {
    if (compact_is_exact(c)) {
      const std::complex<double> z = c.to_complex();
      coeffs.push_back(json::array({n, z.real(), z.imag()}));
    } else {
      json e{{"index", n}};
      put_wide(e, "log_mag", c.log_abs());
      put_wide(e, "phase", c.phase());
      coeffs.push_back(std::move(e));
    }
  }
  json j{{"coeffs", std::move(coeffs)}};
  if (x.truncation_horizon()) j["horizon"] = *x.truncation_horizon();
  return j;
}

FiniteSeq finite_seq_from_json(const json& j) {
  FiniteSeq x;
  for (const json& e : field(j, "coeffs")) {
    if (e.is_array()) {
      if (e.size() != 3 || !e[0].is_number_unsigned() || !e[1].is_number() || !e[2].is_number()) {
        bad("sequence entries must be [index, re, im]");
      }
      x.set(e[0].get<index_t>(), WideComplex(std::complex<double>(e[1].get<double>(), e[2].get<double>())));
    } else if (e.is_object()) {
      x.set(get<index_t>(e, "index"), WideComplex::polar_log(get_wide(e, "log_mag"), get_wide(e, "phase")));
    } else {
      bad("sequence entries must be arrays or objects");
    }
  }
  if (j.contains("horizon")) x.set_truncation_horizon(j.at("horizon").get<index_t>());
  return x;
}

json to_json(const Certificate& c) {
  return json{{"pass", c.pass},
              {"value", c.value()},
              {"bound", c.bound()},
              {"log_value", log_to_json(c.log_value)},
              {"log_bound", log_to_json(c.log_bound)},
              {"detail", c.detail}};
}

Certificate certificate_from_json(const json& j) {
  Certificate c;
  c.pass = get<bool>(j, "pass");
  c.log_value = log_from_json(field(j, "log_value"));
  c.log_bound = log_from_json(field(j, "log_bound"));
  c.detail = get<std::string>(j, "detail");
  return c;
}

json to_json(const Weight& w) {
  if (w.kind() != Weight::Kind::table) return w.spec();
  json values = json::array();
  for (const auto& v : w.table_values()) values.push_back(complex_to_json(v));
  return json{{"table", std::move(values)}};
}

Weight weight_from_json(const json& j) {
  if (j.is_string()) return Weight::parse(j.get<std::string>());
  std::vector<std::complex<double>> values;
  for (const json& v : field(j, "table")) values.push_back(complex_from_json(v));
  return Weight::table(std::move(values));
}

json to_json(const PkWitness& w) {
  json j{{"p", w.p},
         {"horizon_n", w.horizon_n},
         {"horizon_q", w.horizon_q},
         {"log_tol_schedule", wide_list(w.log_tol_schedule)},
         {"base_tol", w.base_tol},
         {"scanned_to", w.scanned_to}};
  if (w.growth_threshold) j["growth_threshold"] = *w.growth_threshold;
  return j;
}

PkWitness pk_witness_from_json(const json& j) {
  PkWitness w;
  w.p = get<std::vector<index_t>>(j, "p");
  w.horizon_n = get<index_t>(j, "horizon_n");
  w.horizon_q = get<unsigned>(j, "horizon_q");
  w.log_tol_schedule = wide_list_from_json(field(j, "log_tol_schedule"));
  w.base_tol = get<double>(j, "base_tol");
  w.scanned_to = get<index_t>(j, "scanned_to");
  if (j.contains("growth_threshold")) w.growth_threshold = j.at("growth_threshold").get<double>();
  if (w.p.size() != w.log_tol_schedule.size()) bad("witness needs one tolerance per index");
  return w;
}

json to_json(const MixingResult& m) {
  json j{{"pass", m.pass}, {"threshold", m.threshold}, {"value_at_threshold", m.value_at_threshold}};
  if (m.failure) j["failure"] = {{"n", m.failure->first}, {"q", m.failure->second}, {"value", m.failure_value}};
  return j;
}

json to_json(const PropertyAWitness& w) {
  json rows = json::array();
  for (std::size_t i = 0; i < w.per_r.size(); ++i) {
    rows.push_back({{"r", i + 1}, {"q", w.per_r[i].q}, {"C", w.per_r[i].C}});
  }
  return json{{"n_max", w.n_max}, {"bounds", std::move(rows)}};
}

json to_json(const PropertyBWitness& w) {
  json ii = json::array();
  for (std::size_t i = 0; i < w.cond_ii.size(); ++i) {
    ii.push_back({{"r", i + 1}, {"q", w.cond_ii[i].q}, {"C", w.cond_ii[i].C}});
  }
  json iii = json::array();
  for (const PropertyBCondIII& c : w.cond_iii) {
    iii.push_back({{"m", c.m}, {"M", c.M}, {"r", c.r}, {"t", c.t}, {"rho", c.rho}, {"tau", c.tau}, {"C2", c.C2}});
  }
  return json{{"n_max", w.n_max}, {"cond_i", {{"q", w.cond_i_q}}}, {"cond_ii", std::move(ii)},
              {"cond_iii", std::move(iii)}};
}

json to_json(const CoordBundle& b) {
  json rounds = json::array();
  for (const CoordRound& r : b.rounds) {
    rounds.push_back({{"r", r.r},
                      {"m", r.m},
                      {"l", r.l},
                      {"target", r.target_id},
                      {"generator", r.generator},
                      {"a_r", r.a},
                      {"pk_position", r.pk_position},
                      {"log_pk_tol", wide_pair(r.log_pk_tol)},
                      {"block", to_json(r.block)},
                      {"checks", {{"A1", to_json(r.A1)}, {"A2", to_json(r.A2)}, {"A3", to_json(r.A3)}}}});
  }
  return json{{"kind", "coordinatewise"},
              {"space", b.space.name()},
              {"weight", to_json(b.weight)},
              {"pairing", std::string(PairingOrder::name)},
              {"partition_K", b.classes},
              {"targets", seq_list(b.targets)},
              {"pk", pk_options_json(b.pk_options)},
              {"certified", b.certified()},
              {"rounds", std::move(rounds)}};
}

CoordBundle coord_bundle_from_json(const json& j) {
  if (bundle_kind(j) != "coordinatewise") bad("not a coordinatewise bundle");
  CoordBundle b;
  b.space = SpaceSpec::parse(get<std::string>(j, "space"));
  b.weight = weight_from_json(field(j, "weight"));
  if (get<std::string>(j, "pairing") != PairingOrder::name) bad("unsupported pairing");
  b.classes = get<unsigned>(j, "partition_K");
  b.targets = targets_from_json(field(j, "targets"));
  b.pk_options = pk_options_from_json(field(j, "pk"));
  for (const json& e : field(j, "rounds")) {
    CoordRound r;
    r.r = get<round_t>(e, "r");
    r.m = get<unsigned>(e, "m");
    r.l = get<unsigned>(e, "l");
    r.target_id = get<std::size_t>(e, "target");
    r.generator = get<unsigned>(e, "generator");
    r.a = get<index_t>(e, "a_r");
    r.pk_position = get<std::size_t>(e, "pk_position");
    r.log_pk_tol = wide_from_pair(field(e, "log_pk_tol"));
    r.block = finite_seq_from_json(field(e, "block"));
    const json& checks = field(e, "checks");
    r.A1 = certificate_from_json(field(checks, "A1"));
    r.A2 = certificate_from_json(field(checks, "A2"));
    r.A3 = certificate_from_json(field(checks, "A3"));
    b.rounds.push_back(std::move(r));
  }
  return b;
}

json to_json(const CauchyBundle& b) {
  const char* prefix = b.algebrable() ? "F" : "D";
  json rounds = json::array();
  for (const CauchyRound& r : b.rounds) {
    json c = json::array();
    for (const WideComplex& v : r.c) c.push_back(to_json(v));
    json lambda = json::array();
    for (const auto& v : r.lambda_column) lambda.push_back(complex_to_json(v));
    json eps = json::object();
    put_wide(eps, "log_eps", r.log_eps);
    json certs{{"C1", to_json(r.C1)},
               {"C2_residual", static_cast<double>(r.C2_residual)},
               {"C3", to_json(r.C3)},
               {std::string(prefix) + "1", to_json(r.D1)},
               {std::string(prefix) + "2", to_json(r.D2)},
               {std::string(prefix) + "3", to_json(r.D3)},
               {std::string(prefix) + "4", to_json(r.D4)},
               {"separation", to_json(r.separation)}};
    json e{{"r", r.r},
           {"m", r.m},
           {"l", r.l},
           {"nu", r.nu},
           {"target", r.target_id},
           {"lambda_element", r.lambda_element},
           {"lambda_column", std::move(lambda)},
           {"N", r.N},
           {"eta", r.eta},
           {"gamma", r.gamma},
           {"a_r", r.a},
           {"b", to_json(r.b)},
           {"c", std::move(c)},
           {"block", to_json(r.p)},
           {"rho", r.rho},
           {"tighten_steps", r.tighten_steps},
           {"checks", std::move(certs)}};
    e.update(eps);
    rounds.push_back(std::move(e));
  }
  return json{{"kind", "cauchy"},
              {"space", b.space.name()},
              {"weight", to_json(b.weight)},
              {"pairing", std::string(b.pairing())},
              {"partition_K", b.algebrable() ? b.generators : 1u},
              {"generators", b.generators},
              {"targets", seq_list(b.targets)},
              {"certified", b.certified()},
              {"rounds", std::move(rounds)}};
}

CauchyBundle cauchy_bundle_from_json(const json& j) {
  if (bundle_kind(j) != "cauchy") bad("not a Cauchy bundle");
  CauchyBundle b;
  b.space = SpaceSpec::parse(get<std::string>(j, "space"));
  b.weight = weight_from_json(field(j, "weight"));
  b.generators = get<unsigned>(j, "generators");
  if (get<std::string>(j, "pairing") != b.pairing()) bad("pairing does not match the generator count");
  b.targets = targets_from_json(field(j, "targets"));
  const std::string prefix = b.algebrable() ? "F" : "D";
  for (const json& e : field(j, "rounds")) {
    CauchyRound r;
    r.r = get<round_t>(e, "r");
    r.m = get<unsigned>(e, "m");
    r.l = get<unsigned>(e, "l");
    r.nu = get<unsigned>(e, "nu");
    r.target_id = get<std::size_t>(e, "target");
    r.lambda_element = get<std::size_t>(e, "lambda_element");
    for (const json& v : field(e, "lambda_column")) r.lambda_column.push_back(complex_from_json(v));
    r.N = get<index_t>(e, "N");
    r.eta = get<index_t>(e, "eta");
    r.gamma = get<index_t>(e, "gamma");
    r.a = get<index_t>(e, "a_r");
    r.b = wide_complex_from_json(field(e, "b"));
    for (const json& v : field(e, "c")) r.c.push_back(wide_complex_from_json(v));
    r.p = finite_seq_from_json(field(e, "block"));
    r.log_eps = get_wide(e, "log_eps");
    r.rho = get<unsigned>(e, "rho");
    r.tighten_steps = get<unsigned>(e, "tighten_steps");
    const json& checks = field(e, "checks");
    r.C1 = certificate_from_json(field(checks, "C1"));
    r.C2_residual = get<double>(checks, "C2_residual");
    r.C3 = certificate_from_json(field(checks, "C3"));
    r.D1 = certificate_from_json(field(checks, (prefix + "1").c_str()));
    r.D2 = certificate_from_json(field(checks, (prefix + "2").c_str()));
    r.D3 = certificate_from_json(field(checks, (prefix + "3").c_str()));
    r.D4 = certificate_from_json(field(checks, (prefix + "4").c_str()));
    r.separation = certificate_from_json(field(checks, "separation"));
    b.rounds.push_back(std::move(r));
  }
  return b;
}

std::string bundle_kind(const json& j) {
  const std::string kind = get<std::string>(j, "kind");
  if (kind != "coordinatewise" && kind != "cauchy") bad("unknown bundle kind '" + kind + "'");
  return kind;
}

std::string bundle_id(const CoordBundle& b) { return fnv1a(to_json(b).dump()); }
std::string bundle_id(const CauchyBundle& b) { return fnv1a(to_json(b).dump()); }

json to_json(const OrbitReport& r) {
  json rows = json::array();
  for (const OrbitRow& row : r.rounds) {
    rows.push_back({{"round", row.round},
                    {"a", row.a},
                    {"target", row.target ? json(*row.target) : json(nullptr)},
                    {"q", row.q},
                    {"mu", row.mu},
                    {"distance", row.distance},
                    {"bound", row.bound},
                    {"ratio", row.ratio},
                    {"pass", row.pass},
                    {"skipped", row.skipped},
                    {"measured", row.measured},
                    {"allowance", row.allowance},
                    {"note", row.note}});
  }
  const OrbitSummary& s = r.summary;
  return json{{"bundle_id", r.bundle_id},
              {"element", r.element},
              {"rounds", std::move(rows)},
              {"summary",
               {{"checked", s.checked},
                {"skipped", s.skipped},
                {"failed", s.failed},
                {"max_ratio", s.max_ratio},
                {"degenerate", s.degenerate},
                {"pass", s.pass}}}};
}

OrbitReport orbit_report_from_json(const json& j) {
  OrbitReport r;
  r.bundle_id = get<std::string>(j, "bundle_id");
  r.element = get<std::string>(j, "element");
  for (const json& e : field(j, "rounds")) {
    OrbitRow row;
    row.round = get<round_t>(e, "round");
    row.a = get<index_t>(e, "a");
    if (!field(e, "target").is_null()) row.target = get<std::size_t>(e, "target");
    row.q = get<unsigned>(e, "q");
    row.mu = get<unsigned>(e, "mu");
    row.distance = get<double>(e, "distance");
    row.bound = get<double>(e, "bound");
    row.ratio = get<double>(e, "ratio");
    row.pass = get<bool>(e, "pass");
    row.skipped = get<bool>(e, "skipped");
    row.measured = get<double>(e, "measured");
    row.allowance = get<double>(e, "allowance");
    row.note = get<std::string>(e, "note");
    r.rounds.push_back(std::move(row));
  }
  const json& s = field(j, "summary");
  r.summary.checked = get<std::size_t>(s, "checked");
  r.summary.skipped = get<std::size_t>(s, "skipped");
  r.summary.failed = get<std::size_t>(s, "failed");
  r.summary.max_ratio = get<double>(s, "max_ratio");
  r.summary.degenerate = get<bool>(s, "degenerate");
  r.summary.pass = get<bool>(s, "pass");
  return r;
}

json to_json(const ZeroProductReport& r) {
  json pairs = json::array();
  for (const ZeroProductPair& p : r.pairs) {
    pairs.push_back({{"k", p.k},
                     {"k2", p.k2},
                     {"pass", p.pass},
                     {"witness", p.witness ? json(*p.witness) : json(nullptr)}});
  }
  return json{{"bundle_id", r.bundle_id}, {"pairs", std::move(pairs)}, {"pass", r.pass}};
}

json to_json(const GenerationReport& r) {
  json rows = json::array();
  for (const GenerationRow& g : r.rounds) {
    rows.push_back({{"round", g.round},
                    {"index", g.index},
                    {"generators_vanish", g.generators_vanish},
                    {"power_log_abs", log_to_json(g.power_log_abs)},
                    {"pass", g.pass}});
  }
  return json{{"bundle_id", r.bundle_id}, {"rounds", std::move(rows)}, {"pass", r.pass}};
}

json to_json(const ExpansionComparison& e) {
  json coeffs = json::array();
  for (const auto& [alpha, d] : e.coefficients) {
    coeffs.push_back({{"alpha", alpha}, {"d", complex_to_json(d)}});
  }
  return json{{"pass", e.pass},
              {"partial", e.partial},
              {"relative_difference", static_cast<double>(e.relative_difference)},
              {"tolerance", kExpansionTolerance},
              {"coefficients", std::move(coeffs)},
              {"direct", to_json(e.direct)},
              {"expanded", to_json(e.expanded)}};
}

std::string report_csv(const OrbitReport& r) {
  std::ostringstream os;
  os.precision(17);
  os << "round,distance,bound,ratio\n";
  for (const OrbitRow& row : r.rounds) {
    os << row.round << ',' << row.distance << ',' << row.bound << ',' << row.ratio << '\n';
  }
  return os.str();
}

std::vector<FiniteSeq> targets_from_json(const json& j) {
  const json& list = j.is_object() ? field(j, "targets") : j;
  if (!list.is_array() || list.empty()) bad("targets must be a nonempty list of sequences");
  std::vector<FiniteSeq> out;
  for (const json& e : list) {
    FiniteSeq y = finite_seq_from_json(e);
    if (y.empty()) bad("targets must be nonzero");
    out.push_back(std::move(y));
  }
  return out;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse_error, path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io_error, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::io_error, "write failed for " + path.string());
}

}  // namespace hyperforge
