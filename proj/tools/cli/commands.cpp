#include "cli/commands.hpp"

#include <algorithm>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "hyperforge/cauchy_construct.hpp"
#include "hyperforge/coord_construct.hpp"
#include "hyperforge/criteria.hpp"
#include "hyperforge/element_parser.hpp"
#include "hyperforge/error.hpp"
#include "hyperforge/io.hpp"
#include "hyperforge/verify.hpp"

namespace hyperforge::cli {

namespace {

struct RunConfig {
  std::string space;
  std::string weight = "const:2";
  std::string targets;
  unsigned rounds = 0;
  unsigned K = 2;
  std::optional<index_t> horizon_n;
  std::optional<unsigned> horizon_q;
  std::optional<double> tol;
  std::size_t count = 10;
  std::uint64_t budget = 0;
  unsigned tighten_budget = 0;
  std::string witness;
  std::string bundle;
  std::string element;
  unsigned j = 1;
  unsigned degree_cap = 6;
  bool skip_revalidation = false;
  std::string out;
  std::string csv;
};

struct Outcome {
  json result;
  bool pass = true;
};

using Action = std::function<Outcome(const RunConfig&)>;

// Coordinatewise commands read "l1" as l_p:1.
SpaceSpec space_for(const std::string& text, Product wanted) {
  SpaceSpec space = SpaceSpec::parse(text);
  if (wanted == Product::coordinatewise && space.id() == SpaceId::l1) space = SpaceSpec::make(SpaceId::lp, 1.0);
  if (space.product() != wanted) {
    throw Error(ErrorCode::inconsistent_space, "space " + space.name() + " carries the " +
                                                   std::string(to_string(space.product())) +
                                                   " product; this command needs the " +
                                                   std::string(to_string(wanted)) + " product");
  }
  return space;
}

std::vector<FiniteSeq> load_targets(const RunConfig& cfg) {
  if (cfg.targets.empty()) return default_base_targets();
  return targets_from_json(read_json_file(cfg.targets));
}

json check_json(const CheckResult& c) { return json{{"pass", c.pass}, {"detail", c.detail}}; }

void emit(const RunConfig& cfg, const json& doc) {
  if (!cfg.out.empty()) write_text_file(cfg.out, doc.dump(2) + "\n");
}

// ---- spaces --------------------------------------------------------------

Outcome spaces_list(const RunConfig&) {
  json list = json::array();
  for (const std::string& id : builtin_space_ids()) {
    const SpaceSpec s = SpaceSpec::parse(id == "l_p:<p>" ? "l_p:2" : id);
    list.push_back({{"id", id}, {"product", to_string(s.product())}, {"banach", s.is_banach()}});
  }
  return {json{{"spaces", list}}, true};
}

// ---- criteria ------------------------------------------------------------

Outcome criteria_hc(const RunConfig& cfg) {
  const SpaceSpec space = space_for(cfg.space, Product::coordinatewise);
  const Weight w = Weight::parse(cfg.weight);
  PkOptions opts;
  opts.horizon_n = cfg.horizon_n.value_or(opts.horizon_n);
  opts.horizon_q = cfg.horizon_q.value_or(opts.horizon_q);
  opts.tol = cfg.tol.value_or(opts.tol);
  if (cfg.budget > 0) opts.scan_limit = cfg.budget;
  const PkWitness pk = find_pk_witness(space, w, cfg.count, opts);
  const CheckResult check = check_pk_witness(space, w, pk);
  json doc{{"criterion", "hc"}, {"space", space.name()}, {"weight", w.spec()},
           {"check", check_json(check)}, {"witness", to_json(pk)}};
  emit(cfg, doc);
  return {doc, check.pass};
}

Outcome criteria_mixing(const RunConfig& cfg) {
  const SpaceSpec space = SpaceSpec::parse(cfg.space);
  const Weight w = Weight::parse(cfg.weight);
  const MixingResult m = check_mixing(space, w, cfg.horizon_n.value_or(kDefaultHorizonN),
                                      cfg.horizon_q.value_or(kDefaultHorizonQ), cfg.tol.value_or(1e-3));
  json doc{{"criterion", "mixing"}, {"space", space.name()}, {"weight", w.spec()}, {"result", to_json(m)}};
  emit(cfg, doc);
  return {doc, m.pass};
}

Outcome criteria_prop_a(const RunConfig& cfg) {
  const SpaceSpec space = SpaceSpec::parse(cfg.space);
  const PropertyAWitness wit =
      property_a_witness(space, cfg.horizon_q.value_or(kDefaultHorizonQ), cfg.horizon_n.value_or(kDefaultHorizonN));
  const CheckResult check = check_property_a(space, wit);
  json doc{{"criterion", "prop-a"}, {"space", space.name()}, {"check", check_json(check)}, {"witness", to_json(wit)}};
  emit(cfg, doc);
  return {doc, check.pass};
}

Outcome criteria_prop_b(const RunConfig& cfg) {
  const SpaceSpec space = SpaceSpec::parse(cfg.space);
  const unsigned q = cfg.horizon_q.value_or(kDefaultHorizonQ);
  const PropertyBWitness wit =
      property_b_witness(space, kDefaultMMax, kDefaultBigMMax, q, cfg.horizon_n.value_or(kDefaultHorizonN), q);
  const CheckResult check = check_property_b(space, wit);
  json doc{{"criterion", "prop-b"}, {"space", space.name()}, {"check", check_json(check)}, {"witness", to_json(wit)}};
  emit(cfg, doc);
  return {doc, check.pass};
}

// ---- build ---------------------------------------------------------------

template <class Bundle>
Outcome finish_build(const RunConfig& cfg, const Bundle& bundle, const char* kind) {
  const json doc = to_json(bundle);
  const bool pass = bundle.certified();
  if (cfg.out.empty()) return {doc, pass};
  write_text_file(cfg.out, doc.dump(2) + "\n");
  json summary{{"kind", kind},
               {"bundle_id", bundle_id(bundle)},
               {"space", bundle.space.name()},
               {"weight", bundle.weight.spec()},
               {"rounds", bundle.rounds.size()},
               {"certified", pass},
               {"out", cfg.out}};
  return {summary, pass};
}

Outcome build_coord(const RunConfig& cfg, unsigned classes) {
  const SpaceSpec space = space_for(cfg.space, Product::coordinatewise);
  const Weight w = Weight::parse(cfg.weight);
  CoordOptions opts;
  opts.rounds = cfg.rounds > 0 ? cfg.rounds : 12;
  opts.classes = classes;
  if (cfg.budget > 0) opts.scan_budget = cfg.budget;
  if (!cfg.witness.empty()) {
    json j = read_json_file(cfg.witness);
    const PkWitness seed = pk_witness_from_json(j.contains("witness") ? j.at("witness") : j);
    opts.pk.horizon_n = seed.horizon_n;
    opts.pk.horizon_q = seed.horizon_q;
    opts.pk.tol = seed.base_tol;
    opts.pk.growth_threshold = seed.growth_threshold;
    opts.seed = seed;
  } else {
    opts.pk.horizon_n = cfg.horizon_n.value_or(opts.pk.horizon_n);
    opts.pk.horizon_q = cfg.horizon_q.value_or(opts.pk.horizon_q);
    opts.pk.tol = cfg.tol.value_or(opts.pk.tol);
  }
  CoordBuilder builder(space, w, load_targets(cfg), opts);
  return finish_build(cfg, builder.run(), "coordinatewise");
}

Outcome build_cauchy(const RunConfig& cfg, unsigned generators) {
  const SpaceSpec space = space_for(cfg.space, Product::cauchy);
  const Weight w = Weight::parse(cfg.weight);
  CauchyOptions opts;
  opts.rounds = cfg.rounds > 0 ? cfg.rounds : 8;
  opts.generators = generators;
  if (cfg.budget > 0) opts.block_budget = cfg.budget;
  if (cfg.tighten_budget > 0) opts.tighten_budget = cfg.tighten_budget;
  CauchyBuilder builder(space, w, load_targets(cfg), opts);
  return finish_build(cfg, builder.run(), "cauchy");
}

// ---- verify --------------------------------------------------------------

struct LoadedBundle {
  std::optional<CoordBundle> coord;
  std::optional<CauchyBundle> cauchy;
};

LoadedBundle load_bundle(const std::string& path) {
  const json j = read_json_file(path);
  LoadedBundle b;
  if (bundle_kind(j) == "coordinatewise") {
    b.coord = coord_bundle_from_json(j);
  } else {
    b.cauchy = cauchy_bundle_from_json(j);
  }
  return b;
}

CheckResult revalidate_loaded(const RunConfig& cfg, const LoadedBundle& b) {
  if (cfg.skip_revalidation) return {true, "skipped"};
  return b.coord ? revalidate(*b.coord) : revalidate(*b.cauchy);
}

Outcome orbit_outcome(const RunConfig& cfg, const OrbitReport& report, const CheckResult& reval) {
  json doc = to_json(report);
  doc["revalidation"] = check_json(reval);
  emit(cfg, doc);
  if (!cfg.csv.empty()) write_text_file(cfg.csv, report_csv(report));
  return {doc, report.summary.pass && reval.pass};
}

Outcome verify_power(const RunConfig& cfg) {
  const LoadedBundle b = load_bundle(cfg.bundle);
  const CheckResult reval = revalidate_loaded(cfg, b);
  const OrbitReport report = b.coord ? orbit_power_report(*b.coord, cfg.j) : orbit_power_report(*b.cauchy, cfg.j);
  return orbit_outcome(cfg, report, reval);
}

Outcome verify_element(const RunConfig& cfg) {
  const AlgebraElement z = parse_algebra_element(cfg.element);
  const LoadedBundle b = load_bundle(cfg.bundle);
  const CheckResult reval = revalidate_loaded(cfg, b);
  const OrbitReport report = b.coord ? orbit_element_report(*b.coord, z) : orbit_element_report(*b.cauchy, z);
  return orbit_outcome(cfg, report, reval);
}

Outcome verify_zero_products(const RunConfig& cfg) {
  const LoadedBundle b = load_bundle(cfg.bundle);
  if (!b.coord) throw Error(ErrorCode::inconsistent_space, "zero products are checked on coordinatewise bundles");
  const CheckResult reval = revalidate_loaded(cfg, b);
  const ZeroProductReport report = zero_product_report(*b.coord);
  json doc = to_json(report);
  doc["revalidation"] = check_json(reval);
  emit(cfg, doc);
  return {doc, report.pass && reval.pass};
}

Outcome verify_expansion(const RunConfig& cfg) {
  const AlgebraElement z = parse_algebra_element(cfg.element);
  const LoadedBundle b = load_bundle(cfg.bundle);
  if (!b.cauchy) throw Error(ErrorCode::inconsistent_space, "the expansion oracle needs a Cauchy bundle");
  const CheckResult reval = revalidate_loaded(cfg, b);
  const ExpansionComparison cmp = expansion_oracle(*b.cauchy, z, cfg.degree_cap);
  json doc = to_json(cmp);
  doc["bundle_id"] = bundle_id(*b.cauchy);
  doc["element"] = z.to_string();
  doc["revalidation"] = check_json(reval);
  if (b.cauchy->algebrable()) doc["generation"] = to_json(non_finite_generation_report(*b.cauchy));
  emit(cfg, doc);
  bool pass = cmp.pass && reval.pass;
  if (doc.contains("generation")) pass = pass && doc["generation"].at("pass").get<bool>();
  return {doc, pass};
}

// ---- wiring --------------------------------------------------------------

void add_criteria_flags(CLI::App* sub, RunConfig& cfg, bool weight) {
  sub->add_option("--space", cfg.space, "space id (see `spaces list`)")->required();
  if (weight) {
    sub->add_option("--weight", cfg.weight, "const:<complex> | maclane | table:<path>")->required();
  } else {
    sub->add_option("--weight", cfg.weight, "accepted for uniformity; unused");
  }
  sub->add_option("--horizon-n", cfg.horizon_n, "index horizon");
  sub->add_option("--horizon-q", cfg.horizon_q, "seminorm horizon");
  sub->add_option("--tol", cfg.tol, "tolerance");
  sub->add_option("--out", cfg.out, "also write the JSON result here");
}

void add_build_flags(CLI::App* sub, RunConfig& cfg, const char* default_space, unsigned default_rounds) {
  sub->add_option("--space", cfg.space, "space id")->default_str(default_space);
  sub->add_option("--weight", cfg.weight, "const:<complex> | maclane | table:<path>")->capture_default_str();
  sub->add_option("--targets", cfg.targets, "JSON list of target sequences (default: four small targets)");
  sub->add_option("--rounds", cfg.rounds, "number of rounds R")->default_str(std::to_string(default_rounds))->check(CLI::PositiveNumber);
  sub->add_option("--budget", cfg.budget, "search budget (capped by HYPERFORGE_BUDGET)");
  sub->add_option("--out", cfg.out, "write the bundle here and print a summary");
}

void add_verify_flags(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--bundle", cfg.bundle, "bundle JSON from `build`")->required();
  sub->add_flag("--skip-revalidation", cfg.skip_revalidation, "trust the stored certificates");
  sub->add_option("--out", cfg.out, "also write the JSON report here");
}

json error_object(std::string_view code, const std::string& message, const std::string& command) {
  json e{{"error", code}, {"message", message}};
  if (!command.empty()) e["command"] = command;
  return e;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  Action action;
  std::string command;

  CLI::App app{"Truncated hypercyclic-algebra generators for weighted backward shifts", "hyperforge"};
  app.require_subcommand(1);
  auto bind = [&](CLI::App* sub, std::string name, Action a) {
    sub->callback([&action, &command, name = std::move(name), a = std::move(a)] {
      action = a;
      command = name;
    });
  };

  CLI::App* spaces = app.add_subcommand("spaces", "built-in spaces")->require_subcommand(1);
  bind(spaces->add_subcommand("list", "list space ids"), "spaces list", spaces_list);

  CLI::App* criteria = app.add_subcommand("criteria", "finite-horizon witnesses")->require_subcommand(1);
  CLI::App* hc = criteria->add_subcommand("hc", "hypercyclicity witness indices p_k");
  add_criteria_flags(hc, cfg, true);
  hc->add_option("--count", cfg.count, "number of indices")->capture_default_str();
  hc->add_option("--budget", cfg.budget, "scan limit");
  bind(hc, "criteria hc", criteria_hc);
  CLI::App* mixing = criteria->add_subcommand("mixing", "decay of v_n^{-1} e_n");
  add_criteria_flags(mixing, cfg, true);
  bind(mixing, "criteria mixing", criteria_mixing);
  CLI::App* pa = criteria->add_subcommand("prop-a", "Property A witness");
  add_criteria_flags(pa, cfg, false);
  bind(pa, "criteria prop-a", criteria_prop_a);
  CLI::App* pb = criteria->add_subcommand("prop-b", "Property B witness");
  add_criteria_flags(pb, cfg, false);
  bind(pb, "criteria prop-b", criteria_prop_b);

  CLI::App* build = app.add_subcommand("build", "run a construction")->require_subcommand(1);
  CLI::App* bc = build->add_subcommand("coord", "single generator, coordinatewise product");
  add_build_flags(bc, cfg, "l1", 12);
  bc->add_option("--witness", cfg.witness, "output of `criteria hc` to continue from");
  bind(bc, "build coord", [](const RunConfig& c) { return build_coord(c, 1); });
  CLI::App* bac = build->add_subcommand("algebrable-coord", "K generators with pairwise zero products");
  add_build_flags(bac, cfg, "l1", 12);
  bac->add_option("--K", cfg.K, "number of generators")->capture_default_str()->check(CLI::PositiveNumber);
  bac->add_option("--witness", cfg.witness, "output of `criteria hc` to continue from");
  bind(bac, "build algebrable-coord", [](const RunConfig& c) { return build_coord(c, c.K); });
  CLI::App* bca = build->add_subcommand("cauchy", "single generator, Cauchy product");
  add_build_flags(bca, cfg, "l1", 8);
  bca->add_option("--tighten-budget", cfg.tighten_budget, "epsilon tightening steps per round");
  bind(bca, "build cauchy", [](const RunConfig& c) { return build_cauchy(c, 0); });
  CLI::App* bac2 = build->add_subcommand("algebrable-cauchy", "K generators over a coefficient matrix");
  add_build_flags(bac2, cfg, "l1", 8);
  bac2->add_option("--K", cfg.K, "number of generators")->capture_default_str()->check(CLI::PositiveNumber);
  bac2->add_option("--tighten-budget", cfg.tighten_budget, "epsilon tightening steps per round");
  bind(bac2, "build algebrable-cauchy", [](const RunConfig& c) { return build_cauchy(c, c.K); });

  CLI::App* verify = app.add_subcommand("verify", "check a bundle")->require_subcommand(1);
  CLI::App* vp = verify->add_subcommand("power", "orbit of x^j against the scheduled targets");
  add_verify_flags(vp, cfg);
  vp->add_option("--j", cfg.j, "power")->capture_default_str()->check(CLI::PositiveNumber);
  vp->add_option("--csv", cfg.csv, "write round,distance,bound,ratio here");
  bind(vp, "verify power", verify_power);
  CLI::App* ve = verify->add_subcommand("element", "orbit of an algebra element");
  add_verify_flags(ve, cfg);
  ve->add_option("--element", cfg.element, "e.g. \"x1^2 + 0.3*x1^3\"")->required();
  ve->add_option("--csv", cfg.csv, "write round,distance,bound,ratio here");
  bind(ve, "verify element", verify_element);
  CLI::App* vz = verify->add_subcommand("zero-products", "pairwise products of the generators");
  add_verify_flags(vz, cfg);
  bind(vz, "verify zero-products", verify_zero_products);
  CLI::App* vx = verify->add_subcommand("expansion", "direct substitution against the block expansion");
  add_verify_flags(vx, cfg);
  vx->add_option("--element", cfg.element, "algebra element")->required();
  vx->add_option("--degree-cap", cfg.degree_cap, "largest block-monomial degree expanded")->capture_default_str();
  bind(vx, "verify expansion", verify_expansion);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << error_object("usage_error", e.what(), command).dump() << "\n";
    return kUsageExit;
  }

  // Build subcommands share flags; fill the per-command space default here.
  if (cfg.space.empty()) cfg.space = "l1";

  try {
    const Outcome outcome = action(cfg);
    out << outcome.result.dump(2) << "\n";
    return outcome.pass ? 0 : 1;
  } catch (const Error& e) {
    err << error_object(to_string(e.code()), e.what(), command).dump() << "\n";
    return exit_status(e.code());
  } catch (const json::exception& e) {
    err << error_object(to_string(ErrorCode::parse_error), e.what(), command).dump() << "\n";
    return exit_status(ErrorCode::parse_error);
  } catch (const std::filesystem::filesystem_error& e) {
    err << error_object(to_string(ErrorCode::io_error), e.what(), command).dump() << "\n";
    return exit_status(ErrorCode::io_error);
  }
}

}  // namespace hyperforge::cli
