#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <ostream>
#include <sstream>
#include <thread>

#include "cubadv/bounds.hpp"
#include "cubadv/errors.hpp"
#include "cubadv/estimate.hpp"
#include "cubadv/geometry.hpp"
#include "cubadv/rules.hpp"
#include "cubadv/verify.hpp"
#include "report_json.hpp"

namespace cubadv::cli {
namespace {

struct BoundOptions {
  std::string formula;
  std::optional<std::size_t> d, n;
  std::size_t r = 1;
  double delta = 0.05;
  double eps = 0.5;
  std::optional<double> p;
  bool log_space = false;
};

struct NodeOptions {
  std::optional<std::string> points;
  std::optional<std::string> rule;
  std::optional<std::size_t> d;
};

struct AttackOptions {
  NodeOptions nodes;
  std::size_t r = 1;
  double delta = 0.05;
  std::size_t samples_measure = 100'000;
  std::size_t samples_integral = 100'000;
  std::size_t inner_samples = 1'000;
  std::uint64_t seed = 0;
};

struct VerifyOptions {
  std::string suite;
  NodeOptions nodes;
  std::size_t r = 1;
  double delta = 0.05;
  double p = 0.25;
  std::uint64_t seed = 0;
  double budget = 1.0;
  std::string format = "json";
};

struct GenOptions {
  std::string rule;
  std::size_t d = 0;
  std::uint64_t seed = 0;
  std::string out;
};

struct VolumeOptions {
  std::size_t d = 0;
  double delta = 0.05;
  std::string format = "json";
};

std::size_t require(const std::optional<std::size_t>& v, const char* flag,
                    const std::string& context) {
  if (!v) throw InputError(std::string(flag) + " is required for " + context);
  return *v;
}

void write_json(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

std::string csv_number(const Json& v) { return v.is_null() ? "" : v.dump(); }

// --- bound -------------------------------------------------------------------

int run_bound(const BoundOptions& o, std::ostream& out) {
  const auto formula = parse_formula(o.formula);
  if (!formula) throw InputError("--formula: unknown formula '" + o.formula + "'");
  const std::string ctx = "--formula " + o.formula;

  BoundReport report;
  switch (*formula) {
    case Formula::kThm2:
      report = min_points_thm2(o.eps, require(o.d, "--d", ctx), o.delta);
      break;
    case Formula::kThm3:
      if (!o.p) throw InputError("--p is required for " + ctx);
      report = min_points_thm3(o.eps, require(o.d, "--d", ctx), o.r, *o.p);
      break;
    case Formula::kCorollary:
      report = corollary_bound(o.eps, require(o.d, "--d", ctx), o.r);
      break;
    case Formula::kSukharev:
      report = sukharev_report(require(o.d, "--d", ctx), require(o.n, "--n", ctx));
      break;
    case Formula::kCertificate:
      report = certificate_report(require(o.n, "--n", ctx), require(o.d, "--d", ctx), o.delta);
      break;
    case Formula::kD0Threshold:
      if (!o.p) throw InputError("--p is required for " + ctx);
      report = d0_threshold(o.r, *o.p);
      break;
  }

  Json config;
  config["formula"] = o.formula;
  config["d"] = o.d ? Json(*o.d) : Json(nullptr);
  config["r"] = o.r;
  config["delta"] = o.delta;
  config["eps"] = o.eps;
  config["p"] = o.p ? Json(*o.p) : Json(nullptr);
  config["n"] = o.n ? Json(*o.n) : Json(nullptr);
  config["log_space"] = o.log_space;
  write_json(out, envelope("bound", std::move(config), to_json(report, o.log_space)));
  return kExitOk;
}

// --- node sets -------------------------------------------------------------

struct ResolvedNodes {
  PointSet points;
  std::string label;
};

ResolvedNodes resolve_nodes(const NodeOptions& o, std::uint64_t seed,
                            const std::optional<std::string>& default_rule) {
  if (o.points && o.rule) throw InputError("--points and --rule are mutually exclusive");
  if (o.points) {
    PointSet pts = load_points(*o.points);
    if (o.d && *o.d != pts.dim()) {
      throw InputError("--d " + std::to_string(*o.d) + " does not match the point file (d=" +
                       std::to_string(pts.dim()) + ")");
    }
    return {std::move(pts), "file:" + *o.points};
  }
  const auto rule = o.rule ? o.rule : default_rule;
  if (!rule) throw InputError("one of --points or --rule is required");
  if (!o.d) throw InputError("--d is required with --rule");
  const RuleSpec spec = parse_rule(*rule, *o.d, seed);
  return {build_points(spec), rule_label(spec)};
}

void add_node_options(CLI::App* app, NodeOptions& o) {
  app->add_option("--points", o.points, "Point-set CSV file");
  app->add_option("--rule", o.rule, "midpoint:<m> or random:<n>");
  app->add_option("--d", o.d, "Dimension");
}

// --- attack ------------------------------------------------------------------

int run_attack(const AttackOptions& o, unsigned threads, std::ostream& out) {
  const ResolvedNodes nodes = resolve_nodes(o.nodes, o.seed, std::nullopt);
  AttackConfig config{
      .order = o.r,
      .delta = o.delta,
      .measure_samples = o.samples_measure,
      .integral_samples = o.samples_integral,
      .inner_samples = o.inner_samples,
      .seed = o.seed,
      .threads = threads,
  };
  const AttackReport report = attack(nodes.points, config);

  Json cfg;
  cfg["nodes"] = nodes.label;
  cfg["d"] = nodes.points.dim();
  cfg["r"] = o.r;
  cfg["delta"] = o.delta;
  cfg["samples_measure"] = o.samples_measure;
  cfg["samples_integral"] = o.samples_integral;
  cfg["inner_samples"] = o.inner_samples;
  cfg["seed"] = o.seed;
  write_json(out, envelope("attack", std::move(cfg), to_json(report)));
  return kExitOk;
}

// --- verify ------------------------------------------------------------------

int run_verify(const VerifyOptions& o, unsigned threads, std::ostream& out) {
  VerifyBudget budget = VerifyBudget{}.scaled(o.budget);
  budget.threads = threads;

  NodeOptions node_opts = o.nodes;
  if (!node_opts.d && !node_opts.points) node_opts.d = 2;
  const ResolvedNodes nodes = resolve_nodes(node_opts, o.seed, std::string("random:10"));

  std::vector<CheckOutcome> outcomes;
  if (o.suite == "conv") {
    outcomes = check_convolution_suite(nodes.points, o.r, o.delta, budget, o.seed);
  } else if (o.suite == "class") {
    const FoolingFunction f(nodes.points, SmoothingSchedule::uniform(o.delta, o.r),
                            budget.inner_samples, o.seed);
    outcomes = check_class_membership(f, budget, o.seed);
  } else if (o.suite == "tilde") {
    outcomes = check_tilde_membership(nodes.points, o.r, o.p, budget, o.seed);
  } else {
    throw InputError("--suite: expected conv, class or tilde, got '" + o.suite + "'");
  }

  std::size_t failures = 0;
  std::size_t inconclusive = 0;
  for (const auto& c : outcomes) {
    failures += failed(c) ? 1 : 0;
    inconclusive += c.inconclusive ? 1 : 0;
  }

  if (o.format == "csv") {
    out << "property_id,condition,passed,inconclusive,observed,observed_std_error,bound,"
           "tolerance,trials,seed\n";
    for (const auto& c : outcomes) {
      const Json j = to_json(c);
      out << j["property_id"].get<std::string>() << ',' << j["condition"].get<std::string>()
          << ',' << j["passed"].dump() << ',' << j["inconclusive"].dump() << ','
          << csv_number(j["observed"]) << ',' << csv_number(j["observed_std_error"]) << ','
          << csv_number(j["bound"]) << ',' << j["tolerance"].dump() << ',' << c.trials << ','
          << c.seed << '\n';
    }
  } else {
    Json cfg;
    cfg["suite"] = o.suite;
    cfg["nodes"] = nodes.label;
    cfg["d"] = nodes.points.dim();
    cfg["r"] = o.r;
    cfg["delta"] = o.delta;
    cfg["p"] = o.p;
    cfg["seed"] = o.seed;
    cfg["budget"] = o.budget;
    Json list = Json::array();
    for (const auto& c : outcomes) list.push_back(to_json(c));
    Json result;
    result["outcomes"] = std::move(list);
    result["failed"] = failures;
    result["inconclusive"] = inconclusive;
    write_json(out, envelope("verify", std::move(cfg), std::move(result)));
  }
  return failures ? kExitCheckFailed : kExitOk;
}

// --- gen ---------------------------------------------------------------------

int run_gen(const GenOptions& o, std::ostream& out) {
  const RuleSpec spec = parse_rule(o.rule, o.d, o.seed);
  const PointSet points = build_points(spec);
  save_points(o.out, points);

  Json cfg;
  cfg["rule"] = o.rule;
  cfg["d"] = o.d;
  cfg["seed"] = o.seed;
  cfg["out"] = o.out;
  Json result;
  result["n"] = points.size();
  result["d"] = points.dim();
  result["path"] = o.out;
  write_json(out, envelope("gen", std::move(cfg), std::move(result)));
  return kExitOk;
}

// --- volume ------------------------------------------------------------------

int run_volume(const VolumeOptions& o, std::ostream& out) {
  if (o.d == 0) throw InputError("--d must be >= 1");
  if (!(o.delta > 0.0)) throw InputError("--delta must be > 0");
  const double radius = o.delta * std::sqrt(static_cast<double>(o.d));

  Json result;
  result["log_unit_ball_volume"] = number_or_null(log_unit_ball_volume(o.d));
  result["unit_ball_volume"] = number_or_null(ball_volume(o.d, 1.0));
  result["radius"] = radius;
  result["log_ball_volume"] = number_or_null(ball_volume(o.d, radius, Scale::kLog));
  result["ball_volume"] = number_or_null(ball_volume(o.d, radius));
  result["log_upper_bound"] =
      number_or_null(static_cast<double>(o.d) * (std::log(o.delta) + 0.5 * log_two_pi_e()));
  result["upper_bound"] = number_or_null(ball_volume_upper_bound(o.d, o.delta));
  result["slice_ratio"] = o.d >= 2 ? number_or_null(slice_ratio(o.d)) : Json(nullptr);

  if (o.format == "csv") {
    std::string header;
    std::string row;
    header += "d,delta";
    row += std::to_string(o.d) + ',' + Json(o.delta).dump();
    for (const auto& [key, v] : result.items()) {
      header += ',' + key;
      row += ',' + csv_number(v);
    }
    out << header << '\n' << row << '\n';
    return kExitOk;
  }

  Json cfg;
  cfg["d"] = o.d;
  cfg["delta"] = o.delta;
  write_json(out, envelope("volume", std::move(cfg), std::move(result)));
  return kExitOk;
}

}  // namespace

unsigned thread_cap_from_env() {
  const char* raw = std::getenv(kThreadsEnv);
  if (raw == nullptr || *raw == '\0') return std::max(1u, std::thread::hardware_concurrency());
  char* end = nullptr;
  const long v = std::strtol(raw, &end, 10);
  if (*end != '\0' || v <= 0) {
    throw InputError(std::string(kThreadsEnv) + " must be a positive integer");
  }
  return static_cast<unsigned>(v);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fooling-function lower bounds for cubature rules", "cubadv"};
  app.require_subcommand(1);

  BoundOptions bound;
  auto* bound_cmd = app.add_subcommand("bound", "Evaluate a closed-form lower bound");
  bound_cmd->add_option("--formula", bound.formula,
                        "thm2 | thm3 | corollary | sukharev | certificate | d0")
      ->required();
  bound_cmd->add_option("--d", bound.d, "Dimension");
  bound_cmd->add_option("--r", bound.r, "Smoothness order")->capture_default_str();
  bound_cmd->add_option("--delta", bound.delta, "Ball radius scale")->capture_default_str();
  bound_cmd->add_option("--eps", bound.eps, "Target error")->capture_default_str();
  bound_cmd->add_option("--p", bound.p, "Exponent parameter");
  bound_cmd->add_option("--n", bound.n, "Number of nodes");
  bound_cmd->add_flag("--log-space", bound.log_space, "Report the natural log only");

  AttackOptions attack_opts;
  auto* attack_cmd = app.add_subcommand("attack", "Certify a node set with a fooling function");
  add_node_options(attack_cmd, attack_opts.nodes);
  attack_cmd->add_option("--r", attack_opts.r)->capture_default_str();
  attack_cmd->add_option("--delta", attack_opts.delta)->capture_default_str();
  attack_cmd->add_option("--samples-measure", attack_opts.samples_measure)->capture_default_str();
  attack_cmd->add_option("--samples-integral", attack_opts.samples_integral)
      ->capture_default_str();
  attack_cmd->add_option("--inner-samples", attack_opts.inner_samples)->capture_default_str();
  attack_cmd->add_option("--seed", attack_opts.seed)->capture_default_str();

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "Run the statistical property checks");
  verify_cmd->add_option("--suite", verify.suite, "conv | class | tilde")->required();
  add_node_options(verify_cmd, verify.nodes);
  verify_cmd->add_option("--r", verify.r)->capture_default_str();
  verify_cmd->add_option("--delta", verify.delta)->capture_default_str();
  verify_cmd->add_option("--p", verify.p)->capture_default_str();
  verify_cmd->add_option("--seed", verify.seed)->capture_default_str();
  verify_cmd->add_option("--budget", verify.budget, "Relative effort multiplier")
      ->capture_default_str();
  verify_cmd->add_option("--format", verify.format, "json | csv")->capture_default_str();

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Write a node set as CSV");
  gen_cmd->add_option("--rule", gen.rule, "midpoint:<m> or random:<n>")->required();
  gen_cmd->add_option("--d", gen.d)->required();
  gen_cmd->add_option("--seed", gen.seed)->capture_default_str();
  gen_cmd->add_option("--out", gen.out)->required();

  VolumeOptions volume;
  auto* volume_cmd = app.add_subcommand("volume", "Ball volumes and volume bounds");
  volume_cmd->add_option("--d", volume.d)->required();
  volume_cmd->add_option("--delta", volume.delta)->capture_default_str();
  volume_cmd->add_option("--format", volume.format, "json | csv")->capture_default_str();

  std::vector<const char*> argv{"cubadv"};
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }

  for (const std::string* fmt : {&verify.format, &volume.format}) {
    if (*fmt != "json" && *fmt != "csv") {
      err << "error: --format must be json or csv\n";
      return kExitInputError;
    }
  }

  try {
    if (bound_cmd->parsed()) return run_bound(bound, out);
    if (attack_cmd->parsed()) return run_attack(attack_opts, thread_cap_from_env(), out);
    if (verify_cmd->parsed()) return run_verify(verify, thread_cap_from_env(), out);
    if (gen_cmd->parsed()) return run_gen(gen, out);
    if (volume_cmd->parsed()) return run_volume(volume, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace cubadv::cli
