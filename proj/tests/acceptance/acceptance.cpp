// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "cubadv/bounds.hpp"
#include "cubadv/estimate.hpp"
#include "cubadv/fooling.hpp"
#include "cubadv/geometry.hpp"
#include "cubadv/rules.hpp"
#include "cubadv/verify.hpp"
#include "formula_grid.hpp"
#include "high_precision.hpp"
#include "polar_grid.hpp"

namespace {

using namespace cubadv;

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
  void note(const std::string& what) {
    if (pass) detail += (detail.empty() ? "" : "; ") + what;
  }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

Verdict certificate_reproduction() {
  Verdict v;
  AttackConfig cfg;
  cfg.order = 1;
  cfg.delta = 0.01;
  cfg.measure_samples = 100'000;
  cfg.integral_samples = 100'000;
  cfg.seed = 7;
  cfg.threads = 1;
  const auto start = std::chrono::steady_clock::now();
  const AttackReport rep = attack(midpoint_product(2, 4), cfg);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const double sigma_mc = rep.measure_estimate.std_error;
  const double sigma_int = std::hypot(rep.integral_estimate.std_error, sigma_mc);
  v.require(std::abs(rep.certificate_analytic - 0.75409) <= 1e-4,
            "analytic " + fmt(rep.certificate_analytic));
  v.require(rep.certificate_mc >= rep.certificate_analytic - 3.0 * sigma_mc,
            "mc " + fmt(rep.certificate_mc) + " below analytic - 3sigma");
  v.require(rep.integral_estimate.mean >= rep.certificate_mc - 3.0 * sigma_int,
            "integral " + fmt(rep.integral_estimate.mean) + " below mc - 3sigma");
  v.require(rep.node_audit == 0.0, "node_audit " + fmt(rep.node_audit));
  v.require(secs <= 60.0, "runtime " + fmt(secs) + " s");
  v.note("analytic=" + fmt(rep.certificate_analytic) + " mc=" + fmt(rep.certificate_mc) +
         " integral=" + fmt(rep.integral_estimate.mean) + " audit=" + fmt(rep.node_audit) +
         " t=" + fmt(secs) + "s");
  return v;
}

Verdict vanishing_at_nodes() {
  Verdict v;
  const PointSet nodes = uniform_random(3, 20, 2024);
  const FoolingFunction f(nodes, SmoothingSchedule::uniform(0.05, 2), 10'000, 1);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double fast = f.evaluate(nodes[i], FastPaths::kEnabled).value;
    const double slow = f.evaluate(nodes[i], FastPaths::kDisabled).value;
    v.require(fast == 0.0 && slow == 0.0,
              "node " + std::to_string(i) + " fast=" + fmt(fast) + " slow=" + fmt(slow));
  }
  v.note("20 nodes, both paths exactly 0");
  return v;
}

Verdict lipschitz_pairs() {
  Verdict v;
  const FoolingFunction f(uniform_random(3, 10, 5), SmoothingSchedule::uniform(0.1, 1), 128, 3);
  const CheckOutcome o = check_lip(f, 10'000, 17, 128, 1);
  const double bound = 1.0 / (0.1 * std::sqrt(3.0));
  v.require(std::abs(o.bound - bound) <= 1e-12, "bound " + fmt(o.bound));
  v.require(o.observed <= bound, "max ratio " + fmt(o.observed) + " > " + fmt(bound));
  v.require(o.trials == 10'000, "pairs " + std::to_string(o.trials));
  v.note("max ratio " + fmt(o.observed) + " <= " + fmt(bound));
  return v;
}

// f_1(x) by the deterministic polar grid, for one node set in d = 2.
double polar_f1(const PointSet& nodes, double delta, double x0, double x1) {
  return oracle::polar_disk_average(
      [&](double a, double b) {
        const double p[2] = {a, b};
        return f0_eval(p, nodes, delta);
      },
      x0, x1, delta * std::sqrt(2.0), 1600, 1600);
}

Verdict derivative_lipschitz() {
  Verdict v;
  const double delta = 0.2;
  const PointSet nodes = PointSet::from_rows({{0.5, 0.5}});
  const FoolingFunction f(nodes, SmoothingSchedule::uniform(delta, 1), 10'000, 11);
  const double bound = (1.0 / (delta * std::sqrt(2.0))) * (1.0 / delta);
  const double h = delta / 20.0;

  const CheckOutcome o = check_derivative_lip(f, 1, 16, h, 5, 200'000, 1);
  v.require(std::abs(o.bound - bound) <= 1e-12, "bound " + fmt(o.bound));
  v.require(!o.inconclusive, "inconclusive, se " + fmt(o.observed_std_error));
  v.require(o.observed <= bound * 1.1,
            "observed " + fmt(o.observed) + " > " + fmt(bound * 1.1));

  // Same stencil through the Monte Carlo estimator and the polar grid.
  const VerifyTarget target = make_target(f);
  const double c = std::numbers::sqrt2 / 2.0;
  const std::vector<std::vector<double>> theta{{c, c}};
  const std::vector<std::pair<std::vector<double>, std::vector<double>>> cases{
      {{0.5 + 0.45, 0.5}, {0.5 + 0.45, 0.5 + h}},
      {{0.5 + 0.3 * c, 0.5 + 0.3 * c}, {0.5 + 0.3 * c + h, 0.5 + 0.3 * c}},
  };
  double worst_z = 0.0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& [x, y] = cases[i];
    const DifferenceRatio mc =
        difference_quotient_ratio(target, x, y, theta, h, 400'000, 1000 + i);
    auto quotient = [&](const std::vector<double>& p) {
      const double plus = polar_f1(nodes, delta, p[0] + h * c, p[1] + h * c);
      const double minus = polar_f1(nodes, delta, p[0] - h * c, p[1] - h * c);
      return (plus - minus) / (2.0 * h);
    };
    const double sep = std::hypot(x[0] - y[0], x[1] - y[1]);
    const double exact = std::abs(quotient(x) - quotient(y)) / sep;
    const double z = std::abs(mc.value - exact) / mc.std_error;
    worst_z = std::max(worst_z, z);
    v.require(z <= 3.0, "case " + std::to_string(i) + " mc " + fmt(mc.value) + " grid " +
                            fmt(exact) + " se " + fmt(mc.std_error));
    v.require(exact <= bound * 1.1, "grid ratio " + fmt(exact) + " above bound");
  }
  v.note("observed " + fmt(o.observed) + " <= " + fmt(bound * 1.1) +
         ", grid cross-check max |z| " + fmt(worst_z));
  return v;
}

Verdict integral_floor() {
  Verdict v;
  const ScalarField constant = [](std::span<const double>) { return 0.3; };
  const SmoothingSchedule schedule = SmoothingSchedule::uniform(0.1, 2);
  const McConfig mc{20'000, 9, 1};
  const MCEstimate c = integral_unit_cube(
      [&](std::span<const double> x) {
        return conv_eval_generic(constant, schedule, x, 32, 9).value;
      },
      3, mc);
  v.require(c.mean == 0.3, "constant integral " + fmt(c.mean));

  const double delta = 0.05;
  const double margin = 3.0 * delta * std::sqrt(2.0);
  const PointSet far = PointSet::from_rows({{1.0 + margin + 0.01, 0.5}, {-margin - 0.2, -0.3}});
  const FoolingFunction f(far, SmoothingSchedule::uniform(delta, 1), 1000, 4);
  const MCEstimate one = integral_fooling(f, {100'000, 10, 1});
  v.require(one.mean == 1.0 && one.std_error == 0.0, "far-node integral " + fmt(one.mean));
  v.note("constant " + fmt(c.mean) + ", far nodes " + fmt(one.mean));
  return v;
}

Verdict volume_inequalities() {
  Verdict v;
  double worst_slice = 0.0;
  for (std::size_t d = 2; d <= 500; ++d) {
    const double s = slice_ratio(d);
    worst_slice = std::max(worst_slice, s);
    v.require(s <= 1.0, "slice_ratio(" + std::to_string(d) + ") = " + fmt(s));
  }
  for (std::size_t d = 1; d <= 50; ++d) {
    for (double delta : {0.01, 0.1, 1.0}) {
      const double exact = ball_volume(d, delta * std::sqrt(static_cast<double>(d)));
      const double upper = ball_volume_upper_bound(d, delta);
      v.require(exact < upper, "d=" + std::to_string(d) + " delta=" + fmt(delta));
    }
  }
  v.note("max slice ratio " + fmt(worst_slice) + ", 150 volume cases strict");
  return v;
}

Verdict formula_oracle() {
  Verdict v;
  const auto grid = oracle::formula_grid();
  v.require(grid.size() == 30, "grid size " + std::to_string(grid.size()));
  double worst = 0.0;
  for (const auto& c : grid) {
    const double err = oracle::relative_log_error(c);
    worst = std::max(worst, err);
    v.require(err <= 1e-12, c.label + " rel " + fmt(err));
  }
  const auto r512 = min_points_thm2(0.5, 10, 0.0403278);
  v.require(r512.value && std::abs(*r512.value - 512.0) < 0.1,
            "512 case gives " + fmt(r512.value.value_or(NAN)));
  const double log_c1 = static_cast<double>(oracle::corollary_log_c(1));
  v.require(std::abs(log_c1 / -7.4e22 - 1.0) < 0.01, "oracle ln c_1 " + fmt(log_c1));
  v.note("worst rel " + fmt(worst) + ", ln c_1 = " + fmt(log_c1));
  return v;
}

Verdict substitution_identity() {
  Verdict v;
  double worst = 0.0;
  for (double eps : {0.25, 0.5, 0.75}) {
    for (std::size_t d : {2u, 5u, 10u, 100u}) {
      for (std::size_t r : {1u, 2u, 3u}) {
        for (double p : {0.1, 0.25, 0.4}) {
          const double a = min_points_thm2(eps, d, delta_for_p(d, r, p)).log_value;
          const double b = min_points_thm3(eps, d, r, p).log_value;
          const double rel = std::abs(a - b) / std::abs(b);
          worst = std::max(worst, rel);
          v.require(rel <= 1e-12, "eps=" + fmt(eps) + " d=" + std::to_string(d) +
                                      " r=" + std::to_string(r) + " p=" + fmt(p));
        }
      }
    }
  }
  v.note("108 cases, worst rel " + fmt(worst));
  return v;
}

Verdict disk_measure() {
  Verdict v;
  const double rho = 0.03 * std::sqrt(2.0);
  const MCEstimate e =
      neighborhood_measure(PointSet::from_rows({{0.5, 0.5}}), rho, {1'000'000, 42, 1});
  const double area = std::numbers::pi * rho * rho;
  v.require(std::abs(e.mean - area) <= 3.0 * e.std_error,
            "estimate " + fmt(e.mean) + " vs " + fmt(area) + " se " + fmt(e.std_error));
  v.note("estimate " + fmt(e.mean) + " area " + fmt(area) + " se " + fmt(e.std_error));
  return v;
}

std::string run_cli(const std::vector<std::string>& args, const char* threads, int& code) {
  ::setenv(cli::kThreadsEnv, threads, 1);
  std::ostringstream out, err;
  code = cli::run(args, out, err);
  ::unsetenv(cli::kThreadsEnv);
  return out.str() + err.str();
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

Verdict determinism() {
  Verdict v;
  const auto gen_path = std::filesystem::temp_directory_path() / "cubadv_acceptance_gen.csv";
  const std::vector<std::vector<std::string>> commands{
      {"bound", "--formula", "corollary", "--d", "10", "--r", "1"},
      {"attack", "--rule", "random:20", "--d", "3", "--r", "2", "--delta", "0.05",
       "--samples-measure", "50000", "--samples-integral", "5000", "--inner-samples", "300",
       "--seed", "99"},
      {"verify", "--suite", "conv", "--rule", "random:6", "--d", "2", "--r", "2", "--delta",
       "0.1", "--budget", "0.05", "--seed", "4"},
      {"verify", "--suite", "tilde", "--rule", "random:6", "--d", "2", "--r", "1", "--p", "0.25",
       "--budget", "0.05", "--seed", "4"},
      {"gen", "--rule", "random:50", "--d", "4", "--seed", "8", "--out", gen_path.string()},
      {"volume", "--d", "7", "--delta", "0.05"},
  };
  for (const auto& cmd : commands) {
    int c1 = 0, c2 = 0, c3 = 0;
    const std::string a = run_cli(cmd, "1", c1);
    const std::string file_a = cmd[0] == "gen" ? slurp(gen_path) : "";
    const std::string b = run_cli(cmd, "3", c2);
    const std::string file_b = cmd[0] == "gen" ? slurp(gen_path) : "";
    const std::string c = run_cli(cmd, "8", c3);
    v.require(c1 != cli::kExitInputError, cmd[0] + " exited " + std::to_string(c1));
    v.require(c1 == c2 && c2 == c3, cmd[0] + " exit codes differ");
    v.require(a == b && b == c && !a.empty(), cmd[0] + " output differs across thread caps");
    v.require(file_a == file_b, cmd[0] + " file differs");
  }
  std::filesystem::remove(gen_path);
  v.note(std::to_string(commands.size()) + " commands byte-identical at caps 1/3/8");
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"certificate reproduction (midpoint 4x4, d=2, r=1, delta=0.01)", certificate_reproduction},
      {"f_r vanishes at nodes (d=3, n=20, r=2)", vanishing_at_nodes},
      {"CRN Lipschitz pairs (d=3, delta=0.1, r=1, 1e4 pairs)", lipschitz_pairs},
      {"derivative Lipschitz bound with polar-grid cross-check (d=2, delta=0.2)",
       derivative_lipschitz},
      {"integral floor: constant 0.3 and far nodes 1, exact", integral_floor},
      {"slice ratio <= 1 and ball volume upper bound", volume_inequalities},
      {"formula grid vs 50-digit oracle", formula_oracle},
      {"substitution identity thm2(delta_for_p) = thm3", substitution_identity},
      {"disk measure vs pi rho^2 at m=1e6", disk_measure},
      {"byte-identical JSON across thread caps", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    failures += v.pass ? 0 : 1;
    std::printf("[%s] %2zu %s :: %s\n", v.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
