// rmtlab CLI: bound evaluation, Monte Carlo verification grids, convergence
// experiments, inequality sweeps and sampler calibration reports.
//
// Exit codes: 0 = success / verified, 1 = a verification or certificate
// failed, 2 = usage or precondition error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "grid.hpp"
#include "rmtlab/bounds.hpp"
#include "rmtlab/errors.hpp"
#include "rmtlab/json_io.hpp"
#include "rmtlab/monte_carlo.hpp"
#include "rmtlab/numerics.hpp"
#include "rmtlab/proof_inequalities.hpp"

using nlohmann::json;
using namespace rmt;

namespace {

constexpr std::uint64_t kDefaultSeed = 42;

int fail_usage(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return 2;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PreconditionError("cannot open output file: " + path);
  out << content;
}

DistributionSpec spec_from_flags(const std::string& dist, std::optional<double> alpha,
                                 std::optional<double> t_max) {
  if (dist == "gaussian") return gaussian_spec();
  if (dist == "rademacher") return rademacher_spec();
  if (dist == "pareto" || dist.empty()) {
    if (!alpha) throw PreconditionError("--alpha is required for the pareto law");
    if (t_max) return calibrate_truncated_pareto(*alpha, *t_max);
    return calibrate_pareto(*alpha);
  }
  throw PreconditionError("unknown distribution: " + dist);
}

// Report for a bare tail condition (no calibrated law): q is taken at tail
// equality, the sharp case for heavy-tail floors.
BoundReport report_from_tail_equality(int p, int n, double K, const TailCondition& tail) {
  BoundReport r;
  r.p = p;
  r.n = n;
  r.K = K;
  r.proposition_bound = proposition_lower_bound(p, n, K, tail);  // validates inputs
  r.q = std::min(tail.c0 * std::pow(static_cast<double>(n) * K, -0.5 * tail.alpha), 1.0);
  r.bonferroni_bound = bonferroni_lower_bound(n, r.q);
  r.chain_bound = chain_lower_bound(p, n, r.q);
  r.case_label = case_split(p, n, r.q);
  r.silverstein_limit =
      silverstein_limit(static_cast<double>(p) / static_cast<double>(n), 1.0);
  return r;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------- bound ----

struct BoundArgs {
  int p = 0, n = 0;
  double K = 1.0;
  double alpha = 0.0;
  std::optional<double> c0;
  std::optional<double> t_max;
};

int cmd_bound(const BoundArgs& args) {
  BoundReport report;
  if (args.c0) {
    report = report_from_tail_equality(args.p, args.n, args.K,
                                       TailCondition{args.alpha, *args.c0});
  } else {
    const DistributionSpec spec = spec_from_flags("pareto", args.alpha, args.t_max);
    report = make_bound_report(args.p, args.n, args.K, spec);
  }
  std::cout << to_json(report) << "\n";
  return 0;
}

// --------------------------------------------------------------- verify ----

struct VerifyArgs {
  std::string grid_file;
  std::string out_csv;
  std::string out_json;
};

int cmd_verify(const VerifyArgs& args) {
  std::ifstream in(args.grid_file);
  if (!in) return fail_usage("cannot read grid file: " + args.grid_file);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  const cli::GridConfig config = cli::GridConfig::from_json_text(text);
  config.validate();

  const cli::GridOutcome outcome = cli::run_grid(config);
  const std::string csv = cli::grid_csv(outcome);
  if (args.out_csv.empty()) {
    std::cout << csv;
  } else {
    write_file(args.out_csv, csv);
  }
  if (!args.out_json.empty()) {
    write_file(args.out_json, cli::grid_json(outcome));
  }
  std::cerr << "cells=" << outcome.cells.size() << " trials=" << outcome.total_trials
            << " closing_violations=" << outcome.closing_violations
            << " all_pass=" << (outcome.all_pass ? "true" : "false") << "\n";
  return outcome.all_pass ? 0 : 1;
}

// ------------------------------------------------------------- simulate ----

struct SimulateArgs {
  int p = 0, n = 0;
  std::string dist = "pareto";
  std::optional<double> alpha;
  std::optional<double> t_max;
  std::vector<double> Ks;
  std::int64_t trials = 1000;
  double confidence = 0.999;
  std::uint64_t seed = kDefaultSeed;
  std::string out_prefix;
};

int cmd_simulate(const SimulateArgs& args) {
  EnsembleConfig config;
  config.p = args.p;
  config.n = args.n;
  config.spec = spec_from_flags(args.dist, args.alpha, args.t_max);
  config.master_seed = args.seed;

  std::vector<double> Ks = args.Ks.empty() ? std::vector<double>{1.0} : args.Ks;
  for (double K : Ks) {
    if (!(K >= 1.0)) throw PreconditionError("simulate: every K must be >= 1");
  }

  const RunResult run = run_trials(config, Ks.front(), args.trials, args.confidence);

  json estimates = json::array();
  for (double K : Ks) {
    const TailEstimate row =
        estimate_event(run.trials, TailEvent::row_norm_ge_Kn, K, config.n, args.confidence);
    const TailEstimate lam =
        estimate_event(run.trials, TailEvent::lambda_max_ge_K, K, config.n, args.confidence);
    estimates.push_back({{"K", K},
                         {"row_norm", json::parse(to_json(row))},
                         {"lambda_max", json::parse(to_json(lam))}});
  }
  json summary{{"spec", json::parse(to_json(config.spec))},
               {"p", config.p},
               {"n", config.n},
               {"master_seed", config.master_seed},
               {"trials", args.trials},
               {"confidence", args.confidence},
               {"estimates", estimates}};
  const std::string summary_text = summary.dump(2) + "\n";
  std::cout << summary_text;

  if (!args.out_prefix.empty()) {
    std::string jsonl;
    std::string csv = "trial_index,lambda_max,max_row_sq_norm\n";
    for (const TrialStatistics& t : run.trials) {
      jsonl += trial_to_json_line(t) + "\n";
      csv += std::to_string(t.trial_index) + "," + fmt17(t.lambda_max) + "," +
             fmt17(t.max_row_sq_norm) + "\n";
    }
    write_file(args.out_prefix + ".trials.jsonl", jsonl);
    write_file(args.out_prefix + ".csv", csv);
    write_file(args.out_prefix + ".summary.json", summary_text);
  }
  return 0;
}

// ---------------------------------------------------------- convergence ----

struct ConvergenceArgs {
  std::string dist = "gaussian";
  std::optional<double> alpha;
  double beta = 0.0;
  std::vector<int> n_list;
  std::int64_t trials = 50;
  std::uint64_t seed = kDefaultSeed;
  std::string out_csv;
};

int cmd_convergence(const ConvergenceArgs& args) {
  if (!(args.beta > 0.0 && args.beta <= 1.0)) {
    throw PreconditionError("convergence: beta must lie in (0, 1] (p <= n)");
  }
  if (args.n_list.empty()) throw PreconditionError("convergence: --n-list is empty");

  const DistributionSpec spec = spec_from_flags(args.dist, args.alpha, std::nullopt);
  if (spec.tail && spec.tail->alpha <= 4.0) {
    std::cerr << "warning: n^4 P(|w| >= n) does not vanish for this law (alpha = "
              << spec.tail->alpha << " <= 4); the convergence hypothesis fails\n";
  }
  const double limit = silverstein_limit(args.beta, spec.analytic_variance);

  std::string csv = "n,p,median_lambda_max,limit,relative_error,n4_tail\n";
  for (int n : args.n_list) {
    if (n < 1) throw PreconditionError("convergence: every n must be >= 1");
    const int p = std::max(1, static_cast<int>(std::lround(args.beta * n)));
    EnsembleConfig config;
    config.p = p;
    config.n = n;
    config.spec = spec;
    config.master_seed = mix64(args.seed ^ mix64(static_cast<std::uint64_t>(n)));

    const RunResult run = run_trials(config, 1.0, args.trials, 0.999);
    std::vector<double> lambdas;
    lambdas.reserve(run.trials.size());
    for (const TrialStatistics& t : run.trials) lambdas.push_back(t.lambda_max);
    const double med = num::median(std::move(lambdas));
    const double rel_err = std::fabs(med - limit) / limit;

    csv += std::to_string(n) + "," + std::to_string(p) + "," + fmt17(med) + "," +
           fmt17(limit) + "," + fmt17(rel_err) + "," +
           fmt17(silverstein_tail_check(spec, n)) + "\n";
  }
  if (args.out_csv.empty()) {
    std::cout << csv;
  } else {
    write_file(args.out_csv, csv);
  }
  return 0;
}

// -------------------------------------------------------- inequalities ----

int cmd_inequalities(std::int64_t samples, std::uint64_t seed) {
  const SweepCertificate certs[] = {sweep_geometric(samples, seed),
                                    sweep_linear(samples, seed)};
  json out = json::array();
  bool all_pass = true;
  for (const SweepCertificate& cert : certs) {
    out.push_back({{"inequality", cert.name},
                   {"samples", cert.samples},
                   {"max_violation", cert.max_violation},
                   {"pass", cert.pass}});
    all_pass = all_pass && cert.pass;
  }
  std::cout << out.dump(2) << "\n";
  return all_pass ? 0 : 1;
}

// --------------------------------------------------------- sample-dist ----

struct SampleDistArgs {
  double alpha = 0.0;
  std::optional<double> t_max;
  std::int64_t samples = 1000000;
  std::uint64_t seed = kDefaultSeed;
};

int cmd_sample_dist(const SampleDistArgs& args) {
  const DistributionSpec spec = spec_from_flags("pareto", args.alpha, args.t_max);
  const double c0 = spec.tail->c0;
  const double alpha = spec.tail->alpha;
  const std::int64_t N = args.samples;
  if (N < 1000) throw PreconditionError("sample-dist: need at least 1000 samples");

  StreamRng rng(args.seed, 0x5D15ULL);
  std::vector<double> squares(static_cast<std::size_t>(N));
  std::vector<double> magnitudes(static_cast<std::size_t>(N));
  double mean = 0.0;
  for (std::int64_t i = 0; i < N; ++i) {
    const double w = sample(spec, rng);
    mean += w;
    squares[static_cast<std::size_t>(i)] = w * w;
    magnitudes[static_cast<std::size_t>(i)] = std::fabs(w);
  }
  mean /= static_cast<double>(N);
  const double mom_variance = num::median_of_means(squares, 32);

  const double mean_tol = std::max(0.005, 5.0 / std::sqrt(static_cast<double>(N)));
  const bool mean_pass = std::fabs(mean) <= mean_tol;
  const bool variance_pass = std::fabs(mom_variance - 1.0) <= 0.05;

  json tail_rows = json::array();
  bool tail_pass = true;
  for (double t : {1.0, 2.0, 4.0, 8.0}) {
    if (t > spec.condition_valid_to()) continue;
    const double q = c0 * std::pow(t, -alpha);
    std::int64_t hits = 0;
    for (double m : magnitudes) hits += m >= t ? 1 : 0;
    const double q_hat = static_cast<double>(hits) / static_cast<double>(N);
    const double sigma_rel = std::sqrt(q * (1.0 - q) / static_cast<double>(N)) / q;
    const double floor = (1.0 - 4.0 * sigma_rel) * q;
    const bool row_pass = q_hat >= floor;
    tail_pass = tail_pass && row_pass;
    tail_rows.push_back({{"t", t},
                         {"exact", exact_tail(spec, t)},
                         {"empirical", q_hat},
                         {"floor", floor},
                         {"pass", row_pass}});
  }

  const bool all_pass = mean_pass && variance_pass && tail_pass;
  json out{{"spec", json::parse(to_json(spec))},
           {"samples", N},
           {"mean", mean},
           {"mean_pass", mean_pass},
           {"mom_variance", mom_variance},
           {"variance_pass", variance_pass},
           {"tail", tail_rows},
           {"pass", all_pass}};
  std::cout << out.dump(2) << "\n";
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo laboratory for heavy-tailed sample covariance spectra"};
  app.require_subcommand(1);

  BoundArgs bound_args;
  auto* bound = app.add_subcommand("bound", "Evaluate the closed-form bound report");
  bound->add_option("--p", bound_args.p, "rows of W")->required();
  bound->add_option("--n", bound_args.n, "columns of W")->required();
  bound->add_option("--K", bound_args.K, "threshold, >= 1")->required();
  bound->add_option("--alpha", bound_args.alpha, "tail exponent")->required();
  bound->add_option("--c0", bound_args.c0, "explicit tail constant (tail equality)");
  bound->add_option("--t-max", bound_args.t_max, "upper truncation of the law");

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Run a verification grid from JSON");
  verify->add_option("grid", verify_args.grid_file, "GridConfig JSON file")->required();
  verify->add_option("--out", verify_args.out_csv, "CSV output path (default stdout)");
  verify->add_option("--json-out", verify_args.out_json, "JSON output path");

  SimulateArgs sim_args;
  auto* simulate = app.add_subcommand("simulate", "Run one ensemble and persist trials");
  simulate->add_option("--p", sim_args.p)->required();
  simulate->add_option("--n", sim_args.n)->required();
  simulate->add_option("--dist", sim_args.dist, "pareto|gaussian|rademacher");
  simulate->add_option("--alpha", sim_args.alpha);
  simulate->add_option("--t-max", sim_args.t_max);
  simulate->add_option("--K", sim_args.Ks, "thresholds (repeatable)");
  simulate->add_option("--trials", sim_args.trials);
  simulate->add_option("--confidence", sim_args.confidence);
  simulate->add_option("--seed", sim_args.seed);
  simulate->add_option("--out-prefix", sim_args.out_prefix);

  ConvergenceArgs conv_args;
  auto* convergence =
      app.add_subcommand("convergence", "Median lambda_max against the spectral limit");
  convergence->add_option("--dist", conv_args.dist, "gaussian|rademacher|pareto");
  convergence->add_option("--alpha", conv_args.alpha);
  convergence->add_option("--beta", conv_args.beta, "aspect ratio p/n")->required();
  convergence->add_option("--n-list", conv_args.n_list, "sample sizes")
      ->required()
      ->delimiter(',');
  convergence->add_option("--trials", conv_args.trials);
  convergence->add_option("--seed", conv_args.seed);
  convergence->add_option("--out", conv_args.out_csv);

  std::int64_t ineq_samples = 100000;
  std::uint64_t ineq_seed = kDefaultSeed;
  auto* inequalities =
      app.add_subcommand("inequalities", "Randomized sweeps of the proof inequalities");
  inequalities->add_option("--samples", ineq_samples);
  inequalities->add_option("--seed", ineq_seed);

  SampleDistArgs dist_args;
  auto* sample_dist =
      app.add_subcommand("sample-dist", "Calibration report for a heavy-tailed law");
  sample_dist->add_option("--alpha", dist_args.alpha)->required();
  sample_dist->add_option("--t-max", dist_args.t_max);
  sample_dist->add_option("--samples", dist_args.samples);
  sample_dist->add_option("--seed", dist_args.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (bound->parsed()) return cmd_bound(bound_args);
    if (verify->parsed()) return cmd_verify(verify_args);
    if (simulate->parsed()) return cmd_simulate(sim_args);
    if (convergence->parsed()) return cmd_convergence(conv_args);
    if (inequalities->parsed()) return cmd_inequalities(ineq_samples, ineq_seed);
    if (sample_dist->parsed()) return cmd_sample_dist(dist_args);
  } catch (const Error& e) {
    return fail_usage(e.what());
  } catch (const std::exception& e) {
    return fail_usage(e.what());
  }
  return fail_usage("no subcommand given");
}
