// Experiment runner: configures game x algorithm x estimator x stepsize
// batches, runs seeded self-play, and writes per-combination and summary CSV
// files. Also exposes the convergence-bound calculators via the `bounds`
// subcommand and a `--smoke` integration gate over the tiny games.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "efg/bounds.hpp"
#include "efg/games.hpp"
#include "efg/selfplay.hpp"

namespace {

using namespace efg;

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

GameSpec make_spec(const std::string& game, int ranks, int horizon, int shots) {
  GameSpec spec;
  if (game == "leduc") {
    spec.variant = GameVariant::Leduc;
    if (ranks > 0) spec.leduc_ranks = ranks;
  } else if (game == "goofspiel") {
    spec.variant = GameVariant::Goofspiel;
    if (ranks > 0) spec.goofspiel_ranks = ranks;
  } else if (game == "search") {
    spec.variant = GameVariant::Search;
    if (horizon > 0) spec.search_horizon = horizon;
  } else if (game == "battleship") {
    spec.variant = GameVariant::Battleship;
    if (shots > 0) spec.battleship_shots = shots;
  } else if (game == "matching-pennies") {
    spec.variant = GameVariant::MatchingPennies;
  } else if (game == "kuhn") {
    spec.variant = GameVariant::Kuhn;
  } else {
    throw CLI::ValidationError("--game", "unknown game '" + game + "'");
  }
  return spec;
}

Algorithm parse_algorithm(const std::string& s) {
  if (s == "cfr" || s == "regret-matching" || s == "rm")
    return Algorithm::RegretMatching;
  if (s == "ftrl") return Algorithm::Ftrl;
  if (s == "omd") return Algorithm::Omd;
  throw CLI::ValidationError("--algorithm", "unknown algorithm '" + s + "'");
}

std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::RegretMatching: return "cfr";
    case Algorithm::Ftrl: return "ftrl";
    case Algorithm::Omd: return "omd";
  }
  return "?";
}

EstimatorKind parse_estimator(const std::string& s) {
  if (s == "exact") return EstimatorKind::Exact;
  if (s == "external") return EstimatorKind::External;
  if (s == "opponent") return EstimatorKind::Opponent;
  if (s == "chance") return EstimatorKind::Chance;
  if (s == "outcome") return EstimatorKind::Outcome;
  if (s == "balanced-outcome") return EstimatorKind::BalancedOutcome;
  throw CLI::ValidationError("--estimator", "unknown estimator '" + s + "'");
}

std::string estimator_name(EstimatorKind k) {
  switch (k) {
    case EstimatorKind::Exact: return "exact";
    case EstimatorKind::External: return "external";
    case EstimatorKind::Opponent: return "opponent";
    case EstimatorKind::Chance: return "chance";
    case EstimatorKind::Outcome: return "outcome";
    case EstimatorKind::BalancedOutcome: return "balanced-outcome";
  }
  return "?";
}

bool is_outcome_kind(EstimatorKind k) {
  return k == EstimatorKind::Outcome || k == EstimatorKind::BalancedOutcome;
}

std::string stepsize_tag(double eta) {
  std::ostringstream os;
  os << eta;
  std::string s = os.str();
  for (char& c : s)
    if (c == '.') c = 'p';
  return s;
}

struct Combination {
  Algorithm algorithm;
  EstimatorKind estimator;
  double stepsize;  // ignored (and omitted from filenames) for cfr
  std::string file_stem;
};

void write_csvs(const std::filesystem::path& out_dir, const Combination& c,
                const std::vector<std::uint64_t>& seeds,
                const BatchResult& batch) {
  {
    std::ofstream f(out_dir / (c.file_stem + ".csv"), std::ios::binary);
    f << "seed,iteration,nodes_touched,gap\n";
    for (size_t i = 0; i < seeds.size(); ++i)
      for (const auto& pt : batch.records[i].series)
        f << seeds[i] << ',' << pt.iteration << ',' << pt.nodes_touched << ','
          << fmt17(pt.gap) << '\n';
  }
  {
    std::ofstream f(out_dir / (c.file_stem + "_summary.csv"), std::ios::binary);
    f << "nodes_touched,mean_gap,std_gap\n";
    for (const auto& pt : batch.summary)
      f << fmt17(pt.nodes_touched) << ',' << fmt17(pt.mean_gap) << ','
        << fmt17(pt.std_gap) << '\n';
  }
}

int run_experiments(const GameSpec& spec,
                    const std::vector<Algorithm>& algorithms,
                    const std::vector<EstimatorKind>& estimators,
                    const std::vector<double>& stepsizes, int seeds_flag,
                    int samples_flag, double budget, long long measure_every,
                    const std::string& out_dir_str, int workers) {
  std::filesystem::path out_dir(out_dir_str);
  std::filesystem::create_directories(out_dir);
  const GameTree game = build_game(spec);
  std::cerr << spec.name() << ": " << game.num_nodes() << " nodes, "
            << game.num_sequences(1) << "/" << game.num_sequences(2)
            << " sequences\n";

  std::vector<Combination> combos;
  for (Algorithm a : algorithms)
    for (EstimatorKind e : estimators) {
      std::string stem = spec.name() + "_" + algorithm_name(a) + "_" +
                         estimator_name(e);
      if (a == Algorithm::RegretMatching) {
        combos.push_back({a, e, 0.0, stem});
      } else {
        for (double eta : stepsizes)
          combos.push_back({a, e, eta, stem + "_eta" + stepsize_tag(eta)});
      }
    }

  for (const auto& c : combos) {
    const int n_seeds =
        seeds_flag > 0 ? seeds_flag : (is_outcome_kind(c.estimator) ? 10 : 50);
    const int n_samples =
        samples_flag > 0 ? samples_flag
                         : (is_outcome_kind(c.estimator) ? 100 : 1);
    std::vector<std::uint64_t> seeds(static_cast<size_t>(n_seeds));
    for (int i = 0; i < n_seeds; ++i) seeds[static_cast<size_t>(i)] =
        static_cast<std::uint64_t>(i + 1);

    RunConfig rc;
    rc.game = spec;
    rc.algorithm = c.algorithm;
    rc.stepsize = c.stepsize;
    rc.estimator.kind = c.estimator;
    rc.estimator.samples_per_estimate = n_samples;
    rc.budget_traversals = budget;
    rc.measure_every = measure_every;
    BatchResult batch = run_batch(game, rc, seeds, workers);
    write_csvs(out_dir, c, seeds, batch);
    double final_mean = batch.summary.empty() ? 0.0
                                              : batch.summary.back().mean_gap;
    std::cerr << c.file_stem << ": " << n_seeds << " seeds, final mean gap "
              << fmt17(final_mean) << "\n";
  }
  return 0;
}

int run_smoke(const std::string& out_dir, int workers) {
  const std::vector<GameSpec> tiny = {
      {GameVariant::MatchingPennies}, {GameVariant::Kuhn}};
  const std::vector<Algorithm> algos = {Algorithm::RegretMatching,
                                        Algorithm::Ftrl, Algorithm::Omd};
  const std::vector<EstimatorKind> ests = {
      EstimatorKind::Exact,   EstimatorKind::External,
      EstimatorKind::Opponent, EstimatorKind::Chance,
      EstimatorKind::Outcome, EstimatorKind::BalancedOutcome};
  std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);
  int failures = 0;
  for (const auto& spec : tiny) {
    const GameTree game = build_game(spec);
    for (Algorithm a : algos)
      for (EstimatorKind e : ests) {
        RunConfig rc;
        rc.game = spec;
        rc.algorithm = a;
        rc.stepsize = 1.0;
        rc.estimator.kind = e;
        rc.estimator.samples_per_estimate = 1;
        rc.budget_traversals = 1e12;  // iteration-capped instead
        rc.max_iterations = 100;
        rc.measure_every = 100;
        rc.seed = 1;
        Combination c{a, e, 1.0,
                      spec.name() + "_" + algorithm_name(a) + "_" +
                          estimator_name(e) + "_smoke"};
        BatchResult batch = run_batch(game, rc, {1}, workers);
        const RunRecord& r = batch.records[0];
        const bool ok = r.iterations == 100 && !r.series.empty() &&
                        r.series.back().gap >= 0.0;
        std::cerr << (ok ? "ok   " : "FAIL ") << c.file_stem << " gap="
                  << fmt17(r.series.back().gap) << "\n";
        failures += ok ? 0 : 1;
        write_csvs(dir, c, {1}, batch);
      }
  }
  return failures == 0 ? 0 : 1;
}

int bounds_report(double regret1, double regret2, double M, double Mtilde1,
                  double Mtilde2, double sigma, double delta, long long T,
                  double p, double L, double D0) {
  auto row = [](const std::string& label, double v) {
    std::printf("%-28s %s\n", label.c_str(), fmt17(v).c_str());
  };
  std::printf("%-28s %s\n", "bound", "value");
  row("azuma_regret_p1",
      azuma_regret_bound({regret1, M, Mtilde1, T, p}));
  row("azuma_regret_p2",
      azuma_regret_bound({regret2, M, Mtilde2, T, p}));
  row("gap_probability",
      gap_probability_bound({regret1, regret2, delta, Mtilde1, Mtilde2, T, p}));
  if (T >= 8)
    row("freedman_regret",
        freedman_regret_bound({regret1, M, Mtilde1, sigma, T, p}));
  else
    std::printf("%-28s %s\n", "freedman_regret", "n/a (requires T >= 8)");
  row("deterministic_regret", deterministic_regret_bound(L, D0, T));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sequence-form game solver and experiment runner"};
  app.require_subcommand(0, 1);

  std::string game = "leduc";
  int ranks = 0, horizon = 0, shots = 0;
  std::vector<std::string> algorithm_flags = {"cfr"};
  std::vector<std::string> estimator_flags = {"external"};
  std::vector<double> stepsizes = {0.1, 1.0, 10.0, 100.0};
  int seeds = 0;    // 0 = default (50 tree-traversal / 10 outcome estimators)
  int samples = 0;  // 0 = default (1 tree-traversal / 100 outcome estimators)
  double budget = 50.0;
  long long measure_every = 0;
  std::string out_dir = "out";
  int workers = 1;
  bool smoke = false;

  app.add_option("--game", game,
                 "leduc|goofspiel|search|battleship|matching-pennies|kuhn");
  app.add_option("--ranks", ranks, "Leduc/Goofspiel deck size");
  app.add_option("--horizon", horizon, "Search horizon");
  app.add_option("--shots", shots, "Battleship shots per player");
  app.add_option("--algorithm", algorithm_flags, "cfr|ftrl|omd (repeatable)");
  app.add_option("--estimator", estimator_flags,
                 "exact|external|opponent|chance|outcome|balanced-outcome");
  app.add_option("--stepsize", stepsizes, "eta values for FTRL/OMD")
      ->check(CLI::PositiveNumber);
  app.add_option("--seeds", seeds, "number of seeds (1..N)")
      ->check(CLI::PositiveNumber);
  app.add_option("--samples", samples, "samples per gradient estimate")
      ->check(CLI::PositiveNumber);
  app.add_option("--budget-traversals", budget,
                 "node budget in full-tree traversal units")
      ->check(CLI::PositiveNumber);
  app.add_option("--measure-every", measure_every,
                 "gap measurement cadence in iterations (0 = auto)");
  app.add_option("--out-dir", out_dir, "output directory for CSV files");
  app.add_option("--workers", workers, "max concurrent seed runs")
      ->check(CLI::PositiveNumber);
  app.add_flag("--smoke", smoke,
               "run every tiny game x algorithm x estimator for 100 "
               "iterations");

  auto* bounds_cmd =
      app.add_subcommand("bounds", "print the convergence-bound table");
  double b_r1 = 0.0, b_r2 = 0.0, b_M = 1.0, b_Mt1 = 1.0, b_Mt2 = 1.0,
         b_sigma = 0.0, b_delta = 1.0, b_p = 0.05, b_L = 1.0, b_D0 = 1.0;
  long long b_T = 8;
  bounds_cmd->add_option("--regret1", b_r1, "deterministic regret R~_1^T");
  bounds_cmd->add_option("--regret2", b_r2, "deterministic regret R~_2^T");
  bounds_cmd->add_option("--M", b_M, "range constant of the exact losses");
  bounds_cmd->add_option("--Mtilde1", b_Mt1, "estimate range constant, p1");
  bounds_cmd->add_option("--Mtilde2", b_Mt2, "estimate range constant, p2");
  bounds_cmd->add_option("--sigma", b_sigma,
                         "sqrt of summed conditional variances");
  bounds_cmd->add_option("--delta", b_delta, "payoff range");
  bounds_cmd->add_option("--T", b_T, "iteration count");
  bounds_cmd->add_option("--p", b_p, "failure probability");
  bounds_cmd->add_option("--L", b_L, "strong convexity constant");
  bounds_cmd->add_option("--D0", b_D0, "initial divergence D(z* || z^1)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (bounds_cmd->parsed())
      return bounds_report(b_r1, b_r2, b_M, b_Mt1, b_Mt2, b_sigma, b_delta,
                           b_T, b_p, b_L, b_D0);
    if (smoke) return run_smoke(out_dir, workers);

    std::vector<Algorithm> algorithms;
    for (const auto& s : algorithm_flags)
      algorithms.push_back(parse_algorithm(s));
    std::vector<EstimatorKind> estimators;
    for (const auto& s : estimator_flags)
      estimators.push_back(parse_estimator(s));
    const GameSpec spec = make_spec(game, ranks, horizon, shots);
    return run_experiments(spec, algorithms, estimators, stepsizes, seeds,
                           samples, budget, measure_every, out_dir, workers);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
