// Self-play driver: two regret minimizers exchanging (estimated) losses,
// strategy averaging, gap measurement, and run recording.
#pragma once

#include <cstdint>
#include <vector>

#include "efg/estimators.hpp"
#include "efg/games.hpp"
#include "efg/regret.hpp"

namespace efg {

enum class Algorithm { RegretMatching, Ftrl, Omd };

struct RunConfig {
  GameSpec game;
  Algorithm algorithm = Algorithm::RegretMatching;
  double stepsize = 1.0;  // eta, for FTRL/OMD
  EstimatorConfig estimator;
  double budget_traversals = 50.0;  // nodes-touched limit in full-tree units
  // Gap measurement cadence in iterations; 0 = auto (every iteration for the
  // exact estimator, every 1% of the budget for stochastic estimators).
  long long measure_every = 0;
  long long max_iterations = 0;  // 0 = limited by the node budget only
  std::uint64_t seed = 0;
};

struct MeasurePoint {
  long long iteration;
  long long nodes_touched;
  double gap;       // xi(xbar, ybar), exact best response
  double regret1;   // measured regret of player 1's observed loss sequence
  double regret2;
};

struct RunRecord {
  std::vector<MeasurePoint> series;
  SequenceFormStrategy xbar, ybar;
  long long iterations = 0;
  long long nodes_touched = 0;
  double wall_seconds = 0.0;
};

// Iterates the Fig.-style loop: query x^t, y^t; estimate the two loss
// vectors; feed them back; maintain running averages; record the gap per
// schedule; stop when nodes touched reaches the budget.
RunRecord run(const GameTree& game, const RunConfig& config);

// Uniform (unweighted) average of a strategy history.
SequenceFormStrategy average_strategy(
    const std::vector<SequenceFormStrategy>& history);

struct BatchPoint {
  double nodes_touched;  // mean across seeds at this measurement ordinal
  double mean_gap;
  double std_gap;  // sample standard deviation (0 for a single seed)
};

struct BatchResult {
  std::vector<RunRecord> records;  // per seed, in input order
  std::vector<BatchPoint> summary;
};

// Runs one seed per entry of `seeds` (concurrently up to `workers` threads)
// and aligns records by measurement ordinal.
BatchResult run_batch(const GameTree& game, const RunConfig& config,
                      const std::vector<std::uint64_t>& seeds,
                      int workers = 1);

}  // namespace efg
