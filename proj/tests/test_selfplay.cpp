#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "efg/selfplay.hpp"

using namespace efg;

namespace {

RunConfig base_config(GameVariant variant, Algorithm algo,
                      EstimatorKind estimator) {
  RunConfig c;
  c.game.variant = variant;
  c.algorithm = algo;
  c.stepsize = 1.0;
  c.estimator.kind = estimator;
  c.budget_traversals = 1e12;
  c.max_iterations = 100;
  c.measure_every = 1;
  c.seed = 42;
  return c;
}

}  // namespace

TEST_CASE("folk lemma holds along exact self-play") {
  for (GameVariant variant : {GameVariant::MatchingPennies, GameVariant::Kuhn})
    for (Algorithm algo :
         {Algorithm::RegretMatching, Algorithm::Ftrl, Algorithm::Omd}) {
      RunConfig c = base_config(variant, algo, EstimatorKind::Exact);
      GameTree game = build_game(c.game);
      RunRecord rec = run(game, c);
      REQUIRE(rec.iterations == 100);
      REQUIRE(rec.series.size() == 100);
      const double tol = 1e-9 * game.payoff_range();
      for (const MeasurePoint& pt : rec.series) {
        const double avg_regret =
            (pt.regret1 + pt.regret2) / static_cast<double>(pt.iteration);
        CHECK(pt.gap >= -tol);
        CHECK(pt.gap <= avg_regret + tol);
      }
    }
}

TEST_CASE("exact self-play drives the gap down") {
  RunConfig c = base_config(GameVariant::Kuhn, Algorithm::RegretMatching,
                            EstimatorKind::Exact);
  c.max_iterations = 400;
  GameTree game = build_game(c.game);
  RunRecord rec = run(game, c);
  CHECK(rec.series.back().gap < 0.1 * rec.series.front().gap);
  CHECK(!validate(game, rec.xbar).has_value());
  CHECK(!validate(game, rec.ybar).has_value());
}

TEST_CASE("runs are deterministic in the seed") {
  RunConfig c = base_config(GameVariant::Kuhn, Algorithm::RegretMatching,
                            EstimatorKind::External);
  GameTree game = build_game(c.game);
  RunRecord a = run(game, c);
  RunRecord b = run(game, c);
  REQUIRE(a.series.size() == b.series.size());
  for (size_t i = 0; i < a.series.size(); ++i) {
    CHECK(a.series[i].gap == b.series[i].gap);
    CHECK(a.series[i].nodes_touched == b.series[i].nodes_touched);
  }
  c.seed = 43;
  RunRecord d = run(game, c);
  bool different = false;
  for (size_t i = 0; i < std::min(a.series.size(), d.series.size()); ++i)
    different = different || a.series[i].gap != d.series[i].gap;
  CHECK(different);
}

TEST_CASE("nodes touched is nondecreasing and budget-limited") {
  RunConfig c = base_config(GameVariant::Kuhn, Algorithm::Ftrl,
                            EstimatorKind::External);
  c.max_iterations = 0;
  c.budget_traversals = 10.0;
  GameTree game = build_game(c.game);
  RunRecord rec = run(game, c);
  long long prev = 0;
  for (const auto& pt : rec.series) {
    CHECK(pt.nodes_touched >= prev);
    prev = pt.nodes_touched;
    CHECK(pt.gap >= 0.0);
  }
  const long long budget =
      static_cast<long long>(c.budget_traversals * game.num_nodes());
  // One iteration may overshoot by at most two traversals' worth of nodes.
  CHECK(rec.nodes_touched >= budget);
  CHECK(rec.nodes_touched <= budget + 2LL * game.num_nodes());
}

TEST_CASE("automatic measurement cadence for stochastic runs") {
  RunConfig c = base_config(GameVariant::Kuhn, Algorithm::RegretMatching,
                            EstimatorKind::Outcome);
  c.estimator.samples_per_estimate = 10;
  c.max_iterations = 0;
  c.budget_traversals = 5.0;
  c.measure_every = 0;  // auto: every 1% of the node budget
  GameTree game = build_game(c.game);
  RunRecord rec = run(game, c);
  // At most one measurement per iteration and at most ~100 scheduled points
  // (plus the final measurement).
  CHECK(rec.series.size() >= 1);
  CHECK(rec.series.size() <= static_cast<size_t>(rec.iterations) + 1);
  CHECK(rec.series.size() <= 110);
  // Exact runs default to measuring every iteration.
  RunConfig e = base_config(GameVariant::Kuhn, Algorithm::RegretMatching,
                            EstimatorKind::Exact);
  e.measure_every = 0;
  e.max_iterations = 20;
  RunRecord exact_rec = run(game, e);
  CHECK(exact_rec.series.size() == 20);
}

TEST_CASE("average_strategy") {
  GameTree game = build_game({GameVariant::Kuhn});
  SequenceFormStrategy a = uniform_strategy(game, 1);
  SequenceFormStrategy b = treeplex_min(game, 1,
                                        Vec::Zero(game.num_sequences(1))).br;
  SequenceFormStrategy avg = average_strategy({a, b});
  CHECK(!validate(game, avg).has_value());
  CHECK((avg.values - 0.5 * (a.values + b.values)).lpNorm<Eigen::Infinity>() ==
        0.0);
  CHECK_THROWS_AS(average_strategy({}), std::invalid_argument);
}

TEST_CASE("run_batch aligns seeds and is worker-count invariant") {
  RunConfig c = base_config(GameVariant::Kuhn, Algorithm::RegretMatching,
                            EstimatorKind::External);
  c.max_iterations = 50;
  GameTree game = build_game(c.game);
  const std::vector<std::uint64_t> seeds = {1, 2, 3, 4};
  BatchResult serial = run_batch(game, c, seeds, 1);
  BatchResult parallel = run_batch(game, c, seeds, 4);
  REQUIRE(serial.records.size() == 4);
  REQUIRE(serial.summary.size() == parallel.summary.size());
  for (size_t k = 0; k < serial.summary.size(); ++k) {
    CHECK(serial.summary[k].mean_gap == parallel.summary[k].mean_gap);
    CHECK(serial.summary[k].std_gap == parallel.summary[k].std_gap);
    CHECK(serial.summary[k].std_gap >= 0.0);
  }
  // Mean of per-seed gaps at the first measurement matches the summary.
  double mean = 0.0;
  for (const auto& r : serial.records) mean += r.series[0].gap;
  mean /= 4.0;
  CHECK(serial.summary[0].mean_gap == doctest::Approx(mean).epsilon(1e-15));

  BatchResult single = run_batch(game, c, {7}, 1);
  for (const auto& pt : single.summary) CHECK(pt.std_gap == 0.0);
}

TEST_CASE("invalid configurations are rejected") {
  GameTree game = build_game({GameVariant::Kuhn});
  RunConfig c = base_config(GameVariant::Kuhn, Algorithm::RegretMatching,
                            EstimatorKind::Exact);
  c.budget_traversals = 0.0;
  CHECK_THROWS_AS(run(game, c), std::invalid_argument);
  c.budget_traversals = 1.0;
  CHECK_THROWS_AS(run_batch(game, c, {}, 1), std::invalid_argument);
}
