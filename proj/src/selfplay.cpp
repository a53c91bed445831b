#include "efg/selfplay.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <memory>
#include <thread>

namespace efg {

namespace {

std::unique_ptr<RegretMinimizer> make_minimizer(const GameTree& game,
                                                int player,
                                                const RunConfig& config) {
  switch (config.algorithm) {
    case Algorithm::RegretMatching:
      return std::make_unique<RegretMatching>(game, player);
    case Algorithm::Ftrl:
      return std::make_unique<FTRL>(game, player, config.stepsize);
    case Algorithm::Omd:
      return std::make_unique<OMD>(game, player, config.stepsize);
  }
  throw std::invalid_argument("unknown algorithm");
}

}  // namespace

RunRecord run(const GameTree& game, const RunConfig& config) {
  if (config.budget_traversals <= 0.0)
    throw std::invalid_argument("budget must be positive");
  const auto t0 = std::chrono::steady_clock::now();

  auto min1 = make_minimizer(game, 1, config);
  auto min2 = make_minimizer(game, 2, config);
  Estimator est1(game, 1, config.estimator);
  Estimator est2(game, 2, config.estimator);
  RngSampler sampler1(Rng::split(config.seed, 1));
  RngSampler sampler2(Rng::split(config.seed, 2));
  RegretTracker tracker1(game, 1), tracker2(game, 2);

  const long long budget_nodes = static_cast<long long>(
      config.budget_traversals * static_cast<double>(game.num_nodes()));
  const bool exact = config.estimator.kind == EstimatorKind::Exact;
  long long measure_every = config.measure_every;
  long long measure_nodes_step = 0;
  if (measure_every <= 0) {
    if (exact) {
      measure_every = 1;
    } else {
      measure_every = 0;  // schedule by nodes instead
      measure_nodes_step = std::max<long long>(budget_nodes / 100, 1);
    }
  }
  long long next_measure_nodes = measure_nodes_step;

  RunRecord rec;
  Vec xsum = Vec::Zero(game.num_sequences(1));
  Vec ysum = Vec::Zero(game.num_sequences(2));
  long long t = 0;
  long long touched = 0;

  auto averages = [&](long long iters) {
    SequenceFormStrategy xbar{1, xsum / static_cast<double>(iters)};
    SequenceFormStrategy ybar{2, ysum / static_cast<double>(iters)};
    return std::make_pair(std::move(xbar), std::move(ybar));
  };
  auto measure = [&]() {
    auto [xbar, ybar] = averages(t);
    rec.series.push_back(MeasurePoint{t, touched,
                                      saddle_point_gap(game, xbar, ybar),
                                      tracker1.regret(), tracker2.regret()});
  };

  while (touched < budget_nodes &&
         (config.max_iterations <= 0 || t < config.max_iterations)) {
    SequenceFormStrategy x = min1->next_strategy();
    SequenceFormStrategy y = min2->next_strategy();
    GradientVector l1 = est1.estimate(y, sampler1);
    GradientVector l2 = est2.estimate(x, sampler2);
    touched += l1.touched + l2.touched;
    ++t;
    xsum += x.values;
    ysum += y.values;
    tracker1.add(x, l1.values);
    tracker2.add(y, l2.values);
    min1->observe(l1.values);
    min2->observe(l2.values);
    const bool due = measure_every > 0
                         ? (t % measure_every == 0)
                         : (touched >= next_measure_nodes);
    if (due) {
      measure();
      if (measure_every <= 0)
        while (next_measure_nodes <= touched)
          next_measure_nodes += measure_nodes_step;
    }
  }
  if (t > 0) {
    if (rec.series.empty() || rec.series.back().iteration != t) measure();
    auto [xbar, ybar] = averages(t);
    rec.xbar = std::move(xbar);
    rec.ybar = std::move(ybar);
  }
  rec.iterations = t;
  rec.nodes_touched = touched;
  rec.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return rec;
}

SequenceFormStrategy average_strategy(
    const std::vector<SequenceFormStrategy>& history) {
  if (history.empty()) throw std::invalid_argument("empty strategy history");
  SequenceFormStrategy avg = history[0];
  for (size_t i = 1; i < history.size(); ++i) avg.values += history[i].values;
  avg.values /= static_cast<double>(history.size());
  return avg;
}

BatchResult run_batch(const GameTree& game, const RunConfig& config,
                      const std::vector<std::uint64_t>& seeds, int workers) {
  if (seeds.empty()) throw std::invalid_argument("need at least one seed");
  BatchResult out;
  out.records.resize(seeds.size());
  if (workers < 1) workers = 1;
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    while (true) {
      const size_t i = next.fetch_add(1);
      if (i >= seeds.size()) break;
      RunConfig c = config;
      c.seed = seeds[i];
      out.records[i] = run(game, c);
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  size_t points = out.records[0].series.size();
  for (const auto& r : out.records) points = std::min(points, r.series.size());
  for (size_t k = 0; k < points; ++k) {
    double mean_nodes = 0.0, mean = 0.0;
    for (const auto& r : out.records) {
      mean_nodes += static_cast<double>(r.series[k].nodes_touched);
      mean += r.series[k].gap;
    }
    mean /= static_cast<double>(out.records.size());
    mean_nodes /= static_cast<double>(out.records.size());
    double var = 0.0;
    for (const auto& r : out.records) {
      const double d = r.series[k].gap - mean;
      var += d * d;
    }
    const double std_gap =
        out.records.size() > 1
            ? std::sqrt(var / static_cast<double>(out.records.size() - 1))
            : 0.0;
    out.summary.push_back(BatchPoint{mean_nodes, mean, std_gap});
  }
  return out;
}

}  // namespace efg
