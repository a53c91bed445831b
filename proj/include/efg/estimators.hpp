// Unbiased gradient estimators: exact (degenerate), external/opponent/chance
// sampling, outcome sampling with an arbitrary positive sampling strategy,
// balanced outcome sampling, and a sample-averaging wrapper; all with
// nodes-touched accounting.
#pragma once

#include <cstdint>
#include <memory>

#include "efg/rng.hpp"
#include "efg/strategy.hpp"

namespace efg {

struct GradientVector {
  int owner = 1;
  Vec values;
  long long touched = 0;  // game-tree nodes visited to produce the estimate
};

// Action-sampling hook. Production code draws via inverse CDF over the local
// distribution in action index order; tests may substitute an exhaustive
// enumerator to walk the estimator's entire sample space.
class Sampler {
 public:
  virtual ~Sampler() = default;
  virtual int sample(const double* probs, int n) = 0;
};

class RngSampler : public Sampler {
 public:
  explicit RngSampler(Rng rng) : rng_(rng) {}
  int sample(const double* probs, int n) override {
    const double u = rng_.uniform();
    double cum = 0.0;
    for (int i = 0; i < n; ++i) {
      cum += probs[i];
      if (u < cum) return i;
    }
    return n - 1;
  }

 private:
  Rng rng_;
};

enum class EstimatorKind {
  Exact,
  External,
  Opponent,
  Chance,
  Outcome,
  BalancedOutcome,
};

struct EstimatorConfig {
  EstimatorKind kind = EstimatorKind::Exact;
  int samples_per_estimate = 1;
};

// Non-stochastic baseline; touched = full tree size.
GradientVector exact_estimate(const GameTree& game, int owner,
                              const SequenceFormStrategy& opponent);

// Samples one action at chance and opponent nodes, branches on all owner
// actions; writes the owner-side payoff at each sampled leaf. Range constant
// M~ = Delta.
GradientVector external_sampling_estimate(const GameTree& game, int owner,
                                          const SequenceFormStrategy& opponent,
                                          Sampler& sampler);

// As external sampling but only the named part of the tree is sampled.
GradientVector opponent_sampling_estimate(const GameTree& game, int owner,
                                          const SequenceFormStrategy& opponent,
                                          Sampler& sampler);
GradientVector chance_sampling_estimate(const GameTree& game, int owner,
                                        const SequenceFormStrategy& opponent,
                                        Sampler& sampler);

// Samples a single root-to-leaf path using w at owner nodes; returns
// (owner-side payoff / w[sigma_owner(z)]) e_z. Range constant
// M~ = Delta * max_sigma 1/w[sigma].
GradientVector outcome_sampling_estimate(const GameTree& game, int owner,
                                         const SequenceFormStrategy& opponent,
                                         const SequenceFormStrategy& w,
                                         Sampler& sampler);

// Outcome sampling with w = balanced_strategy(game, owner); M~ is at most
// (|Sigma_owner| - 1) * Delta.
GradientVector balanced_outcome_sampling_estimate(
    const GameTree& game, int owner, const SequenceFormStrategy& opponent,
    Sampler& sampler);

// Stateful estimator bound to a configuration; the balanced sampling strategy
// is precomputed once.
class Estimator {
 public:
  Estimator(const GameTree& game, int owner, EstimatorConfig config);

  // Empirical mean of config.samples_per_estimate independent base estimates;
  // touched sums over constituents.
  GradientVector estimate(const SequenceFormStrategy& opponent,
                          Sampler& sampler) const;

  const EstimatorConfig& config() const { return config_; }

 private:
  GradientVector one(const SequenceFormStrategy& opponent,
                     Sampler& sampler) const;
  const GameTree* game_;
  int owner_;
  EstimatorConfig config_;
  SequenceFormStrategy w_;  // outcome-sampling strategy (balanced or uniform)
};

}  // namespace efg
