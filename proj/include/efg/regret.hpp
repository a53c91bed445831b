// Regret minimizers over the treeplex: regret matching (counterfactual
// decomposition), FTRL, and OMD with a dilated-entropy distance-generating
// function.
#pragma once

#include <memory>
#include <vector>

#include "efg/strategy.hpp"

namespace efg {

// Online minimizer of linear losses over one player's treeplex. Deterministic
// given the observation history.
class RegretMinimizer {
 public:
  virtual ~RegretMinimizer() = default;
  virtual SequenceFormStrategy next_strategy() = 0;
  virtual void observe(const Vec& loss) = 0;
};

enum class DgfWeightScheme { Recursive, Constant };

// beta_I = 1 (constant) or 1 + max_a sum_{I' in C_(I,a)} beta_I' (recursive),
// computed leaves-up; deterministic for a fixed game.
std::vector<double> dgf_weights(const GameTree& game, int player,
                                DgfWeightScheme scheme);

// Dilated negative entropy d(z) = sum_I beta_I z[sigma(I)]
// sum_a (z[(I,a)]/z[sigma(I)]) log(z[(I,a)]/z[sigma(I)]).
class DilatedEntropyDGF {
 public:
  DilatedEntropyDGF(const GameTree& game, int player,
                    DgfWeightScheme scheme = DgfWeightScheme::Recursive);

  double value(const Vec& z) const;
  // Gradient w.r.t. sequence entries; the empty-sequence component is the
  // constant -sum of root infoset weights (z[0] is fixed at 1).
  Vec grad(const Vec& z) const;
  // Bregman divergence D(z || zp); zp must be strictly positive.
  double bregman(const Vec& z, const Vec& zp) const;

  const std::vector<double>& weights() const { return beta_; }
  const GameTree& game() const { return *game_; }
  int player() const { return player_; }

 private:
  const GameTree* game_;
  int player_;
  std::vector<double> beta_;
};

// argmin_z { <g, z> + (1/eta) d(z) } over the treeplex, in closed form
// bottom-up (beta-weighted softmax with log-sum-exp value propagation).
// The result is strictly positive. With a center zp, minimizes
// <g, z> + (1/eta) D(z || zp) instead.
SequenceFormStrategy treeplex_prox(const DilatedEntropyDGF& dgf, const Vec& g,
                                   double eta);
SequenceFormStrategy treeplex_prox(const DilatedEntropyDGF& dgf, const Vec& g,
                                   double eta, const Vec& center);

// Regret matching with the counterfactual (laminar) decomposition.
class RegretMatching : public RegretMinimizer {
 public:
  RegretMatching(const GameTree& game, int player);
  SequenceFormStrategy next_strategy() override;
  void observe(const Vec& loss) override;

 private:
  const GameTree* game_;
  int player_;
  std::vector<std::vector<double>> cum_regret_;  // per infoset, per action
  std::vector<std::vector<double>> behavior_;    // current local distributions
};

class FTRL : public RegretMinimizer {
 public:
  FTRL(const GameTree& game, int player, double eta,
       DgfWeightScheme scheme = DgfWeightScheme::Recursive);
  SequenceFormStrategy next_strategy() override;
  void observe(const Vec& loss) override;

 private:
  DilatedEntropyDGF dgf_;
  double eta_;
  Vec cum_loss_;
};

class OMD : public RegretMinimizer {
 public:
  OMD(const GameTree& game, int player, double eta,
      DgfWeightScheme scheme = DgfWeightScheme::Recursive);
  SequenceFormStrategy next_strategy() override;
  void observe(const Vec& loss) override;

 private:
  DilatedEntropyDGF dgf_;
  double eta_;
  Vec iterate_;
};

// Incremental regret bookkeeping: R^T = sum_t l_t^T z^t - min_z (sum_t l_t)^T z
// with the minimum computed exactly by best response on the cumulated
// gradient.
class RegretTracker {
 public:
  RegretTracker(const GameTree& game, int player);
  void add(const SequenceFormStrategy& z, const Vec& loss);
  double regret() const;

 private:
  const GameTree* game_;
  int player_;
  double played_ = 0.0;
  Vec cum_loss_;
};

// max over the treeplex of sum_t l_t^T (z_t - z) for an aligned history.
double measure_regret(const GameTree& game, int player,
                      const std::vector<SequenceFormStrategy>& strategies,
                      const std::vector<Vec>& losses);

}  // namespace efg
