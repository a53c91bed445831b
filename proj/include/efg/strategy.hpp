// Sequence-form strategy arithmetic: validation, expected utility, gradients,
// best response, saddle-point gap, and the balanced strategy.
#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "efg/game_tree.hpp"

namespace efg {

using Vec = Eigen::VectorXd;

// Vector over one player's sequences satisfying the treeplex flow
// constraints: z[0] = 1 and sum_a z[(I,a)] = z[sigma(I)] for every infoset.
struct SequenceFormStrategy {
  int owner = 1;
  Vec values;
};

struct StrategyViolation {
  std::string detail;
};

std::optional<StrategyViolation> validate(const GameTree& game,
                                          const SequenceFormStrategy& s,
                                          double tol = 1e-9);

// behavioral[I] is a distribution over infoset I's actions (infoset-id order).
SequenceFormStrategy behavioral_to_sequence(
    const GameTree& game, int player,
    const std::vector<std::vector<double>>& behavioral);

SequenceFormStrategy uniform_strategy(const GameTree& game, int player);

// ubar_2 = sum_z u_2(z) x[sigma_1(z)] y[sigma_2(z)] c[sigma_c(z)] in one
// traversal; ubar_1 = -ubar_2.
double expected_utility(const GameTree& game, const SequenceFormStrategy& x,
                        const SequenceFormStrategy& y);

// Loss vector for `owner` given the opponent's strategy: for owner 1 returns
// l_1 with l_1^T x = ubar_2(x, y); for owner 2 returns l_2 with
// l_2^T y = -ubar_2(x, y). Computed by one full traversal. If `touched` is
// non-null it is incremented by the number of nodes visited.
Vec gradient(const GameTree& game, int owner,
             const SequenceFormStrategy& opponent,
             long long* touched = nullptr);

// Maximizes the responder's own expected utility against the opponent's
// strategy; ties broken by lowest action index.
struct BestResponse {
  double value;                 // responder's expected utility
  SequenceFormStrategy br;      // pure strategy attaining it
};
BestResponse best_response_value(const GameTree& game, int player,
                                 const SequenceFormStrategy& opponent);

// xi(x, y) = max_yhat x^T A2 yhat - min_xhat xhat^T A2 y >= 0.
double saddle_point_gap(const GameTree& game, const SequenceFormStrategy& x,
                        const SequenceFormStrategy& y);

// m[seq] = number of terminal sequences in the subtree rooted at seq.
std::vector<long long> balanced_counts(const GameTree& game, int player);

// w*[(I,a)] = (m_(I,a) / sum_a' m_(I,a')) * w*[sigma(I)]; every entry is at
// least 1 / (|Sigma_i| - 1).
SequenceFormStrategy balanced_strategy(const GameTree& game, int player);

// Minimum of l^T z over the treeplex, with the minimizing pure strategy;
// used for regret measurement. Ties broken by lowest action index.
BestResponse treeplex_min(const GameTree& game, int player, const Vec& loss);

}  // namespace efg
