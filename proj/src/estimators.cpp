#include "efg/estimators.hpp"

#include <cmath>
#include <vector>

namespace efg {

namespace {

// Local behavioral distribution of `player` at infoset `is` induced by the
// sequence-form strategy; uniform where the infoset is unreachable.
void local_distribution(const Infoset& is, const Vec& seq_values,
                        std::vector<double>& out) {
  out.resize(static_cast<size_t>(is.num_actions));
  const double reach = seq_values[is.parent_seq];
  if (reach > 0.0) {
    for (int a = 0; a < is.num_actions; ++a)
      out[static_cast<size_t>(a)] = seq_values[is.first_seq + a] / reach;
  } else {
    for (auto& p : out) p = 1.0 / is.num_actions;
  }
}

struct TraversalCtx {
  const GameTree* game;
  int owner;
  const SequenceFormStrategy* opponent;
  Sampler* sampler;
  bool sample_chance;
  bool sample_opponent;
  Vec* out;
  long long touched = 0;
  std::vector<double> scratch;
};

void traverse(TraversalCtx& ctx, int v) {
  const GameTree& game = *ctx.game;
  const Node& nd = game.node(v);
  ++ctx.touched;
  if (nd.kind == NodeKind::Terminal) {
    // Owner-side payoff: u_2 when estimating l_1, u_1 when estimating l_2.
    double w = ctx.owner == 1 ? -nd.u1 : nd.u1;
    if (!ctx.sample_opponent)
      w *= ctx.opponent->values[nd.seq[ctx.owner == 1 ? 1 : 0]];
    if (!ctx.sample_chance) w *= nd.chance_reach;
    (*ctx.out)[nd.seq[ctx.owner - 1]] += w;
    return;
  }
  if (nd.kind == NodeKind::Chance) {
    if (ctx.sample_chance) {
      const int a = ctx.sampler->sample(game.chance_probs(v), nd.num_children);
      traverse(ctx, nd.first_child + a);
    } else {
      for (int a = 0; a < nd.num_children; ++a)
        traverse(ctx, nd.first_child + a);
    }
    return;
  }
  if (nd.player == ctx.owner || !ctx.sample_opponent) {
    for (int a = 0; a < nd.num_children; ++a)
      traverse(ctx, nd.first_child + a);
    return;
  }
  // Sampled opponent decision.
  const Infoset& is =
      game.infosets(nd.player)[static_cast<size_t>(nd.infoset)];
  local_distribution(is, ctx.opponent->values, ctx.scratch);
  const int a = ctx.sampler->sample(ctx.scratch.data(), nd.num_children);
  traverse(ctx, nd.first_child + a);
}

GradientVector sampling_estimate(const GameTree& game, int owner,
                                 const SequenceFormStrategy& opponent,
                                 Sampler& sampler, bool sample_chance,
                                 bool sample_opponent) {
  GradientVector g;
  g.owner = owner;
  g.values = Vec::Zero(game.num_sequences(owner));
  TraversalCtx ctx{&game,          owner,        &opponent, &sampler,
                   sample_chance,  sample_opponent, &g.values};
  traverse(ctx, game.root());
  g.touched = ctx.touched;
  return g;
}

}  // namespace

GradientVector exact_estimate(const GameTree& game, int owner,
                              const SequenceFormStrategy& opponent) {
  GradientVector g;
  g.owner = owner;
  g.touched = 0;
  g.values = gradient(game, owner, opponent, &g.touched);
  return g;
}

GradientVector external_sampling_estimate(const GameTree& game, int owner,
                                          const SequenceFormStrategy& opponent,
                                          Sampler& sampler) {
  return sampling_estimate(game, owner, opponent, sampler, true, true);
}

GradientVector opponent_sampling_estimate(const GameTree& game, int owner,
                                          const SequenceFormStrategy& opponent,
                                          Sampler& sampler) {
  return sampling_estimate(game, owner, opponent, sampler, false, true);
}

GradientVector chance_sampling_estimate(const GameTree& game, int owner,
                                        const SequenceFormStrategy& opponent,
                                        Sampler& sampler) {
  return sampling_estimate(game, owner, opponent, sampler, true, false);
}

GradientVector outcome_sampling_estimate(const GameTree& game, int owner,
                                         const SequenceFormStrategy& opponent,
                                         const SequenceFormStrategy& w,
                                         Sampler& sampler) {
  GradientVector g;
  g.owner = owner;
  g.values = Vec::Zero(game.num_sequences(owner));
  std::vector<double> scratch;
  int v = game.root();
  long long touched = 0;
  while (true) {
    const Node& nd = game.node(v);
    ++touched;
    if (nd.kind == NodeKind::Terminal) {
      const double wz = w.values[nd.seq[owner - 1]];
      if (wz <= 0.0)
        throw std::invalid_argument(
            "outcome sampling reached a sequence with w = 0");
      const double payoff = owner == 1 ? -nd.u1 : nd.u1;
      g.values[nd.seq[owner - 1]] = payoff / wz;
      break;
    }
    int a;
    if (nd.kind == NodeKind::Chance) {
      a = sampler.sample(game.chance_probs(v), nd.num_children);
    } else {
      const Infoset& is =
          game.infosets(nd.player)[static_cast<size_t>(nd.infoset)];
      const Vec& values =
          nd.player == owner ? w.values : opponent.values;
      local_distribution(is, values, scratch);
      a = sampler.sample(scratch.data(), nd.num_children);
    }
    v = nd.first_child + a;
  }
  g.touched = touched;
  return g;
}

GradientVector balanced_outcome_sampling_estimate(
    const GameTree& game, int owner, const SequenceFormStrategy& opponent,
    Sampler& sampler) {
  const SequenceFormStrategy w = balanced_strategy(game, owner);
  return outcome_sampling_estimate(game, owner, opponent, w, sampler);
}

Estimator::Estimator(const GameTree& game, int owner, EstimatorConfig config)
    : game_(&game), owner_(owner), config_(config) {
  if (config.samples_per_estimate < 1)
    throw std::invalid_argument("samples_per_estimate must be >= 1");
  if (config.kind == EstimatorKind::BalancedOutcome)
    w_ = balanced_strategy(game, owner);
  else if (config.kind == EstimatorKind::Outcome)
    w_ = uniform_strategy(game, owner);
}

GradientVector Estimator::one(const SequenceFormStrategy& opponent,
                              Sampler& sampler) const {
  switch (config_.kind) {
    case EstimatorKind::Exact:
      return exact_estimate(*game_, owner_, opponent);
    case EstimatorKind::External:
      return external_sampling_estimate(*game_, owner_, opponent, sampler);
    case EstimatorKind::Opponent:
      return opponent_sampling_estimate(*game_, owner_, opponent, sampler);
    case EstimatorKind::Chance:
      return chance_sampling_estimate(*game_, owner_, opponent, sampler);
    case EstimatorKind::Outcome:
    case EstimatorKind::BalancedOutcome:
      return outcome_sampling_estimate(*game_, owner_, opponent, w_, sampler);
  }
  throw std::invalid_argument("unknown estimator kind");
}

GradientVector Estimator::estimate(const SequenceFormStrategy& opponent,
                                   Sampler& sampler) const {
  GradientVector acc = one(opponent, sampler);
  const int n = config_.samples_per_estimate;
  for (int i = 1; i < n; ++i) {
    GradientVector e = one(opponent, sampler);
    acc.values += e.values;
    acc.touched += e.touched;
  }
  if (n > 1) acc.values /= static_cast<double>(n);
  return acc;
}

}  // namespace efg
