#include "efg/strategy.hpp"

#include <cmath>
#include <limits>

namespace efg {

std::optional<StrategyViolation> validate(const GameTree& game,
                                          const SequenceFormStrategy& s,
                                          double tol) {
  const SequenceIndex& si = game.seq_index(s.owner);
  if (s.values.size() != si.num_sequences)
    return StrategyViolation{"length mismatch"};
  if (std::abs(s.values[0] - 1.0) > tol)
    return StrategyViolation{"empty sequence entry != 1"};
  for (int q = 0; q < si.num_sequences; ++q)
    if (s.values[q] < 0.0)
      return StrategyViolation{"negative entry at sequence " + std::to_string(q)};
  const auto& sets = game.infosets(s.owner);
  for (size_t i = 0; i < sets.size(); ++i) {
    double sum = 0.0;
    for (int a = 0; a < sets[i].num_actions; ++a)
      sum += s.values[sets[i].first_seq + a];
    if (std::abs(sum - s.values[sets[i].parent_seq]) > tol)
      return StrategyViolation{"flow violated at infoset " + std::to_string(i)};
  }
  return std::nullopt;
}

SequenceFormStrategy behavioral_to_sequence(
    const GameTree& game, int player,
    const std::vector<std::vector<double>>& behavioral) {
  const auto& sets = game.infosets(player);
  if (behavioral.size() != sets.size())
    throw std::invalid_argument("behavioral profile size mismatch");
  SequenceFormStrategy out;
  out.owner = player;
  out.values = Vec::Zero(game.num_sequences(player));
  out.values[0] = 1.0;
  // Infosets are discovered in preorder, so a parent sequence is always
  // filled before its child infosets are visited.
  for (size_t i = 0; i < sets.size(); ++i) {
    const auto& dist = behavioral[i];
    if (static_cast<int>(dist.size()) != sets[i].num_actions)
      throw std::invalid_argument("distribution arity mismatch at infoset " +
                                  std::to_string(i));
    double sum = 0.0;
    for (double p : dist) sum += p;
    if (std::abs(sum - 1.0) > 1e-9)
      throw std::invalid_argument("distribution not normalized at infoset " +
                                  std::to_string(i));
    for (int a = 0; a < sets[i].num_actions; ++a)
      out.values[sets[i].first_seq + a] =
          out.values[sets[i].parent_seq] * dist[static_cast<size_t>(a)];
  }
  return out;
}

SequenceFormStrategy uniform_strategy(const GameTree& game, int player) {
  std::vector<std::vector<double>> beh;
  for (const auto& is : game.infosets(player))
    beh.emplace_back(static_cast<size_t>(is.num_actions),
                     1.0 / is.num_actions);
  return behavioral_to_sequence(game, player, beh);
}

double expected_utility(const GameTree& game, const SequenceFormStrategy& x,
                        const SequenceFormStrategy& y) {
  double u2 = 0.0;
  for (const Node& nd : game.nodes()) {
    if (nd.kind != NodeKind::Terminal) continue;
    u2 += (-nd.u1) * x.values[nd.seq[0]] * y.values[nd.seq[1]] *
          nd.chance_reach;
  }
  return u2;
}

Vec gradient(const GameTree& game, int owner,
             const SequenceFormStrategy& opponent, long long* touched) {
  Vec g = Vec::Zero(game.num_sequences(owner));
  const int opp_idx = owner == 1 ? 1 : 0;
  const double sign = owner == 1 ? -1.0 : 1.0;  // l1 built from u2 = -u1
  for (const Node& nd : game.nodes()) {
    if (nd.kind != NodeKind::Terminal) continue;
    g[nd.seq[owner - 1]] += sign * nd.u1 *
                            opponent.values[nd.seq[opp_idx]] *
                            nd.chance_reach;
  }
  if (touched) *touched += game.num_nodes();
  return g;
}

namespace {

// Minimizes loss^T z over the player's treeplex bottom-up; ties broken by
// lowest action index. Infoset ids are in preorder, so iterating infosets in
// reverse id order visits children before parents.
BestResponse treeplex_argmin(const GameTree& game, int player,
                             const Vec& loss) {
  const auto& sets = game.infosets(player);
  const SequenceIndex& si = game.seq_index(player);
  Vec val = loss;  // per-sequence backed-up value
  std::vector<int> choice(sets.size(), 0);
  std::vector<double> infoset_val(sets.size(), 0.0);
  for (int i = static_cast<int>(sets.size()) - 1; i >= 0; --i) {
    double best = std::numeric_limits<double>::infinity();
    int arg = 0;
    for (int a = 0; a < sets[static_cast<size_t>(i)].num_actions; ++a) {
      const int seq = sets[static_cast<size_t>(i)].first_seq + a;
      double v = val[seq];
      for (int child : si.children[static_cast<size_t>(seq)])
        v += infoset_val[static_cast<size_t>(child)];
      if (v < best) {
        best = v;
        arg = a;
      }
    }
    infoset_val[static_cast<size_t>(i)] = best;
    choice[static_cast<size_t>(i)] = arg;
  }
  // Include the empty-sequence component (z[0] is fixed at 1) so the value
  // is the full inner product loss . z at the minimizer.
  double total = loss[0];
  for (int root_is : si.children[0])
    total += infoset_val[static_cast<size_t>(root_is)];

  SequenceFormStrategy br;
  br.owner = player;
  br.values = Vec::Zero(si.num_sequences);
  br.values[0] = 1.0;
  for (size_t i = 0; i < sets.size(); ++i) {
    const double reach = br.values[sets[i].parent_seq];
    if (reach == 0.0) continue;
    br.values[sets[i].first_seq + choice[i]] = reach;
  }
  return BestResponse{total, std::move(br)};
}

}  // namespace

BestResponse treeplex_min(const GameTree& game, int player, const Vec& loss) {
  return treeplex_argmin(game, player, loss);
}

BestResponse best_response_value(const GameTree& game, int player,
                                 const SequenceFormStrategy& opponent) {
  // gradient() returns the responder's loss; minimizing loss maximizes the
  // responder's own utility, whose value is -loss at the minimum for player 1
  // (l_1^T x = ubar_2 = -ubar_1) and -loss for player 2 as well
  // (l_2^T y = -ubar_2 = ubar_1... sign below).
  Vec loss = gradient(game, player, opponent);
  BestResponse r = treeplex_argmin(game, player, loss);
  // l_p^T z equals the responder's negated utility in both conventions:
  // player 1 minimizes ubar_2 = -ubar_1; player 2 minimizes -ubar_2 = ubar_1
  // = -ubar_2... For player 2, l_2^T y = -ubar_2 and the responder's utility
  // is ubar_2, so utility = -(l_2^T y). For player 1, utility = -(l_1^T x).
  r.value = -r.value;
  return r;
}

double saddle_point_gap(const GameTree& game, const SequenceFormStrategy& x,
                        const SequenceFormStrategy& y) {
  // max_yhat x^T A2 yhat = best response value of player 2 against x;
  // min_xhat xhat^T A2 y = -(best response value of player 1 against y).
  const double br2 = best_response_value(game, 2, x).value;   // max ubar_2
  const double br1 = best_response_value(game, 1, y).value;   // max ubar_1
  return br2 + br1;
}

std::vector<long long> balanced_counts(const GameTree& game, int player) {
  const SequenceIndex& si = game.seq_index(player);
  std::vector<long long> m(static_cast<size_t>(si.num_sequences), 0);
  const auto& sets = game.infosets(player);
  // Reverse sequence order visits children before parents (sequences are
  // allocated in infoset preorder).
  for (int q = si.num_sequences - 1; q >= 0; --q) {
    if (si.terminal(q)) {
      m[static_cast<size_t>(q)] = 1;
      continue;
    }
    long long sum = 0;
    for (int child_is : si.children[static_cast<size_t>(q)]) {
      const auto& is = sets[static_cast<size_t>(child_is)];
      for (int a = 0; a < is.num_actions; ++a)
        sum += m[static_cast<size_t>(is.first_seq + a)];
    }
    m[static_cast<size_t>(q)] = sum;
  }
  return m;
}

SequenceFormStrategy balanced_strategy(const GameTree& game, int player) {
  const auto& sets = game.infosets(player);
  if (sets.empty()) throw std::invalid_argument("player never acts");
  auto m = balanced_counts(game, player);
  SequenceFormStrategy w;
  w.owner = player;
  w.values = Vec::Zero(game.num_sequences(player));
  w.values[0] = 1.0;
  for (size_t i = 0; i < sets.size(); ++i) {
    long long denom = 0;
    for (int a = 0; a < sets[i].num_actions; ++a)
      denom += m[static_cast<size_t>(sets[i].first_seq + a)];
    for (int a = 0; a < sets[i].num_actions; ++a)
      w.values[sets[i].first_seq + a] =
          w.values[sets[i].parent_seq] *
          (static_cast<double>(m[static_cast<size_t>(sets[i].first_seq + a)]) /
           static_cast<double>(denom));
  }
  return w;
}

}  // namespace efg
