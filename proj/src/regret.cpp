#include "efg/regret.hpp"

#include <cmath>
#include <limits>

namespace efg {

std::vector<double> dgf_weights(const GameTree& game, int player,
                                DgfWeightScheme scheme) {
  const auto& sets = game.infosets(player);
  std::vector<double> beta(sets.size(), 1.0);
  if (scheme == DgfWeightScheme::Constant) return beta;
  const SequenceIndex& si = game.seq_index(player);
  // Reverse infoset-id order visits children before parents.
  for (int i = static_cast<int>(sets.size()) - 1; i >= 0; --i) {
    double best = 0.0;
    for (int a = 0; a < sets[static_cast<size_t>(i)].num_actions; ++a) {
      double sum = 0.0;
      const int seq = sets[static_cast<size_t>(i)].first_seq + a;
      for (int child : si.children[static_cast<size_t>(seq)])
        sum += beta[static_cast<size_t>(child)];
      best = std::max(best, sum);
    }
    beta[static_cast<size_t>(i)] = 1.0 + best;
  }
  return beta;
}

DilatedEntropyDGF::DilatedEntropyDGF(const GameTree& game, int player,
                                     DgfWeightScheme scheme)
    : game_(&game), player_(player), beta_(dgf_weights(game, player, scheme)) {}

double DilatedEntropyDGF::value(const Vec& z) const {
  const auto& sets = game_->infosets(player_);
  double d = 0.0;
  for (size_t i = 0; i < sets.size(); ++i) {
    const double zp = z[sets[i].parent_seq];
    if (zp <= 0.0) continue;
    double ent = 0.0;
    for (int a = 0; a < sets[i].num_actions; ++a) {
      const double b = z[sets[i].first_seq + a] / zp;
      if (b > 0.0) ent += b * std::log(b);
    }
    d += beta_[i] * zp * ent;
  }
  return d;
}

Vec DilatedEntropyDGF::grad(const Vec& z) const {
  const auto& sets = game_->infosets(player_);
  const SequenceIndex& si = game_->seq_index(player_);
  Vec g = Vec::Zero(z.size());
  for (size_t i = 0; i < sets.size(); ++i) {
    const double zp = z[sets[i].parent_seq];
    for (int a = 0; a < sets[i].num_actions; ++a) {
      const int seq = sets[i].first_seq + a;
      g[seq] += beta_[i] * (1.0 + std::log(z[seq] / zp));
    }
  }
  // Each sequence (including the empty one) also loses the weight of the
  // infosets hanging below it (d/dz of the dilation factor).
  for (int q = 0; q < si.num_sequences; ++q)
    for (int child : si.children[static_cast<size_t>(q)])
      g[q] -= beta_[static_cast<size_t>(child)];
  return g;
}

double DilatedEntropyDGF::bregman(const Vec& z, const Vec& zp) const {
  for (int q = 0; q < zp.size(); ++q)
    if (zp[q] <= 0.0)
      throw std::invalid_argument("Bregman center on the boundary");
  const Vec gp = grad(zp);
  return value(z) - value(zp) - gp.dot(z - zp);
}

namespace {

SequenceFormStrategy prox_impl(const DilatedEntropyDGF& dgf, const Vec& g,
                               double eta) {
  if (eta <= 0.0) throw std::invalid_argument("eta must be positive");
  const GameTree& game = dgf.game();
  const int player = dgf.player();
  const auto& sets = game.infosets(player);
  const SequenceIndex& si = game.seq_index(player);
  const auto& beta = dgf.weights();

  // Bottom-up: backed-up cost per sequence, log-domain local softmax.
  Vec cost = g;
  std::vector<double> infoset_val(sets.size(), 0.0);
  std::vector<std::vector<double>> local(sets.size());
  for (int i = static_cast<int>(sets.size()) - 1; i >= 0; --i) {
    const auto& is = sets[static_cast<size_t>(i)];
    const double scale = eta / beta[static_cast<size_t>(i)];
    double lo = std::numeric_limits<double>::infinity();
    for (int a = 0; a < is.num_actions; ++a) {
      const int seq = is.first_seq + a;
      for (int child : si.children[static_cast<size_t>(seq)])
        cost[seq] += infoset_val[static_cast<size_t>(child)];
      lo = std::min(lo, cost[seq]);
    }
    double zsum = 0.0;
    auto& b = local[static_cast<size_t>(i)];
    b.resize(static_cast<size_t>(is.num_actions));
    for (int a = 0; a < is.num_actions; ++a) {
      const double e = std::exp(-scale * (cost[is.first_seq + a] - lo));
      b[static_cast<size_t>(a)] = e;
      zsum += e;
    }
    for (auto& v : b) v /= zsum;
    infoset_val[static_cast<size_t>(i)] = lo - std::log(zsum) / scale;
  }
  return behavioral_to_sequence(game, player, local);
}

}  // namespace

SequenceFormStrategy treeplex_prox(const DilatedEntropyDGF& dgf, const Vec& g,
                                   double eta) {
  return prox_impl(dgf, g, eta);
}

SequenceFormStrategy treeplex_prox(const DilatedEntropyDGF& dgf, const Vec& g,
                                   double eta, const Vec& center) {
  // <g,z> + (1/eta) D(z||zp) differs from <g - (1/eta) grad d(zp), z> +
  // (1/eta) d(z) by a constant.
  Vec shifted = g - dgf.grad(center) / eta;
  return prox_impl(dgf, shifted, eta);
}

// ---------------------------------------------------------------------------
// Regret matching
// ---------------------------------------------------------------------------

RegretMatching::RegretMatching(const GameTree& game, int player)
    : game_(&game), player_(player) {
  const auto& sets = game.infosets(player);
  cum_regret_.resize(sets.size());
  behavior_.resize(sets.size());
  for (size_t i = 0; i < sets.size(); ++i) {
    cum_regret_[i].assign(static_cast<size_t>(sets[i].num_actions), 0.0);
    behavior_[i].assign(static_cast<size_t>(sets[i].num_actions),
                        1.0 / sets[i].num_actions);
  }
}

SequenceFormStrategy RegretMatching::next_strategy() {
  return behavioral_to_sequence(*game_, player_, behavior_);
}

void RegretMatching::observe(const Vec& loss) {
  const auto& sets = game_->infosets(player_);
  const SequenceIndex& si = game_->seq_index(player_);
  if (loss.size() != si.num_sequences)
    throw std::invalid_argument("gradient length mismatch");
  // Counterfactual values bottom-up with the current local distributions.
  Vec val = loss;
  std::vector<double> infoset_val(sets.size(), 0.0);
  for (int i = static_cast<int>(sets.size()) - 1; i >= 0; --i) {
    const auto& is = sets[static_cast<size_t>(i)];
    double v = 0.0;
    for (int a = 0; a < is.num_actions; ++a) {
      const int seq = is.first_seq + a;
      for (int child : si.children[static_cast<size_t>(seq)])
        val[seq] += infoset_val[static_cast<size_t>(child)];
      v += behavior_[static_cast<size_t>(i)][static_cast<size_t>(a)] * val[seq];
    }
    infoset_val[static_cast<size_t>(i)] = v;
    // Losses: the regret of action a is how much less loss it would have
    // incurred than the current mixture.
    auto& r = cum_regret_[static_cast<size_t>(i)];
    for (int a = 0; a < is.num_actions; ++a)
      r[static_cast<size_t>(a)] += v - val[is.first_seq + a];
  }
  for (size_t i = 0; i < sets.size(); ++i) {
    double pos = 0.0;
    for (double r : cum_regret_[i]) pos += std::max(r, 0.0);
    auto& b = behavior_[i];
    if (pos > 0.0) {
      for (size_t a = 0; a < b.size(); ++a)
        b[a] = std::max(cum_regret_[i][a], 0.0) / pos;
    } else {
      for (auto& x : b) x = 1.0 / static_cast<double>(b.size());
    }
  }
}

// ---------------------------------------------------------------------------
// FTRL / OMD
// ---------------------------------------------------------------------------

FTRL::FTRL(const GameTree& game, int player, double eta, DgfWeightScheme scheme)
    : dgf_(game, player, scheme), eta_(eta) {
  if (eta <= 0.0) throw std::invalid_argument("eta must be positive");
  cum_loss_ = Vec::Zero(game.num_sequences(player));
}

SequenceFormStrategy FTRL::next_strategy() {
  return treeplex_prox(dgf_, cum_loss_, eta_);
}

void FTRL::observe(const Vec& loss) {
  if (loss.size() != cum_loss_.size())
    throw std::invalid_argument("gradient length mismatch");
  cum_loss_ += loss;
}

OMD::OMD(const GameTree& game, int player, double eta, DgfWeightScheme scheme)
    : dgf_(game, player, scheme), eta_(eta) {
  if (eta <= 0.0) throw std::invalid_argument("eta must be positive");
  iterate_ = treeplex_prox(dgf_, Vec::Zero(game.num_sequences(player)), eta_)
                 .values;
}

SequenceFormStrategy OMD::next_strategy() {
  SequenceFormStrategy s;
  s.owner = dgf_.player();
  s.values = iterate_;
  return s;
}

void OMD::observe(const Vec& loss) {
  if (loss.size() != iterate_.size())
    throw std::invalid_argument("gradient length mismatch");
  iterate_ = treeplex_prox(dgf_, loss, eta_, iterate_).values;
}

// ---------------------------------------------------------------------------
// Regret measurement
// ---------------------------------------------------------------------------

RegretTracker::RegretTracker(const GameTree& game, int player)
    : game_(&game), player_(player) {
  cum_loss_ = Vec::Zero(game.num_sequences(player));
}

void RegretTracker::add(const SequenceFormStrategy& z, const Vec& loss) {
  played_ += loss.dot(z.values);
  cum_loss_ += loss;
}

double RegretTracker::regret() const {
  return played_ - treeplex_min(*game_, player_, cum_loss_).value;
}

double measure_regret(const GameTree& game, int player,
                      const std::vector<SequenceFormStrategy>& strategies,
                      const std::vector<Vec>& losses) {
  if (strategies.size() != losses.size())
    throw std::invalid_argument("misaligned histories");
  RegretTracker tracker(game, player);
  for (size_t t = 0; t < strategies.size(); ++t)
    tracker.add(strategies[t], losses[t]);
  return tracker.regret();
}

}  // namespace efg
