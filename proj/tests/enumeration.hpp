// Test-only helpers: exhaustive enumeration of an estimator's sample space
// via a scripted sampler, plus a factorized expectation oracle for estimators
// whose joint sample space is too large to enumerate run by run.
#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "efg/estimators.hpp"

namespace efg_test {

// Replays a fixed choice prefix and extends it with zeros; records the arity
// and chosen-branch probability of every call so the driver can weight the
// run and advance to the next leaf of the choice tree.
class ScriptedSampler : public efg::Sampler {
 public:
  explicit ScriptedSampler(std::vector<int>& script) : script_(&script) {}

  int sample(const double* probs, int n) override {
    if (pos_ == script_->size()) script_->push_back(0);
    const int choice = (*script_)[pos_];
    if (choice < 0 || choice >= n)
      throw std::logic_error("scripted choice out of range");
    arity_.push_back(n);
    weight_ *= probs[choice];
    ++pos_;
    return choice;
  }

  double weight() const { return weight_; }
  const std::vector<int>& arity() const { return arity_; }

 private:
  std::vector<int>* script_;
  size_t pos_ = 0;
  double weight_ = 1.0;
  std::vector<int> arity_;
};

struct EnumerationResult {
  efg::Vec expectation;
  double total_probability = 0.0;
  long long runs = 0;
};

// Exact expectation of `run_fn` over every realization of its sampler calls.
// Throws if the sample space exceeds `max_runs` (a guard, not a truncation).
inline EnumerationResult enumerate_sample_space(
    int num_sequences,
    const std::function<efg::GradientVector(efg::Sampler&)>& run_fn,
    long long max_runs = 4000000) {
  EnumerationResult res;
  res.expectation = efg::Vec::Zero(num_sequences);
  std::vector<int> script;
  while (true) {
    ScriptedSampler sampler(script);
    efg::GradientVector g = run_fn(sampler);
    res.expectation += sampler.weight() * g.values;
    res.total_probability += sampler.weight();
    if (++res.runs > max_runs)
      throw std::runtime_error("sample space exceeds enumeration budget");
    const auto& arity = sampler.arity();
    size_t k = script.size();
    while (k > 0 && script[k - 1] + 1 >= arity[k - 1]) --k;
    if (k == 0) break;
    script.resize(k);
    ++script[k - 1];
  }
  return res;
}

// Expectation of the external-family estimators computed directly on the
// tree: sampled branches contribute probability-weighted sums, branched
// (owner) decisions contribute plain sums, and each leaf adds the same write
// the estimator would make. Factorizing the joint sample space this way is
// exact because distinct sampler calls are independent and the estimate is
// additive over leaves.
inline efg::Vec factorized_expectation(const efg::GameTree& game, int owner,
                                       const efg::SequenceFormStrategy& opp,
                                       bool sample_chance,
                                       bool sample_opponent) {
  efg::Vec out = efg::Vec::Zero(game.num_sequences(owner));
  const int opp_player = owner == 1 ? 2 : 1;
  std::function<void(int, double)> walk = [&](int v, double w) {
    const efg::Node& nd = game.node(v);
    if (nd.kind == efg::NodeKind::Terminal) {
      double write = owner == 1 ? -nd.u1 : nd.u1;
      if (!sample_opponent)
        write *= opp.values[nd.seq[opp_player - 1]];
      if (!sample_chance) write *= nd.chance_reach;
      out[nd.seq[owner - 1]] += w * write;
      return;
    }
    if (nd.kind == efg::NodeKind::Chance) {
      for (int a = 0; a < nd.num_children; ++a)
        walk(nd.first_child + a,
             sample_chance ? w * game.chance_probs(v)[a] : w);
      return;
    }
    if (nd.player == owner || !sample_opponent) {
      for (int a = 0; a < nd.num_children; ++a) walk(nd.first_child + a, w);
      return;
    }
    const efg::Infoset& is =
        game.infosets(opp_player)[static_cast<size_t>(nd.infoset)];
    const double reach = opp.values[is.parent_seq];
    for (int a = 0; a < nd.num_children; ++a) {
      const double p = reach > 0.0
                           ? opp.values[is.first_seq + a] / reach
                           : 1.0 / is.num_actions;
      walk(nd.first_child + a, w * p);
    }
  };
  walk(game.root(), 1.0);
  return out;
}

}  // namespace efg_test
