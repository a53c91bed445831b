// Test-only helpers for checking treeplex_prox against an independent
// numerical minimizer: random two-level treeplex games, Euclidean projection
// onto the treeplex by Dykstra's algorithm, and projected gradient descent
// with Armijo backtracking.
#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "efg/regret.hpp"

namespace efg_test {

// Player 1 treeplex with one root infoset; each root action leads to zero or
// one child infosets (optionally via a chance node to exercise non-decision
// interior nodes).
inline efg::GameTree random_two_level_game(std::mt19937& rng) {
  std::uniform_int_distribution<int> root_actions(2, 4);
  std::uniform_int_distribution<int> child_actions(2, 3);
  std::uniform_int_distribution<int> coin(0, 1);
  efg::TempGame g;
  int root = g.add_decision(1, "root");
  g.root = root;
  const int n0 = root_actions(rng);
  for (int a = 0; a < n0; ++a) {
    if (coin(rng)) {
      int child = g.add_decision(1, "child" + std::to_string(a));
      g.nodes[static_cast<size_t>(root)].children.push_back(child);
      const int n1 = child_actions(rng);
      for (int b = 0; b < n1; ++b) {
        int leaf = g.add_terminal((a + 1) * 0.25 - (b + 1) * 0.125);
        g.nodes[static_cast<size_t>(child)].children.push_back(leaf);
      }
    } else {
      int leaf = g.add_terminal(0.5 - a * 0.25);
      g.nodes[static_cast<size_t>(root)].children.push_back(leaf);
    }
  }
  return efg::GameTree::finalize(g);
}

// Euclidean projection of y0 onto the simplex {y >= 0, sum y = s}.
inline void project_simplex(std::vector<double>& y, double s) {
  const size_t n = y.size();
  std::vector<double> u = y;
  std::sort(u.begin(), u.end(), std::greater<double>());
  double css = 0.0, theta = 0.0;
  int k = 0;
  for (size_t i = 0; i < n; ++i) {
    css += u[i];
    const double t = (css - s) / static_cast<double>(i + 1);
    if (u[i] - t > 0.0) {
      theta = t;
      k = static_cast<int>(i + 1);
    }
  }
  (void)k;
  for (auto& v : y) v = std::max(v - theta, 0.0);
}

// Projection onto {(x, y): x >= 0, y >= 0, sum y = x} for one child block,
// by bisection on the coupling multiplier.
inline void project_block(double& x, std::vector<double>& y) {
  const double x0 = x;
  const std::vector<double> y0 = y;
  auto h = [&](double lam) {
    double s = 0.0;
    for (double v : y0) s += std::max(v - lam, 0.0);
    return s - std::max(x0 + lam, 0.0);
  };
  double lo = -1e6, hi = 1e6;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (h(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  const double lam = 0.5 * (lo + hi);
  x = std::max(x0 + lam, 0.0);
  for (size_t i = 0; i < y.size(); ++i) y[i] = std::max(y0[i] - lam, 0.0);
}

// Euclidean projection onto the two-level treeplex by Dykstra's alternating
// projections over the root simplex and the per-child coupling blocks.
inline efg::Vec project_treeplex(const efg::GameTree& game, const efg::Vec& z0) {
  const auto& sets = game.infosets(1);
  const efg::SequenceIndex& si = game.seq_index(1);
  const int n = si.num_sequences;
  efg::Vec z = z0;
  z[0] = 1.0;

  // Blocks: 0 = root simplex; 1..k = child infosets (parent seq + own seqs).
  std::vector<efg::Vec> increments(sets.size(), efg::Vec::Zero(n));
  for (int cycle = 0; cycle < 400; ++cycle) {
    for (size_t i = 0; i < sets.size(); ++i) {
      efg::Vec y = z + increments[i];
      efg::Vec proj = y;
      const auto& is = sets[i];
      if (is.parent_seq == 0) {
        std::vector<double> block(static_cast<size_t>(is.num_actions));
        for (int a = 0; a < is.num_actions; ++a)
          block[static_cast<size_t>(a)] = y[is.first_seq + a];
        project_simplex(block, 1.0);
        for (int a = 0; a < is.num_actions; ++a)
          proj[is.first_seq + a] = block[static_cast<size_t>(a)];
      } else {
        double x = y[is.parent_seq];
        std::vector<double> block(static_cast<size_t>(is.num_actions));
        for (int a = 0; a < is.num_actions; ++a)
          block[static_cast<size_t>(a)] = y[is.first_seq + a];
        project_block(x, block);
        proj[is.parent_seq] = x;
        for (int a = 0; a < is.num_actions; ++a)
          proj[is.first_seq + a] = block[static_cast<size_t>(a)];
      }
      increments[i] = y - proj;
      z = proj;
    }
  }
  z[0] = 1.0;
  return z;
}

// Projected gradient descent with backtracking on
// f(z) = <g, z> + (1/eta) d(z), independent of the closed-form prox.
inline efg::Vec projected_gradient_minimize(const efg::DilatedEntropyDGF& dgf,
                                            const efg::Vec& g, double eta,
                                            int iters = 4000) {
  const efg::GameTree& game = dgf.game();
  const int n = game.num_sequences(1);
  auto clamp_interior = [&](efg::Vec z) {
    for (int q = 0; q < n; ++q) z[q] = std::max(z[q], 1e-12);
    return z;
  };
  auto f = [&](const efg::Vec& z) {
    return g.dot(z) + dgf.value(z) / eta;
  };
  efg::Vec z = efg::uniform_strategy(game, 1).values;
  double fz = f(z);
  double step = 1.0;
  for (int t = 0; t < iters; ++t) {
    efg::Vec zi = clamp_interior(z);
    efg::Vec grad = g + dgf.grad(zi) / eta;
    bool moved = false;
    for (int bt = 0; bt < 40; ++bt) {
      efg::Vec cand = project_treeplex(game, z - step * grad);
      const double fc = f(cand);
      if (fc < fz - 1e-15) {
        z = cand;
        fz = fc;
        moved = true;
        step *= 1.3;
        break;
      }
      step *= 0.5;
    }
    if (!moved && step < 1e-14) break;
  }
  return z;
}

}  // namespace efg_test
