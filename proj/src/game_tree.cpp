#include "efg/game_tree.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <unordered_map>

namespace efg {

GameTree GameTree::finalize(const TempGame& g) {
  if (g.nodes.empty()) throw std::invalid_argument("empty game");

  GameTree out;
  const int n = static_cast<int>(g.nodes.size());

  // Pass 1: preorder flatten so child ranges are contiguous.
  std::vector<int> order;            // arena id -> temp id
  std::vector<int> temp_to_arena(g.nodes.size(), -1);
  order.reserve(g.nodes.size());
  {
    std::vector<std::pair<int, int>> stack;  // (temp id, parent arena id)
    stack.emplace_back(g.root, -1);
    std::vector<int> parent_arena;
    parent_arena.reserve(g.nodes.size());
    // Iterative preorder where a node's children are assigned consecutive ids:
    // process nodes in BFS-like waves would break preorder; instead do a DFS
    // that emits a node, then immediately reserves a contiguous block for its
    // children. We realize this with an explicit recursion stack of
    // "emit children of" work items.
    out.nodes_.clear();
    std::vector<int> work;  // arena ids whose children still need emitting
    auto emit = [&](int temp_id, int parent) {
      if (temp_to_arena[static_cast<size_t>(temp_id)] != -1)
        throw std::invalid_argument("node has more than one parent");
      Node nd{};
      const TempNode& t = g.nodes[static_cast<size_t>(temp_id)];
      nd.kind = t.kind;
      nd.player = static_cast<std::int8_t>(t.kind == NodeKind::Decision ? t.player : 0);
      nd.parent = parent;
      nd.first_child = 0;
      nd.num_children = static_cast<std::int32_t>(t.children.size());
      nd.infoset = -1;
      nd.seq[0] = nd.seq[1] = 0;
      nd.u1 = t.u1;
      nd.chance_reach = 1.0;
      if (t.kind == NodeKind::Terminal) {
        if (!t.children.empty())
          throw std::invalid_argument("terminal node with children");
        if (t.u1 != -t.u2) throw std::invalid_argument("non-zero-sum payoff");
      } else {
        if (t.children.empty())
          throw std::invalid_argument("internal node without children");
        if (t.kind == NodeKind::Decision && (t.player != 1 && t.player != 2))
          throw std::invalid_argument("decision node without a player");
        if (t.kind == NodeKind::Chance) {
          if (t.probs.size() != t.children.size())
            throw std::invalid_argument("chance probabilities misaligned");
          double s = 0.0;
          for (double p : t.probs) {
            if (p < 0.0) throw std::invalid_argument("negative chance probability");
            s += p;
          }
          if (std::abs(s - 1.0) > 1e-9)
            throw std::invalid_argument("chance distribution not normalized");
        }
      }
      int id = static_cast<int>(out.nodes_.size());
      temp_to_arena[static_cast<size_t>(temp_id)] = id;
      order.push_back(temp_id);
      out.nodes_.push_back(nd);
      return id;
    };
    std::vector<int> dfs;  // arena ids pending child emission (LIFO => preorder)
    emit(g.root, -1);
    dfs.push_back(0);
    while (!dfs.empty()) {
      int v = dfs.back();
      dfs.pop_back();
      const TempNode& t = g.nodes[static_cast<size_t>(order[static_cast<size_t>(v)])];
      if (t.children.empty()) continue;
      out.nodes_[static_cast<size_t>(v)].first_child =
          static_cast<std::int32_t>(out.nodes_.size());
      std::vector<int> kids;
      kids.reserve(t.children.size());
      for (int c : t.children) kids.push_back(emit(c, v));
      // push in reverse so the first child's subtree is emitted first
      for (auto it = kids.rbegin(); it != kids.rend(); ++it) dfs.push_back(*it);
    }
  }
  for (int i = 0; i < n; ++i)
    if (temp_to_arena[static_cast<size_t>(i)] == -1)
      throw std::invalid_argument("orphan node unreachable from root");

  // Chance probabilities, flattened and aligned with arena children.
  out.chance_offset_.assign(out.nodes_.size(), -1);
  for (size_t v = 0; v < out.nodes_.size(); ++v) {
    const Node& nd = out.nodes_[v];
    if (nd.kind != NodeKind::Chance) continue;
    const TempNode& t = g.nodes[static_cast<size_t>(order[v])];
    out.chance_offset_[v] = static_cast<std::int32_t>(out.chance_probs_.size());
    for (double p : t.probs) out.chance_probs_.push_back(p);
  }

  // Pass 2: infoset discovery in preorder-first-encounter order.
  std::unordered_map<std::string, int> key_to_infoset[2];
  for (size_t v = 0; v < out.nodes_.size(); ++v) {
    Node& nd = out.nodes_[v];
    if (nd.kind != NodeKind::Decision) continue;
    const TempNode& t = g.nodes[static_cast<size_t>(order[v])];
    auto& table = key_to_infoset[nd.player - 1];
    auto& sets = out.infosets_[nd.player - 1];
    auto it = table.find(t.infoset_key);
    int is_id;
    if (it == table.end()) {
      is_id = static_cast<int>(sets.size());
      table.emplace(t.infoset_key, is_id);
      Infoset is;
      is.player = nd.player;
      is.num_actions = nd.num_children;
      is.key = t.infoset_key;
      sets.push_back(std::move(is));
    } else {
      is_id = it->second;
      if (sets[static_cast<size_t>(is_id)].num_actions != nd.num_children)
        throw std::invalid_argument("infoset '" + t.infoset_key +
                                    "' has inconsistent action sets");
    }
    sets[static_cast<size_t>(is_id)].nodes.push_back(static_cast<std::int32_t>(v));
    nd.infoset = is_id;
  }

  // Sequence layout: id 0 is the empty sequence, then each infoset's actions
  // in infoset-id order.
  for (int p = 0; p < 2; ++p) {
    SequenceIndex& si = out.seq_index_[p];
    si.num_sequences = 1;
    si.infoset_of_seq.assign(1, -1);
    si.action_of_seq.assign(1, -1);
    for (auto& is : out.infosets_[p]) {
      is.first_seq = si.num_sequences;
      for (int a = 0; a < is.num_actions; ++a) {
        si.infoset_of_seq.push_back(
            static_cast<std::int32_t>(&is - out.infosets_[p].data()));
        si.action_of_seq.push_back(a);
      }
      si.num_sequences += is.num_actions;
    }
    si.children.assign(static_cast<size_t>(si.num_sequences), {});
  }

  // Pass 3: propagate sequences and chance reach; validate perfect recall in
  // its sequence-consistency form (sigma_i(u) = sigma_i(v) within an infoset).
  std::vector<char> seen_infoset[2];
  for (int p = 0; p < 2; ++p)
    seen_infoset[p].assign(out.infosets_[p].size(), 0);
  double maxu = -std::numeric_limits<double>::infinity();
  double minu = std::numeric_limits<double>::infinity();
  for (size_t v = 0; v < out.nodes_.size(); ++v) {
    Node& nd = out.nodes_[v];
    if (nd.parent >= 0) {
      const Node& pa = out.nodes_[static_cast<size_t>(nd.parent)];
      int a = static_cast<int>(v) - pa.first_child;
      nd.seq[0] = pa.seq[0];
      nd.seq[1] = pa.seq[1];
      nd.chance_reach = pa.chance_reach;
      if (pa.kind == NodeKind::Decision) {
        const Infoset& is =
            out.infosets_[pa.player - 1][static_cast<size_t>(pa.infoset)];
        nd.seq[pa.player - 1] = is.first_seq + a;
      } else if (pa.kind == NodeKind::Chance) {
        nd.chance_reach *=
            out.chance_probs_[static_cast<size_t>(
                out.chance_offset_[static_cast<size_t>(nd.parent)] + a)];
      }
    }
    if (nd.kind == NodeKind::Decision) {
      Infoset& is = out.infosets_[nd.player - 1][static_cast<size_t>(nd.infoset)];
      if (!seen_infoset[nd.player - 1][static_cast<size_t>(nd.infoset)]) {
        seen_infoset[nd.player - 1][static_cast<size_t>(nd.infoset)] = 1;
        is.parent_seq = nd.seq[nd.player - 1];
      } else if (is.parent_seq != nd.seq[nd.player - 1]) {
        throw std::invalid_argument("imperfect recall at infoset '" + is.key + "'");
      }
    } else if (nd.kind == NodeKind::Terminal) {
      maxu = std::max({maxu, nd.u1, -nd.u1});
      minu = std::min({minu, nd.u1, -nd.u1});
    }
  }
  out.max_u_ = maxu;
  out.min_u_ = minu;
  out.delta_ = maxu - minu;

  for (int p = 0; p < 2; ++p) {
    SequenceIndex& si = out.seq_index_[p];
    for (size_t i = 0; i < out.infosets_[p].size(); ++i)
      si.children[static_cast<size_t>(out.infosets_[p][i].parent_seq)]
          .push_back(static_cast<std::int32_t>(i));
  }
  return out;
}

std::string GameTree::dump() const {
  std::string s;
  char buf[160];
  for (size_t v = 0; v < nodes_.size(); ++v) {
    const Node& nd = nodes_[v];
    const char* kind = nd.kind == NodeKind::Decision ? "D"
                       : nd.kind == NodeKind::Chance ? "C"
                                                     : "T";
    std::snprintf(buf, sizeof buf, "%zu\t%d\t%s\t%d\t%d\t%.17g\n", v, nd.parent,
                  kind, static_cast<int>(nd.player), nd.infoset,
                  nd.kind == NodeKind::Terminal ? nd.u1 : 0.0);
    s += buf;
  }
  return s;
}

std::optional<RecallViolation> validate_perfect_recall(const GameTree& game) {
  // Replay the path root -> v collecting the player's own (infoset, action)
  // history; all nodes in an infoset must agree.
  auto history = [&](int v, int player) {
    std::vector<std::pair<int, int>> h;
    int cur = v;
    while (cur >= 0) {
      const Node& nd = game.node(cur);
      int parent = nd.parent;
      if (parent >= 0) {
        const Node& pa = game.node(parent);
        if (pa.kind == NodeKind::Decision && pa.player == player)
          h.emplace_back(pa.infoset, cur - pa.first_child);
      }
      cur = parent;
    }
    return std::vector<std::pair<int, int>>(h.rbegin(), h.rend());
  };
  for (int player = 1; player <= 2; ++player) {
    const auto& sets = game.infosets(player);
    for (size_t i = 0; i < sets.size(); ++i) {
      const auto& is = sets[i];
      if (is.nodes.size() < 2) continue;
      auto ref = history(is.nodes[0], player);
      for (size_t j = 1; j < is.nodes.size(); ++j) {
        if (history(is.nodes[j], player) != ref) {
          return RecallViolation{player, static_cast<int>(i), is.nodes[0],
                                 is.nodes[j],
                                 "own-action histories differ in infoset '" +
                                     is.key + "'"};
        }
      }
    }
  }
  return std::nullopt;
}

int count_nodes(const GameTree& game) { return game.num_nodes(); }

int count_sequences(const GameTree& game, int player) {
  return game.num_sequences(player);
}

}  // namespace efg
