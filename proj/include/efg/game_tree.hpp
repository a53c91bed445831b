// Immutable extensive-form game representation with perfect-recall validation
// and sequence-form indexing.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace efg {

enum class NodeKind : std::uint8_t { Decision, Chance, Terminal };

// Mutable node used by game generators while a tree is under construction.
// `finalize` converts a TempGame into the immutable arena representation.
struct TempNode {
  NodeKind kind = NodeKind::Terminal;
  int player = 0;               // 1 or 2 for Decision nodes
  std::string infoset_key;      // generator-chosen key; equal keys share an infoset
  std::vector<int> children;    // indices into TempGame::nodes
  std::vector<double> probs;    // chance distribution, aligned with children
  double u1 = 0.0, u2 = 0.0;    // terminal payoffs; must satisfy u1 == -u2
};

struct TempGame {
  std::vector<TempNode> nodes;
  int root = 0;

  int add(TempNode n) {
    nodes.push_back(std::move(n));
    return static_cast<int>(nodes.size()) - 1;
  }
  int add_terminal(double u1) {
    TempNode n;
    n.kind = NodeKind::Terminal;
    n.u1 = u1;
    n.u2 = -u1;
    return add(std::move(n));
  }
  int add_decision(int player, std::string key) {
    TempNode n;
    n.kind = NodeKind::Decision;
    n.player = player;
    n.infoset_key = std::move(key);
    return add(std::move(n));
  }
  int add_chance() {
    TempNode n;
    n.kind = NodeKind::Chance;
    return add(std::move(n));
  }
};

// Immutable arena node; ids are preorder so child ranges are contiguous.
struct Node {
  NodeKind kind;
  std::int8_t player;        // 1 or 2 for Decision, 0 otherwise
  std::int32_t parent;       // -1 for root
  std::int32_t first_child;  // index of first child in the arena
  std::int32_t num_children;
  std::int32_t infoset;      // per-player infoset id; -1 if not a decision node
  std::int32_t seq[2];       // last sequence of player 1/2 on the path to this node
  double u1;                 // terminal payoff for player 1 (u2 = -u1)
  double chance_reach;       // product of chance probabilities on the root path
};

struct Infoset {
  int player = 0;
  int num_actions = 0;
  std::int32_t parent_seq = 0;  // sigma_i(I)
  std::int32_t first_seq = 0;   // sequences first_seq .. first_seq+num_actions-1
  std::vector<std::int32_t> nodes;
  std::string key;
};

// Dense ids for one player's sequences. Id 0 is the empty sequence.
struct SequenceIndex {
  int num_sequences = 1;
  std::vector<std::int32_t> infoset_of_seq;            // -1 for the empty sequence
  std::vector<std::int32_t> action_of_seq;             // -1 for the empty sequence
  std::vector<std::vector<std::int32_t>> children;     // seq -> infosets I with sigma(I)=seq
  bool terminal(int seq) const { return children[seq].empty(); }
};

class GameTree {
 public:
  // Validates and freezes a generator-built game. Throws std::invalid_argument
  // on non-zero-sum payoffs, imperfect recall, orphan nodes, or malformed
  // chance distributions.
  static GameTree finalize(const TempGame& g);

  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(int v) const { return nodes_[static_cast<size_t>(v)]; }
  int root() const { return 0; }
  int num_nodes() const { return static_cast<int>(nodes_.size()); }

  const std::vector<Infoset>& infosets(int player) const {
    return infosets_[player - 1];
  }
  const SequenceIndex& seq_index(int player) const {
    return seq_index_[player - 1];
  }
  int num_sequences(int player) const {
    return seq_index_[player - 1].num_sequences;
  }

  // Local chance distribution at chance node v, aligned with its children.
  const double* chance_probs(int v) const {
    return chance_probs_.data() + chance_offset_[static_cast<size_t>(v)];
  }

  double payoff_range() const { return delta_; }
  double max_payoff() const { return max_u_; }
  double min_payoff() const { return min_u_; }

  // One node per line, tab-separated, stable ordering; used for golden tests
  // and determinism checks.
  std::string dump() const;

 private:
  std::vector<Node> nodes_;
  std::vector<Infoset> infosets_[2];
  SequenceIndex seq_index_[2];
  std::vector<double> chance_probs_;
  std::vector<std::int32_t> chance_offset_;
  double delta_ = 0.0, max_u_ = 0.0, min_u_ = 0.0;
};

struct RecallViolation {
  int player;
  int infoset;
  int node_a, node_b;
  std::string detail;
};

// Confirms that all nodes of every infoset share the same own-action history.
// Performs a full path replay, independent of the sequence ids cached at
// construction time.
std::optional<RecallViolation> validate_perfect_recall(const GameTree& game);

int count_nodes(const GameTree& game);
int count_sequences(const GameTree& game, int player);

}  // namespace efg
