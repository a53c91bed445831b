// Generators for the benchmark games (Leduc-k, Goofspiel, Search-k,
// Battleship) plus tiny test games (matching pennies, Kuhn poker).
#pragma once

#include <string>

#include "efg/game_tree.hpp"

namespace efg {

enum class GameVariant {
  Leduc,
  Goofspiel,
  Search,
  Battleship,
  MatchingPennies,
  Kuhn,
};

struct GameSpec {
  GameVariant variant = GameVariant::Leduc;
  int leduc_ranks = 13;    // deck has 2 copies per rank
  int goofspiel_ranks = 4; // card/prize deck size
  int search_horizon = 4;  // number of simultaneous moves before timeout
  int battleship_shots = 3;// shots per player; grid 3x2, one size-2 ship, value 1

  std::string name() const;
};

GameTree build_game(const GameSpec& spec);

// P1 picks heads/tails, P2 picks unobserved; P1 wins +/-1 on a match.
GameTree build_matching_pennies();

// 3-card Kuhn poker with a single 1-chip bet; 13 sequences per player.
GameTree build_kuhn();

// Two-round limit poker: ante 1, P1 acts first each round, round-1 bet 1,
// round-2 bet 2, at most two bets (bet + raise) per round; pair with the
// public card wins, otherwise the higher card; deck has 2 copies per rank.
GameTree build_leduc(int ranks);

// Bidding game over a prize deck revealed one card at a time in a uniformly
// random order (chance), bids simultaneously revealed after each round, tied
// prizes discarded; payoff is the difference of collected prize totals.
GameTree build_goofspiel(int ranks);

// Pursuit-evasion on a fixed directed graph: an attacker (P2) moves from the
// start toward one of three payoff nodes (5, 10, 3) while a defender (P1)
// controls two patrols confined to their regions; co-location after a
// simultaneous move captures the attacker (-1). The attacker may wait to
// clean the traces it leaves, subject to a per-stage feasibility table;
// after `horizon` simultaneous moves the game times out with payoff 0.
GameTree build_search(int horizon);

// 3x2 grids, one ship of size 2 and value 1 per player; players place
// secretly in turn, then alternate `shots` shots each at publicly observed
// cells (no cell re-shot by the same player); the game ends when a ship is
// sunk or budgets are exhausted. Payoff: opponent ship sunk minus own lost.
GameTree build_battleship(int shots);

}  // namespace efg
