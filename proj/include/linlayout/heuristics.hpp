#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "linlayout/core.hpp"
#include "linlayout/objectives.hpp"

namespace linlayout {

/// Reverse Cuthill-McKee over an undirected graph on vertices 1..n.
///
/// Breadth-first labeling from a minimum-degree vertex (smallest id on ties),
/// unvisited neighbours enqueued by ascending degree then id; the labeling is
/// then reversed. Disconnected graphs restart from the next minimum-degree
/// unvisited vertex.
LinearLayout reverse_cuthill_mckee(int n, std::span<const Edge> edges);
inline LinearLayout reverse_cuthill_mckee(const DepTree& tree) {
  return reverse_cuthill_mckee(tree.size(), tree.edges());
}

struct McConfig {
  Objective objective = Objective::minla();
  int steps = 1000;
  std::uint64_t seed = 0;
};

/// One accepted transposition, for replaying a run.
struct AcceptedSwap {
  int step = 0;
  int a = 0;
  int b = 0;
  std::int64_t cost_before = 0;
  std::int64_t cost_after = 0;
};

/// Greedy random-transposition search starting from the identity layout.
///
/// Each of the `cfg.steps` rounds draws a vertex uniformly, then a second
/// distinct vertex uniformly from the rest, swaps their positions and keeps
/// the swap only if the cost strictly drops. Accepted swaps are appended to
/// `log` when given. Throws InvalidInput for steps < 0.
LinearLayout transposition_monte_carlo(int n, std::span<const Edge> edges, const McConfig& cfg,
                                       std::vector<AcceptedSwap>* log = nullptr);
inline LinearLayout transposition_monte_carlo(const DepTree& tree, const McConfig& cfg,
                                              std::vector<AcceptedSwap>* log = nullptr) {
  return transposition_monte_carlo(tree.size(), tree.edges(), cfg, log);
}

}  // namespace linlayout
