#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>

#include "linlayout/core.hpp"
#include "linlayout/objectives.hpp"

namespace linlayout {

/// Raised when an exhaustive search is asked to exceed its size limit.
class LimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleResult {
  LinearLayout layout;
  std::int64_t value = 0;
};

inline constexpr int kUnconstrainedLimit = 9;
inline constexpr int kProjectiveLimit = 10;

/// Exhaustive minimum over all n! layouts. Ties go to the lexicographically
/// smallest position array. Throws LimitExceeded when n > n_limit.
OracleResult optimal_unconstrained(std::span<const Edge> edges, int n, Objective obj,
                                   int n_limit = kUnconstrainedLimit);
inline OracleResult optimal_unconstrained(const DepTree& tree, Objective obj, int n_limit = kUnconstrainedLimit) {
  return optimal_unconstrained(tree.edges(), tree.size(), obj, n_limit);
}

/// Exhaustive minimum over projective layouts: at every vertex, every order
/// of the vertex among its children's blocks, combined with every
/// arrangement of each block. Same tie-break and limit semantics.
OracleResult optimal_projective(const DepTree& tree, Objective obj, int n_limit = kProjectiveLimit);

/// Calls `visit` once per projective layout of `tree`.
void for_each_projective_layout(const DepTree& tree, const std::function<void(const LinearLayout&)>& visit);

/// Uniform labeled tree from a random Prüfer sequence, rooted at vertex 1.
DepTree random_tree(int n, std::uint64_t seed);

/// Calls `visit` once per rooted labeled tree on n vertices (every valid head
/// array). There are n^(n-1) of them.
void for_each_rooted_tree(int n, const std::function<void(const DepTree&)>& visit);

}  // namespace linlayout
