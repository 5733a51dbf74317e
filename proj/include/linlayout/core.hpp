#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace linlayout {

/// Raised for structurally invalid inputs (bad layouts, bad head arrays, ...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Undirected edge between two 1-based vertex ids.
struct Edge {
  int u = 0;
  int v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// A bijection from vertices 1..n to positions 1..n, stored densely by vertex.
///
/// A default-constructed layout is empty (n = 0); every other instance is
/// validated on construction.
class LinearLayout {
 public:
  LinearLayout() = default;

  /// `positions[v - 1]` is the position of vertex v. Throws InvalidInput
  /// unless the values are exactly a permutation of 1..n.
  explicit LinearLayout(std::vector<int> positions);

  /// Builds the layout that places `order[0]` first, `order[1]` second, ...
  static LinearLayout from_order(std::span<const int> order);

  [[nodiscard]] int size() const noexcept { return static_cast<int>(pos_.size()); }
  [[nodiscard]] bool empty() const noexcept { return pos_.empty(); }

  /// Position of vertex `v` (1-based in both).
  [[nodiscard]] int operator[](int v) const noexcept { return pos_[static_cast<std::size_t>(v - 1)]; }

  [[nodiscard]] std::span<const int> positions() const noexcept { return pos_; }

  /// Vertices sorted by ascending position (the inverse permutation).
  [[nodiscard]] std::vector<int> order() const;

  /// Returns a copy with the positions of vertices `a` and `b` exchanged.
  [[nodiscard]] LinearLayout swapped(int a, int b) const;

  friend bool operator==(const LinearLayout&, const LinearLayout&) = default;
  friend auto operator<=>(const LinearLayout&, const LinearLayout&) = default;

 private:
  std::vector<int> pos_;
};

/// A rooted dependency tree over vertices 1..n. Edge direction and labels are
/// kept only as the parent array; the optimizers see the undirected edge set.
class DepTree {
 public:
  /// `heads[i]` is the head of vertex i + 1, with 0 marking the root.
  /// Throws InvalidInput unless there is exactly one root, every head is in
  /// 0..n and differs from its dependent, and every vertex reaches the root.
  static DepTree from_heads(std::span<const int> heads);

  [[nodiscard]] int size() const noexcept { return static_cast<int>(heads_.size()); }
  [[nodiscard]] int root() const noexcept { return root_; }

  /// Head of `v`, or 0 for the root.
  [[nodiscard]] int parent(int v) const noexcept { return heads_[static_cast<std::size_t>(v - 1)]; }

  /// Children of `v` in ascending id order.
  [[nodiscard]] std::span<const int> children(int v) const noexcept;

  [[nodiscard]] std::span<const int> heads() const noexcept { return heads_; }

  /// The n - 1 edges (parent(v), v), ordered by dependent id.
  [[nodiscard]] const std::vector<Edge>& edges() const noexcept { return edges_; }

  /// Number of vertices in the subtree rooted at `v`.
  [[nodiscard]] int subtree_size(int v) const noexcept { return subtree_size_[static_cast<std::size_t>(v - 1)]; }

  /// Vertices in an order where every parent precedes its children.
  [[nodiscard]] const std::vector<int>& preorder() const noexcept { return preorder_; }

  friend bool operator==(const DepTree& a, const DepTree& b) { return a.heads_ == b.heads_; }

 private:
  DepTree() = default;

  std::vector<int> heads_;
  int root_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> child_offsets_;
  std::vector<int> child_list_;
  std::vector<int> subtree_size_;
  std::vector<int> preorder_;
};

/// π_I: every vertex sits at its own index. Throws InvalidInput for n = 0.
LinearLayout identity_layout(int n);

/// The ⊕ operator: `a` keeps its positions, `b`'s positions shift by a.size().
/// Vertices of `b` are renumbered after those of `a` (block concatenation).
LinearLayout concat_layouts(const LinearLayout& a, const LinearLayout& b);

/// Mirror image: pos'[v] = n + 1 - pos[v].
LinearLayout reverse_layout(const LinearLayout& pi);

/// True iff every subtree occupies a contiguous interval of positions.
bool is_projective(const DepTree& tree, const LinearLayout& pi);

/// Crossing-based route to the same predicate: no two arcs cross and no arc
/// passes over the root.
bool is_projective_by_crossings(const DepTree& tree, const LinearLayout& pi);

/// True iff no two arcs cross when drawn above the line. Works on any graph.
bool is_noncrossing(std::span<const Edge> edges, const LinearLayout& pi);

}  // namespace linlayout
