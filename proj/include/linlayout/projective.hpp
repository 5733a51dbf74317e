#pragma once

#include <functional>
#include <vector>

#include "linlayout/core.hpp"

namespace linlayout {

/// A subtree laid out on its own: `vertices` left to right, the subtree root
/// at local position `root_pos` (1-based).
struct BlockLayout {
  std::vector<int> vertices;
  int root_pos = 1;
  int score = 0;

  [[nodiscard]] int size() const noexcept { return static_cast<int>(vertices.size()); }
  [[nodiscard]] int root() const noexcept { return vertices[static_cast<std::size_t>(root_pos - 1)]; }
  [[nodiscard]] BlockLayout mirrored() const;

  [[nodiscard]] static BlockLayout singleton(int v) { return {{v}, 1, 0}; }
};

enum class Side { Left, Right };
enum class Leaning { Left, Right, Centered };

/// Left when more of the block sits left of its root, Right for the mirror
/// case, Centered otherwise.
Leaning leaning(const BlockLayout& block);

/// Children arranged around a root. `left` is stored outermost first,
/// `right` innermost first, so flattening is a plain concatenation.
struct SidesAssembly {
  int root = 0;
  std::vector<BlockLayout> left;
  std::vector<BlockLayout> right;

  [[nodiscard]] BlockLayout flatten() const;
};

/// Re-orients a block about to be attached on `side` (or returns it as is).
using OrientFn = std::function<BlockLayout(BlockLayout, Side)>;
using ScoreFn = std::function<int(const BlockLayout&)>;

/// Puts the leftover lowest-ranked child innermost on the side it leans to;
/// centered blocks go right.
SidesAssembly place_odd_child(SidesAssembly partial, BlockLayout odd, const OrientFn& orient = {});

enum class OddChildRule {
  /// place_odd_child: side chosen by the block's leaning.
  Leaning,
  /// Innermost on the left, the side holding the top-ranked child.
  FarSide,
  /// Innermost on the left / right, attached as computed (no orientation).
  /// Uncorrected placements, kept for tests.
  FixedLeft,
  FixedRight,
};

struct StrategyOptions {
  /// Empty: every block is attached as computed.
  OrientFn orient;
  OddChildRule odd_child = OddChildRule::Leaning;
};

/// Combines child blocks around `root`: children ranked by descending score
/// (ties by their order in `children`), odd ranks laid out on the left from
/// the outside in, even ranks on the right from the inside out, and a
/// leftover odd child placed per `opts.odd_child`. The result's score is
/// `score_of(result)`.
BlockLayout disjoint_strategy(std::vector<BlockLayout> children, const ScoreFn& score_of, int root,
                              const StrategyOptions& opts = {});

/// Cut profile of a block over the tree edges inside it; entry g - 1 is the
/// cut at local gap g.
std::vector<int> block_cut_profile(const BlockLayout& block, const DepTree& tree);

/// Cutwidth of the block, plus one unless every maximizing gap lies strictly
/// on one side of the root (gap g is left of the root iff g < root_pos).
/// Zero for a single vertex.
int modified_cutwidth(const BlockLayout& block, const DepTree& tree);

struct ProjectiveOptions {
  /// When false, odd children fall back to OddChildRule::FixedRight at every
  /// node. Exists so the verification suite can demonstrate the correction.
  bool odd_child_correction = true;
};

/// Projective layout minimizing the sum of edge lengths.
LinearLayout minla_projective(const DepTree& tree, const ProjectiveOptions& opts = {});

/// Projective layout minimizing the cutwidth.
LinearLayout cutwidth_projective(const DepTree& tree, const ProjectiveOptions& opts = {});

}  // namespace linlayout
