#include "linlayout/projective.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace linlayout {

namespace {

// Distance from the block root to the edge that faces the parent when the
// block is attached on `side`.
int facing_distance(const BlockLayout& b, Side side) {
  return side == Side::Left ? b.size() - b.root_pos : b.root_pos - 1;
}

BlockLayout orient_for_minla(BlockLayout b, Side side) {
  BlockLayout m = b.mirrored();
  return facing_distance(m, side) < facing_distance(b, side) ? m : b;
}

// Largest cut inside the block once the parent arc is attached on `side`:
// gaps between the root and the facing edge carry one extra edge.
int attached_cutwidth(const std::vector<int>& theta, const BlockLayout& b, Side side) {
  const int m = b.size();
  const int p = b.root_pos;
  int best = 1;  // the boundary gap carries the parent arc
  for (int g = 1; g < m; ++g) {
    const bool near = side == Side::Left ? g >= p : g < p;
    best = std::max(best, theta[static_cast<std::size_t>(g - 1)] + (near ? 1 : 0));
  }
  return best;
}

std::vector<int> reversed_gaps(const std::vector<int>& theta) {
  // Gap g of a mirrored block is gap m - g of the original; the trailing
  // boundary entry stays last.
  std::vector<int> out(theta.size(), 0);
  const auto m = theta.size();
  for (std::size_t g = 1; g < m; ++g) out[g - 1] = theta[m - g - 1];
  return out;
}

void check_tree_size(const DepTree& tree) {
  if (tree.size() < 1) throw InvalidInput("empty tree");
}

BlockLayout solve(const DepTree& tree, const ScoreFn& score_of, const OrientFn& orient, const ProjectiveOptions& opts) {
  check_tree_size(tree);
  std::vector<BlockLayout> blocks(static_cast<std::size_t>(tree.size()));
  const auto& pre = tree.preorder();
  for (auto it = pre.rbegin(); it != pre.rend(); ++it) {
    const int v = *it;
    std::vector<BlockLayout> kids;
    kids.reserve(tree.children(v).size());
    for (int c : tree.children(v)) kids.push_back(std::move(blocks[static_cast<std::size_t>(c - 1)]));

    StrategyOptions so{orient, OddChildRule::FixedRight};
    if (opts.odd_child_correction) so.odd_child = v == tree.root() ? OddChildRule::Leaning : OddChildRule::FarSide;
    blocks[static_cast<std::size_t>(v - 1)] = disjoint_strategy(std::move(kids), score_of, v, so);
  }
  return std::move(blocks[static_cast<std::size_t>(tree.root() - 1)]);
}

}  // namespace

BlockLayout BlockLayout::mirrored() const {
  BlockLayout m;
  m.vertices.assign(vertices.rbegin(), vertices.rend());
  m.root_pos = size() + 1 - root_pos;
  m.score = score;
  return m;
}

Leaning leaning(const BlockLayout& block) {
  const int left = block.root_pos - 1;
  const int right = block.size() - block.root_pos;
  if (left > right) return Leaning::Left;
  if (right > left) return Leaning::Right;
  return Leaning::Centered;
}

BlockLayout SidesAssembly::flatten() const {
  BlockLayout out;
  for (const auto& b : left) out.vertices.insert(out.vertices.end(), b.vertices.begin(), b.vertices.end());
  out.root_pos = static_cast<int>(out.vertices.size()) + 1;
  out.vertices.push_back(root);
  for (const auto& b : right) out.vertices.insert(out.vertices.end(), b.vertices.begin(), b.vertices.end());
  return out;
}

SidesAssembly place_odd_child(SidesAssembly partial, BlockLayout odd, const OrientFn& orient) {
  const Side side = leaning(odd) == Leaning::Left ? Side::Left : Side::Right;
  if (orient) odd = orient(std::move(odd), side);
  if (side == Side::Left) {
    partial.left.push_back(std::move(odd));
  } else {
    partial.right.insert(partial.right.begin(), std::move(odd));
  }
  return partial;
}

BlockLayout disjoint_strategy(std::vector<BlockLayout> children, const ScoreFn& score_of, int root,
                              const StrategyOptions& opts) {
  std::vector<std::size_t> rank(children.size());
  std::iota(rank.begin(), rank.end(), std::size_t{0});
  std::stable_sort(rank.begin(), rank.end(),
                   [&](std::size_t a, std::size_t b) { return children[a].score > children[b].score; });

  auto attach = [&](std::size_t idx, Side side) {
    BlockLayout b = std::move(children[idx]);
    return opts.orient ? opts.orient(std::move(b), side) : b;
  };

  const std::size_t pairs = rank.size() / 2;
  SidesAssembly sides;
  sides.root = root;
  // Ranks are 1-based below: 1, 3, 5, ... go left (outermost first);
  // 2, 4, 6, ... go right (outermost last).
  for (std::size_t i = 0; i < pairs; ++i) sides.left.push_back(attach(rank[2 * i], Side::Left));
  for (std::size_t i = pairs; i-- > 0;) sides.right.push_back(attach(rank[2 * i + 1], Side::Right));

  if (rank.size() % 2 == 1) {
    const std::size_t odd = rank.back();
    switch (opts.odd_child) {
      case OddChildRule::Leaning:
        sides = place_odd_child(std::move(sides), std::move(children[odd]), opts.orient);
        break;
      case OddChildRule::FarSide:
        sides.left.push_back(attach(odd, Side::Left));
        break;
      case OddChildRule::FixedLeft:
        sides.left.push_back(std::move(children[odd]));
        break;
      case OddChildRule::FixedRight:
        sides.right.insert(sides.right.begin(), std::move(children[odd]));
        break;
    }
  }

  BlockLayout out = sides.flatten();
  out.score = score_of ? score_of(out) : 0;
  return out;
}

std::vector<int> block_cut_profile(const BlockLayout& block, const DepTree& tree) {
  const int m = block.size();
  // Local positions indexed by global vertex; only block members are set.
  std::vector<int> local(static_cast<std::size_t>(tree.size() + 1), 0);
  for (int i = 0; i < m; ++i) local[static_cast<std::size_t>(block.vertices[static_cast<std::size_t>(i)])] = i + 1;

  std::vector<int> diff(static_cast<std::size_t>(m + 1), 0);
  const int root = block.root();
  for (int v : block.vertices) {
    if (v == root) continue;
    const int h = tree.parent(v);
    const int hp = local[static_cast<std::size_t>(h)];
    if (hp == 0) throw InvalidInput("block is not a subtree: head of " + std::to_string(v) + " is outside");
    const auto [a, b] = std::minmax({hp, local[static_cast<std::size_t>(v)]});
    ++diff[static_cast<std::size_t>(a - 1)];
    --diff[static_cast<std::size_t>(b - 1)];
  }
  std::vector<int> theta(static_cast<std::size_t>(m), 0);
  int running = 0;
  for (int g = 0; g < m; ++g) {
    running += diff[static_cast<std::size_t>(g)];
    theta[static_cast<std::size_t>(g)] = running;
  }
  return theta;
}

int modified_cutwidth(const BlockLayout& block, const DepTree& tree) {
  const int m = block.size();
  if (m <= 1) return 0;
  const auto theta = block_cut_profile(block, tree);
  const int best = *std::max_element(theta.begin(), theta.end() - 1);
  bool left = false;
  bool right = false;
  for (int g = 1; g < m; ++g) {
    if (theta[static_cast<std::size_t>(g - 1)] != best) continue;
    (g < block.root_pos ? left : right) = true;
  }
  return (left != right) ? best : best + 1;
}

LinearLayout minla_projective(const DepTree& tree, const ProjectiveOptions& opts) {
  const ScoreFn size_score = [](const BlockLayout& b) { return b.size(); };
  const BlockLayout block = solve(tree, size_score, orient_for_minla, opts);
  return LinearLayout::from_order(block.vertices);
}

LinearLayout cutwidth_projective(const DepTree& tree, const ProjectiveOptions& opts) {
  const ScoreFn score = [&tree](const BlockLayout& b) { return modified_cutwidth(b, tree); };
  const OrientFn orient = [&tree](BlockLayout b, Side side) {
    const auto theta = block_cut_profile(b, tree);
    BlockLayout m = b.mirrored();
    const int keep = attached_cutwidth(theta, b, side);
    const int flip = attached_cutwidth(reversed_gaps(theta), m, side);
    if (flip != keep) return flip < keep ? m : b;
    return facing_distance(m, side) < facing_distance(b, side) ? m : b;
  };
  const BlockLayout block = solve(tree, score, orient, opts);
  return LinearLayout::from_order(block.vertices);
}

}  // namespace linlayout
