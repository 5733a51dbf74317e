#include "linlayout/core.hpp"

#include <algorithm>
#include <utility>

namespace linlayout {

LinearLayout::LinearLayout(std::vector<int> positions) : pos_(std::move(positions)) {
  const auto n = pos_.size();
  std::vector<char> seen(n + 1, 0);
  for (int p : pos_) {
    if (p < 1 || static_cast<std::size_t>(p) > n || seen[static_cast<std::size_t>(p)]) {
      throw InvalidInput("layout is not a bijection onto 1.." + std::to_string(n));
    }
    seen[static_cast<std::size_t>(p)] = 1;
  }
}

LinearLayout LinearLayout::from_order(std::span<const int> order) {
  const int n = static_cast<int>(order.size());
  std::vector<int> pos(order.size(), 0);
  for (int i = 0; i < n; ++i) {
    const int v = order[static_cast<std::size_t>(i)];
    if (v < 1 || v > n || pos[static_cast<std::size_t>(v - 1)] != 0) {
      throw InvalidInput("order is not a permutation of 1.." + std::to_string(n));
    }
    pos[static_cast<std::size_t>(v - 1)] = i + 1;
  }
  return LinearLayout(std::move(pos));
}

std::vector<int> LinearLayout::order() const {
  std::vector<int> out(pos_.size());
  for (std::size_t v = 0; v < pos_.size(); ++v) out[static_cast<std::size_t>(pos_[v] - 1)] = static_cast<int>(v + 1);
  return out;
}

LinearLayout LinearLayout::swapped(int a, int b) const {
  LinearLayout copy = *this;
  std::swap(copy.pos_[static_cast<std::size_t>(a - 1)], copy.pos_[static_cast<std::size_t>(b - 1)]);
  return copy;
}

DepTree DepTree::from_heads(std::span<const int> heads) {
  const int n = static_cast<int>(heads.size());
  if (n == 0) throw InvalidInput("tree must have at least one vertex");

  DepTree t;
  t.heads_.assign(heads.begin(), heads.end());
  for (int v = 1; v <= n; ++v) {
    const int h = heads[static_cast<std::size_t>(v - 1)];
    if (h < 0 || h > n) throw InvalidInput("head of " + std::to_string(v) + " out of range");
    if (h == v) throw InvalidInput("vertex " + std::to_string(v) + " is its own head");
    if (h == 0) {
      if (t.root_ != 0) throw InvalidInput("multiple roots");
      t.root_ = v;
    }
  }
  if (t.root_ == 0) throw InvalidInput("no root");

  // CSR children lists, ascending by id.
  t.child_offsets_.assign(static_cast<std::size_t>(n + 2), 0);
  for (int h : heads) ++t.child_offsets_[static_cast<std::size_t>(h + 1)];
  for (int v = 1; v <= n + 1; ++v) t.child_offsets_[static_cast<std::size_t>(v)] += t.child_offsets_[static_cast<std::size_t>(v - 1)];
  t.child_list_.assign(static_cast<std::size_t>(n), 0);
  {
    auto fill = t.child_offsets_;
    for (int v = 1; v <= n; ++v) {
      const int h = heads[static_cast<std::size_t>(v - 1)];
      t.child_list_[static_cast<std::size_t>(fill[static_cast<std::size_t>(h)]++)] = v;
    }
  }

  // Reachability from the root doubles as the acyclicity check.
  t.preorder_.reserve(static_cast<std::size_t>(n));
  std::vector<int> stack{t.root_};
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    t.preorder_.push_back(v);
    const auto kids = t.children(v);
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
  }
  if (static_cast<int>(t.preorder_.size()) != n) throw InvalidInput("head array contains a cycle");

  t.subtree_size_.assign(static_cast<std::size_t>(n), 1);
  for (auto it = t.preorder_.rbegin(); it != t.preorder_.rend(); ++it) {
    const int h = t.parent(*it);
    if (h != 0) t.subtree_size_[static_cast<std::size_t>(h - 1)] += t.subtree_size(*it);
  }

  t.edges_.reserve(static_cast<std::size_t>(n - 1));
  for (int v = 1; v <= n; ++v) {
    if (v != t.root_) t.edges_.push_back({t.parent(v), v});
  }
  return t;
}

std::span<const int> DepTree::children(int v) const noexcept {
  const auto b = static_cast<std::size_t>(child_offsets_[static_cast<std::size_t>(v)]);
  const auto e = static_cast<std::size_t>(child_offsets_[static_cast<std::size_t>(v + 1)]);
  return std::span<const int>(child_list_).subspan(b, e - b);
}

LinearLayout identity_layout(int n) {
  if (n < 1) throw InvalidInput("identity layout needs n >= 1");
  std::vector<int> pos(static_cast<std::size_t>(n));
  for (int v = 1; v <= n; ++v) pos[static_cast<std::size_t>(v - 1)] = v;
  return LinearLayout(std::move(pos));
}

LinearLayout concat_layouts(const LinearLayout& a, const LinearLayout& b) {
  std::vector<int> pos(a.positions().begin(), a.positions().end());
  pos.reserve(pos.size() + b.positions().size());
  for (int p : b.positions()) pos.push_back(p + a.size());
  return LinearLayout(std::move(pos));
}

LinearLayout reverse_layout(const LinearLayout& pi) {
  const int n = pi.size();
  std::vector<int> pos(pi.positions().begin(), pi.positions().end());
  for (int& p : pos) p = n + 1 - p;
  return LinearLayout(std::move(pos));
}

bool is_projective(const DepTree& tree, const LinearLayout& pi) {
  const int n = tree.size();
  if (pi.size() != n) throw InvalidInput("layout and tree sizes differ");
  std::vector<int> lo(static_cast<std::size_t>(n)), hi(static_cast<std::size_t>(n));
  for (int v = 1; v <= n; ++v) lo[static_cast<std::size_t>(v - 1)] = hi[static_cast<std::size_t>(v - 1)] = pi[v];
  const auto& pre = tree.preorder();
  for (auto it = pre.rbegin(); it != pre.rend(); ++it) {
    const auto v = static_cast<std::size_t>(*it - 1);
    if (hi[v] - lo[v] + 1 != tree.subtree_size(*it)) return false;
    const int h = tree.parent(*it);
    if (h != 0) {
      const auto hv = static_cast<std::size_t>(h - 1);
      lo[hv] = std::min(lo[hv], lo[v]);
      hi[hv] = std::max(hi[hv], hi[v]);
    }
  }
  return true;
}

bool is_noncrossing(std::span<const Edge> edges, const LinearLayout& pi) {
  std::vector<std::pair<int, int>> arcs;
  arcs.reserve(edges.size());
  for (const Edge& e : edges) arcs.emplace_back(std::minmax({pi[e.u], pi[e.v]}));
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const auto [a, b] = arcs[i];
    for (std::size_t j = i + 1; j < arcs.size(); ++j) {
      const auto [c, d] = arcs[j];
      if ((a < c && c < b && b < d) || (c < a && a < d && d < b)) return false;
    }
  }
  return true;
}

bool is_projective_by_crossings(const DepTree& tree, const LinearLayout& pi) {
  if (pi.size() != tree.size()) throw InvalidInput("layout and tree sizes differ");
  const int r = pi[tree.root()];
  for (const Edge& e : tree.edges()) {
    const auto [a, b] = std::minmax({pi[e.u], pi[e.v]});
    if (a < r && r < b) return false;
  }
  return is_noncrossing(tree.edges(), pi);
}

}  // namespace linlayout
