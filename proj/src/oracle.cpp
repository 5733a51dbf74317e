#include "linlayout/oracle.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <numeric>
#include <queue>

#include "linlayout/random.hpp"

namespace linlayout {

namespace {

using Sequence = std::vector<int>;

void check_limit(int n, int n_limit) {
  if (n > n_limit) {
    throw LimitExceeded("exhaustive search refused: n = " + std::to_string(n) + " exceeds the limit of " +
                        std::to_string(n_limit));
  }
}

// Streams every projective left-to-right order of the subtree at v.
void arrangements(const DepTree& tree, int v, const std::function<void(const Sequence&)>& emit) {
  const auto kids = tree.children(v);
  std::vector<std::vector<Sequence>> options(kids.size());
  for (std::size_t i = 0; i < kids.size(); ++i) {
    arrangements(tree, kids[i], [&](const Sequence& s) { options[i].push_back(s); });
  }

  // Item 0 is v itself, item i > 0 is the block of kids[i - 1].
  std::vector<std::size_t> items(kids.size() + 1);
  std::iota(items.begin(), items.end(), std::size_t{0});
  std::vector<std::size_t> choice(kids.size(), 0);
  Sequence seq;
  seq.reserve(static_cast<std::size_t>(tree.subtree_size(v)));
  do {
    std::fill(choice.begin(), choice.end(), 0);
    for (;;) {
      seq.clear();
      for (std::size_t item : items) {
        if (item == 0) {
          seq.push_back(v);
        } else {
          const auto& block = options[item - 1][choice[item - 1]];
          seq.insert(seq.end(), block.begin(), block.end());
        }
      }
      emit(seq);
      // Odometer over the per-child choices.
      std::size_t k = 0;
      while (k < choice.size() && ++choice[k] == options[k].size()) choice[k++] = 0;
      if (k == choice.size()) break;
    }
  } while (std::next_permutation(items.begin(), items.end()));
}

struct Best {
  OracleResult result;
  bool found = false;

  void offer(const LinearLayout& pi, std::int64_t value) {
    if (!found || value < result.value || (value == result.value && pi < result.layout)) {
      result = {pi, value};
      found = true;
    }
  }
};

bool valid_heads(const std::vector<int>& heads) {
  const int n = static_cast<int>(heads.size());
  int roots = 0;
  for (int h : heads) roots += h == 0;
  if (roots != 1) return false;
  // Walk up from every vertex; more than n steps means a cycle.
  for (int v = 1; v <= n; ++v) {
    int cur = v;
    for (int steps = 0; cur != 0; ++steps) {
      if (steps > n) return false;
      cur = heads[static_cast<std::size_t>(cur - 1)];
    }
  }
  return true;
}

}  // namespace

OracleResult optimal_unconstrained(std::span<const Edge> edges, int n, Objective obj, int n_limit) {
  if (n < 1) throw InvalidInput("graph must have at least one vertex");
  check_limit(n, n_limit);
  std::vector<int> pos(static_cast<std::size_t>(n));
  std::iota(pos.begin(), pos.end(), 1);
  Best best;
  // Lexicographic enumeration: the first minimizer seen is the smallest.
  do {
    LinearLayout pi(pos);
    const std::int64_t value = exact_cost(obj, edges, pi);
    if (!best.found || value < best.result.value) best.offer(pi, value);
  } while (std::next_permutation(pos.begin(), pos.end()));
  return best.result;
}

void for_each_projective_layout(const DepTree& tree, const std::function<void(const LinearLayout&)>& visit) {
  arrangements(tree, tree.root(), [&](const Sequence& s) { visit(LinearLayout::from_order(s)); });
}

OracleResult optimal_projective(const DepTree& tree, Objective obj, int n_limit) {
  check_limit(tree.size(), n_limit);
  Best best;
  for_each_projective_layout(tree, [&](const LinearLayout& pi) {
    assert(is_projective(tree, pi));
    best.offer(pi, exact_cost(obj, tree, pi));
  });
  return best.result;
}

DepTree random_tree(int n, std::uint64_t seed) {
  if (n < 1) throw InvalidInput("random tree needs n >= 1");
  std::vector<int> heads(static_cast<std::size_t>(n), 0);
  if (n == 1) return DepTree::from_heads(heads);

  Pcg32 rng(seed);
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n + 1));
  auto link = [&](int a, int b) {
    adj[static_cast<std::size_t>(a)].push_back(b);
    adj[static_cast<std::size_t>(b)].push_back(a);
  };

  std::vector<int> code(static_cast<std::size_t>(n - 2));
  for (int& x : code) x = static_cast<int>(rng.bounded(static_cast<std::uint32_t>(n))) + 1;

  std::vector<int> degree(static_cast<std::size_t>(n + 1), 1);
  for (int x : code) ++degree[static_cast<std::size_t>(x)];
  std::priority_queue<int, std::vector<int>, std::greater<>> leaves;
  for (int v = 1; v <= n; ++v) {
    if (degree[static_cast<std::size_t>(v)] == 1) leaves.push(v);
  }
  for (int x : code) {
    const int leaf = leaves.top();
    leaves.pop();
    link(leaf, x);
    if (--degree[static_cast<std::size_t>(x)] == 1) leaves.push(x);
  }
  const int a = leaves.top();
  leaves.pop();
  link(a, leaves.top());

  // Orient away from vertex 1.
  std::vector<char> seen(static_cast<std::size_t>(n + 1), 0);
  std::vector<int> stack{1};
  seen[1] = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int w : adj[static_cast<std::size_t>(v)]) {
      if (seen[static_cast<std::size_t>(w)]) continue;
      seen[static_cast<std::size_t>(w)] = 1;
      heads[static_cast<std::size_t>(w - 1)] = v;
      stack.push_back(w);
    }
  }
  return DepTree::from_heads(heads);
}

void for_each_rooted_tree(int n, const std::function<void(const DepTree&)>& visit) {
  if (n < 1) throw InvalidInput("tree enumeration needs n >= 1");
  // Odometer over heads[v] in {0..n} \ {v}.
  std::vector<int> heads(static_cast<std::size_t>(n), 0);
  auto skip_self = [&](std::size_t i) {
    if (heads[i] == static_cast<int>(i + 1)) ++heads[i];
  };
  for (std::size_t i = 0; i < heads.size(); ++i) skip_self(i);
  for (;;) {
    if (valid_heads(heads)) visit(DepTree::from_heads(heads));
    std::size_t k = 0;
    for (; k < heads.size(); ++k) {
      ++heads[k];
      skip_self(k);
      if (heads[k] <= n) break;
      heads[k] = 0;
      skip_self(k);
    }
    if (k == heads.size()) break;
  }
}

}  // namespace linlayout
