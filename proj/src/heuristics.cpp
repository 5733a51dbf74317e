#include "linlayout/heuristics.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "linlayout/random.hpp"

namespace linlayout {

LinearLayout reverse_cuthill_mckee(int n, std::span<const Edge> edges) {
  if (n < 1) throw InvalidInput("graph must have at least one vertex");
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n + 1));
  for (const Edge& e : edges) {
    if (e.u < 1 || e.u > n || e.v < 1 || e.v > n || e.u == e.v) throw InvalidInput("invalid edge");
    adj[static_cast<std::size_t>(e.u)].push_back(e.v);
    adj[static_cast<std::size_t>(e.v)].push_back(e.u);
  }
  auto degree = [&](int v) { return adj[static_cast<std::size_t>(v)].size(); };
  auto by_degree = [&](int a, int b) { return degree(a) != degree(b) ? degree(a) < degree(b) : a < b; };
  for (auto& list : adj) std::sort(list.begin(), list.end(), by_degree);

  std::vector<int> starts(static_cast<std::size_t>(n));
  std::iota(starts.begin(), starts.end(), 1);
  std::stable_sort(starts.begin(), starts.end(), by_degree);

  std::vector<char> seen(static_cast<std::size_t>(n + 1), 0);
  std::vector<int> visit;
  visit.reserve(static_cast<std::size_t>(n));
  for (int s : starts) {
    if (seen[static_cast<std::size_t>(s)]) continue;
    std::deque<int> queue{s};
    seen[static_cast<std::size_t>(s)] = 1;
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      visit.push_back(v);
      for (int w : adj[static_cast<std::size_t>(v)]) {
        if (seen[static_cast<std::size_t>(w)]) continue;
        seen[static_cast<std::size_t>(w)] = 1;
        queue.push_back(w);
      }
    }
  }
  std::reverse(visit.begin(), visit.end());
  return LinearLayout::from_order(visit);
}

LinearLayout transposition_monte_carlo(int n, std::span<const Edge> edges, const McConfig& cfg,
                                       std::vector<AcceptedSwap>* log) {
  if (cfg.steps < 0) throw InvalidInput("step budget must be non-negative");
  LinearLayout pi = identity_layout(n);
  if (n < 2) return pi;

  Pcg32 rng(cfg.seed);
  std::int64_t cost = exact_cost(cfg.objective, edges, pi);
  const auto un = static_cast<std::uint32_t>(n);
  for (int t = 1; t <= cfg.steps; ++t) {
    const int i = static_cast<int>(rng.bounded(un));
    int j = static_cast<int>(rng.bounded(un - 1));
    if (j >= i) ++j;
    LinearLayout candidate = pi.swapped(i + 1, j + 1);
    const std::int64_t c = exact_cost(cfg.objective, edges, candidate);
    if (c < cost) {
      if (log) log->push_back({t, i + 1, j + 1, cost, c});
      pi = std::move(candidate);
      cost = c;
    }
  }
  return pi;
}

}  // namespace linlayout
