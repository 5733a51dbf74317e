#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "linlayout/core.hpp"
#include "linlayout/random.hpp"

namespace testing {

inline std::string fixture(const std::string& name) { return std::string(LINLAYOUT_FIXTURES_DIR) + "/" + name; }

inline const nlohmann::json& goldens() {
  static const nlohmann::json doc = [] {
    std::ifstream in(fixture("oracle_goldens.json"));
    return nlohmann::json::parse(in);
  }();
  return doc;
}

inline linlayout::DepTree tree(const std::vector<int>& heads) { return linlayout::DepTree::from_heads(heads); }

inline linlayout::LinearLayout order(const std::vector<int>& vertices) {
  return linlayout::LinearLayout::from_order(vertices);
}

inline std::vector<int> positions(const linlayout::LinearLayout& pi) {
  return {pi.positions().begin(), pi.positions().end()};
}

inline linlayout::LinearLayout random_layout(int n, linlayout::Pcg32& rng) {
  std::vector<int> o(static_cast<std::size_t>(n));
  for (int v = 1; v <= n; ++v) o[static_cast<std::size_t>(v - 1)] = v;
  linlayout::shuffle(std::span<int>(o), rng);
  return linlayout::LinearLayout::from_order(o);
}

/// The hub graph: vertex 1 joined to 2..13, plus (3,4) and (4,5).
inline std::vector<linlayout::Edge> hub_graph_edges() {
  std::vector<linlayout::Edge> e;
  for (int v = 2; v <= 13; ++v) e.push_back({1, v});
  e.push_back({3, 4});
  e.push_back({4, 5});
  return e;
}

}  // namespace testing
