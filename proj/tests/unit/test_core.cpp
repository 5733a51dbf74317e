#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "linlayout/core.hpp"
#include "linlayout/oracle.hpp"
#include "support.hpp"

using namespace linlayout;
using testing::order;
using testing::positions;
using testing::tree;

TEST_CASE("identity layout") {
  CHECK(positions(identity_layout(1)) == std::vector<int>{1});
  CHECK(positions(identity_layout(3)) == std::vector<int>{1, 2, 3});
  const auto id13 = identity_layout(13);
  for (int v = 1; v <= 13; ++v) CHECK(id13[v] == v);
  CHECK_THROWS_AS(identity_layout(0), InvalidInput);
}

TEST_CASE("layouts must be bijections") {
  CHECK_THROWS_AS(LinearLayout({1, 1}), InvalidInput);
  CHECK_THROWS_AS(LinearLayout({0, 1}), InvalidInput);
  CHECK_THROWS_AS(LinearLayout({1, 3}), InvalidInput);
  CHECK_THROWS_AS(LinearLayout::from_order(std::vector<int>{2, 2}), InvalidInput);
  CHECK(LinearLayout({2, 3, 1}).order() == std::vector<int>{3, 1, 2});
  CHECK(LinearLayout::from_order(std::vector<int>{3, 1, 2}) == LinearLayout({2, 3, 1}));
}

TEST_CASE("concatenation") {
  CHECK(positions(concat_layouts(LinearLayout({1}), LinearLayout({1}))) == std::vector<int>{1, 2});
  CHECK(positions(concat_layouts(LinearLayout({2, 1}), LinearLayout({1, 3, 2}))) == std::vector<int>{2, 1, 3, 5, 4});

  LinearLayout folded({1});
  for (int i = 1; i < 9; ++i) folded = concat_layouts(folded, LinearLayout({1}));
  CHECK(folded == identity_layout(9));
}

TEST_CASE("reversal") {
  CHECK(positions(reverse_layout(LinearLayout({1, 2, 3}))) == std::vector<int>{3, 2, 1});
  CHECK(positions(reverse_layout(LinearLayout({2, 1}))) == std::vector<int>{1, 2});
}

TEST_CASE("layout algebra properties on random layouts") {
  Pcg32 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const int na = 1 + static_cast<int>(rng.bounded(8));
    const int nb = 1 + static_cast<int>(rng.bounded(8));
    const int nc = 1 + static_cast<int>(rng.bounded(8));
    const auto a = testing::random_layout(na, rng);
    const auto b = testing::random_layout(nb, rng);
    const auto c = testing::random_layout(nc, rng);

    const auto left = concat_layouts(concat_layouts(a, b), c);
    CHECK(left == concat_layouts(a, concat_layouts(b, c)));

    auto sorted = positions(left);
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> expect(sorted.size());
    std::iota(expect.begin(), expect.end(), 1);
    CHECK(sorted == expect);

    CHECK(reverse_layout(reverse_layout(a)) == a);
  }
}

TEST_CASE("dependency tree validation") {
  CHECK_THROWS_AS(tree({}), InvalidInput);
  CHECK_THROWS_AS(tree({0, 0}), InvalidInput);        // two roots
  CHECK_THROWS_AS(tree({2, 1}), InvalidInput);        // no root
  CHECK_THROWS_AS(tree({0, 3, 2}), InvalidInput);     // cycle away from the root
  CHECK_THROWS_AS(tree({0, 4}), InvalidInput);        // head out of range
  CHECK_THROWS_AS(tree({0, 2}), InvalidInput);        // own head
  CHECK_THROWS_AS(tree({0, -1}), InvalidInput);

  const auto t = tree({2, 3, 0});
  CHECK(t.size() == 3);
  CHECK(t.root() == 3);
  CHECK(t.parent(1) == 2);
  CHECK(t.edges().size() == 2);
  CHECK(t.subtree_size(3) == 3);
  CHECK(t.subtree_size(1) == 1);

  const auto star = tree({3, 3, 0, 3, 3});
  const auto kids = star.children(3);
  CHECK(std::vector<int>(kids.begin(), kids.end()) == std::vector<int>{1, 2, 4, 5});
  CHECK(star.children(1).empty());
}

TEST_CASE("projectivity of the 4-vertex crossing example") {
  // Root 3, edges (3,1), (3,2), (2,4): under the identity, arc (1,3) crosses arc (2,4).
  const auto t = tree({3, 3, 0, 2});
  const auto pi = identity_layout(4);
  CHECK_FALSE(is_projective(t, pi));
  CHECK_FALSE(is_projective_by_crossings(t, pi));
  CHECK_FALSE(is_noncrossing(t.edges(), pi));
  CHECK(is_projective(t, order({1, 3, 2, 4})));
}

TEST_CASE("no crossings alone does not make a layout projective") {
  // Path rooted at 1 with edges (1,2), (2,3); order 2 1 3 draws two disjoint arcs,
  // but the subtree {2,3} is split by the root.
  const auto t = tree({0, 1, 2});
  const auto pi = order({2, 1, 3});
  CHECK(is_noncrossing(t.edges(), pi));
  CHECK_FALSE(is_projective(t, pi));
  CHECK_FALSE(is_projective_by_crossings(t, pi));
}

TEST_CASE("the best hub graph layout draws no crossing arcs") {
  const auto edges = testing::hub_graph_edges();
  CHECK(is_noncrossing(edges, order({13, 12, 11, 10, 9, 8, 1, 7, 6, 5, 4, 3, 2})));
  CHECK_FALSE(is_noncrossing(edges, order({13, 12, 11, 10, 5, 8, 1, 7, 6, 4, 9, 3, 2})));
}

namespace {

void check_agreement_on_all_layouts(const DepTree& t) {
  std::vector<int> o(static_cast<std::size_t>(t.size()));
  std::iota(o.begin(), o.end(), 1);
  do {
    const auto pi = LinearLayout::from_order(o);
    REQUIRE(is_projective(t, pi) == is_projective_by_crossings(t, pi));
  } while (std::next_permutation(o.begin(), o.end()));
}

}  // namespace

TEST_CASE("contiguity and crossing tests agree") {
  SUBCASE("every rooted tree and every layout, n <= 5") {
    for (int n = 1; n <= 5; ++n) for_each_rooted_tree(n, check_agreement_on_all_layouts);
  }
  SUBCASE("every layout of random trees, n = 6, 7") {
    for (int n = 6; n <= 7; ++n) {
      for (std::uint64_t s = 0; s < 20; ++s) check_agreement_on_all_layouts(random_tree(n, s));
    }
  }
  SUBCASE("random pairs, n <= 12") {
    Pcg32 rng(5);
    for (int trial = 0; trial < 5000; ++trial) {
      const int n = 1 + static_cast<int>(rng.bounded(12));
      const auto t = random_tree(n, rng.next());
      const auto pi = testing::random_layout(n, rng);
      REQUIRE(is_projective(t, pi) == is_projective_by_crossings(t, pi));
    }
  }
}
