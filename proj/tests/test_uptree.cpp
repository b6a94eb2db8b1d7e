#include <algorithm>

#include "doctest.h"
#include "oracle.hpp"
#include "tkhui/strategies.hpp"
#include "tkhui/uptree.hpp"

using namespace tkhui;
using oracle::sample_db;

TEST_CASE("UP-Tree of the running example") {
  const auto& db = sample_db();
  auto stats = compute_item_stats(db);
  auto tree = build_up_tree(db, stats, 0);
  CHECK(tree.node_count() == 17);
  CHECK(db.labels_of(std::vector<ItemId>{tree.header()[0].item}) == std::vector<Label>{3});
  CHECK(tree.header()[0].twu == 170);
  REQUIRE(tree.root().children.size() == 1);
  const auto& c = tree.node(tree.root().children.begin()->second);
  CHECK(db.items.label(c.item) == 3);
  CHECK(c.support == 8);
  CHECK(c.node_utility == 19);
  CHECK(tree.dump(db.items).rfind("3 support=8 utility=19", 0) == 0);
}

TEST_CASE("node-utility raise") {
  const auto& db = sample_db();
  auto stats = compute_item_stats(db);
  auto tree = build_up_tree(db, stats, 0);
  auto nu = node_utility_values(tree);
  CHECK(nu.size() == 17);
  CHECK(kth_highest(nu, 6) == 27);
  ThresholdState s(32);
  raise_to_kth(nu, 6, s, "nu");
  CHECK(s.delta() == 32);
}

TEST_CASE("MD pairs below the root child") {
  const auto& db = sample_db();
  auto stats = compute_item_stats(db);
  auto tree = build_up_tree(db, stats, 0);
  auto pairs = md_pairs(tree, stats);
  std::vector<Label> desc;
  for (const auto& p : pairs) desc.push_back(db.items.label(p.descendant));
  CHECK(desc == std::vector<Label>{5, 1, 4, 6, 2, 7});  // e a d f b g
  CHECK(md_pair_values(tree, stats) == std::vector<Utility>{28, 36, 15, 10, 15, 6});
  ThresholdState s(32);
  CHECK(raise_to_kth(md_pair_values(tree, stats), 6, s, "md") == 32);
}

TEST_CASE("node links cover each item's support") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto db = oracle::random_db(seed);
    auto stats = compute_item_stats(db);
    auto tree = build_up_tree(db, stats, 0);
    std::size_t total = 0;
    for (const auto& h : tree.header()) {
      std::uint32_t sup = 0;
      for (auto n : tree.chain(h.item)) {
        CHECK(tree.node(n).item == h.item);
        sup += tree.node(n).support;
      }
      CHECK(sup == stats[h.item].support);
      total += tree.chain(h.item).size();
    }
    CHECK(total == tree.node_count());
    for (std::size_t i = 1; i < tree.header().size(); ++i) {
      CHECK(tree.header()[i - 1].twu >= tree.header()[i].twu);
    }
  }
}

TEST_CASE("threshold drops unpromising items from the tree") {
  const auto& db = sample_db();
  auto stats = compute_item_stats(db);
  auto tree = build_up_tree(db, stats, 39);
  CHECK(tree.header().size() == 6);
  CHECK(tree.chain(db.items.id(7)).empty());
  auto empty = build_up_tree(db, stats, 1000);
  CHECK(empty.node_count() == 0);
  CHECK(empty.header().empty());
  CHECK(md_pairs(empty, stats).empty());
}
