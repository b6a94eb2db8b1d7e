#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tkhui/core.hpp"

namespace tkhui {

struct UPNode {
  static constexpr std::uint32_t kNone = UINT32_MAX;

  ItemId item = 0;
  std::uint32_t support = 0;
  /// Path-prefix utility accumulated over every transaction through this node.
  Utility node_utility = 0;
  std::uint32_t parent = kNone;
  /// child item -> node index
  std::map<ItemId, std::uint32_t> children;
  /// next node carrying the same item
  std::uint32_t node_link = kNone;
};

struct HeaderEntry {
  ItemId item;
  Utility twu;
  std::uint32_t head = UPNode::kNone;
};

/// Prefix tree over TWU-descending transactions. Nodes live in an arena;
/// index 0 is the item-less root.
class UPTree {
 public:
  const UPNode& root() const { return nodes_[0]; }
  const UPNode& node(std::uint32_t index) const { return nodes_[index]; }
  /// Non-root node count.
  std::size_t node_count() const { return nodes_.size() - 1; }
  /// TWU descending, ties by ascending id.
  const std::vector<HeaderEntry>& header() const { return header_; }
  /// Indices of every node for `item`, following the link chain.
  std::vector<std::uint32_t> chain(ItemId item) const;

  /// Indented dump, one node per line: `label support=S utility=U`.
  std::string dump(const ItemTable& items) const;

 private:
  friend UPTree build_up_tree(const Database&, const ItemStats&, Utility);

  std::vector<UPNode> nodes_{UPNode{}};
  std::vector<HeaderEntry> header_;
  std::vector<std::uint32_t> header_pos_;
};

/// Drops items with TWU < delta, then inserts each transaction root-down in
/// TWU-descending order.
UPTree build_up_tree(const Database& db, const ItemStats& stats, Utility delta);

/// node_utility of every non-root node.
std::vector<Utility> node_utility_values(const UPTree& tree);

struct MdPair {
  ItemId root_child;
  ItemId descendant;
  std::uint32_t support;
  Utility value;
};

/// For each root child a and each item b in a's subtree:
/// (miu(a) + miu(b)) * (summed support of b-nodes below a).
std::vector<MdPair> md_pairs(const UPTree& tree, const ItemStats& stats);
std::vector<Utility> md_pair_values(const UPTree& tree, const ItemStats& stats);

}  // namespace tkhui
