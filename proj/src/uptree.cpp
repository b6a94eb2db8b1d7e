#include "tkhui/uptree.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace tkhui {

std::vector<std::uint32_t> UPTree::chain(ItemId item) const {
  std::vector<std::uint32_t> out;
  if (item >= header_pos_.size() || header_pos_[item] == UPNode::kNone) return out;
  for (auto n = header_[header_pos_[item]].head; n != UPNode::kNone; n = nodes_[n].node_link) {
    out.push_back(n);
  }
  return out;
}

std::string UPTree::dump(const ItemTable& items) const {
  std::ostringstream out;
  auto visit = [&](auto&& self, std::uint32_t index, int depth) -> void {
    const auto& n = nodes_[index];
    if (index != 0) {
      out << std::string(static_cast<std::size_t>(2 * (depth - 1)), ' ') << items.label(n.item)
          << " support=" << n.support << " utility=" << n.node_utility << '\n';
    }
    // children in header order
    std::vector<std::uint32_t> kids;
    for (const auto& [item, child] : n.children) kids.push_back(child);
    std::sort(kids.begin(), kids.end(), [&](std::uint32_t a, std::uint32_t b) {
      return header_pos_[nodes_[a].item] < header_pos_[nodes_[b].item];
    });
    for (auto c : kids) self(self, c, depth + 1);
  };
  visit(visit, 0, 0);
  return out.str();
}

UPTree build_up_tree(const Database& db, const ItemStats& stats, Utility delta) {
  UPTree tree;
  std::vector<ItemId> promising;
  for (ItemId id = 0; id < db.item_count(); ++id) {
    if (stats[id].support > 0 && stats[id].twu >= delta) promising.push_back(id);
  }
  std::stable_sort(promising.begin(), promising.end(),
                   [&](ItemId a, ItemId b) { return stats[a].twu > stats[b].twu; });
  tree.header_pos_.assign(db.item_count(), UPNode::kNone);
  for (std::uint32_t p = 0; p < promising.size(); ++p) {
    tree.header_.push_back({promising[p], stats[promising[p]].twu, UPNode::kNone});
    tree.header_pos_[promising[p]] = p;
  }
  std::vector<std::uint32_t> tail(promising.size(), UPNode::kNone);

  std::vector<std::pair<std::uint32_t, Utility>> path;  // (header position, utility)
  for (const auto& t : db.transactions) {
    path.clear();
    for (std::size_t i = 0; i < t.items.size(); ++i) {
      auto pos = tree.header_pos_[t.items[i]];
      if (pos != UPNode::kNone) path.emplace_back(pos, t.utils[i]);
    }
    std::sort(path.begin(), path.end());
    std::uint32_t cur = 0;
    Utility prefix = 0;
    for (const auto& [pos, u] : path) {
      ItemId item = tree.header_[pos].item;
      prefix += u;
      auto found = tree.nodes_[cur].children.find(item);
      std::uint32_t next;
      if (found == tree.nodes_[cur].children.end()) {
        next = static_cast<std::uint32_t>(tree.nodes_.size());
        UPNode n;
        n.item = item;
        n.parent = cur;
        tree.nodes_.push_back(std::move(n));
        tree.nodes_[cur].children.emplace(item, next);
        if (tail[pos] == UPNode::kNone) {
          tree.header_[pos].head = next;
        } else {
          tree.nodes_[tail[pos]].node_link = next;
        }
        tail[pos] = next;
      } else {
        next = found->second;
      }
      tree.nodes_[next].support += 1;
      tree.nodes_[next].node_utility += prefix;
      cur = next;
    }
  }
  return tree;
}

std::vector<Utility> node_utility_values(const UPTree& tree) {
  std::vector<Utility> out;
  out.reserve(tree.node_count());
  for (std::uint32_t i = 1; i <= tree.node_count(); ++i) out.push_back(tree.node(i).node_utility);
  return out;
}

std::vector<MdPair> md_pairs(const UPTree& tree, const ItemStats& stats) {
  std::vector<MdPair> out;
  for (const auto& h : tree.header()) {
    auto it = tree.root().children.find(h.item);
    if (it == tree.root().children.end()) continue;
    std::map<ItemId, std::uint32_t> below;  // descendant item -> summed support
    std::vector<std::uint32_t> stack;
    for (const auto& [item, c] : tree.node(it->second).children) stack.push_back(c);
    while (!stack.empty()) {
      auto n = stack.back();
      stack.pop_back();
      below[tree.node(n).item] += tree.node(n).support;
      for (const auto& [item, c] : tree.node(n).children) stack.push_back(c);
    }
    // report descendants in header order
    std::vector<std::pair<ItemId, std::uint32_t>> rows(below.begin(), below.end());
    std::vector<std::uint32_t> rank(stats.size(), 0);
    for (std::uint32_t p = 0; p < tree.header().size(); ++p) rank[tree.header()[p].item] = p;
    std::sort(rows.begin(), rows.end(),
              [&](const auto& a, const auto& b) { return rank[a.first] < rank[b.first]; });
    for (const auto& [b, sup] : rows) {
      Utility value = (stats[h.item].miu + stats[b].miu) * static_cast<Utility>(sup);
      out.push_back({h.item, b, sup, value});
    }
  }
  return out;
}

std::vector<Utility> md_pair_values(const UPTree& tree, const ItemStats& stats) {
  std::vector<Utility> out;
  for (const auto& p : md_pairs(tree, stats)) out.push_back(p.value);
  return out;
}

}  // namespace tkhui
