#include "tkhui/core.hpp"

#include <algorithm>
#include <numeric>

namespace tkhui {

Utility Transaction::utility_of(ItemId item) const {
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i] == item) return utils[i];
  }
  return 0;
}

bool Transaction::contains(ItemId item) const {
  return std::find(items.begin(), items.end(), item) != items.end();
}

ItemTable::ItemTable(std::vector<Label> sorted_labels) : labels_(std::move(sorted_labels)) {
  if (!std::is_sorted(labels_.begin(), labels_.end()) ||
      std::adjacent_find(labels_.begin(), labels_.end()) != labels_.end()) {
    throw Error("item table labels must be strictly ascending");
  }
  index_.reserve(labels_.size());
  for (ItemId i = 0; i < labels_.size(); ++i) index_.emplace(labels_[i], i);
}

ItemId ItemTable::id(Label label) const {
  auto it = index_.find(label);
  if (it == index_.end()) throw QueryError("unknown item label " + std::to_string(label));
  return it->second;
}

Itemset Database::ids_of(std::span<const Label> labels) const {
  Itemset out;
  out.reserve(labels.size());
  for (Label l : labels) out.push_back(items.id(l));
  return out;
}

std::vector<Label> Database::labels_of(std::span<const ItemId> ids) const {
  std::vector<Label> out;
  out.reserve(ids.size());
  for (ItemId id : ids) out.push_back(items.label(id));
  return out;
}

const ItemStat& ItemStats::present(ItemId id) const {
  if (id >= stats_.size()) throw QueryError("unknown item id " + std::to_string(id));
  if (stats_[id].support == 0) {
    throw QueryError("item id " + std::to_string(id) + " does not occur in the database");
  }
  return stats_[id];
}

ItemOrder::ItemOrder(std::vector<ItemId> sequence) : sequence_(std::move(sequence)) {
  rank_.assign(sequence_.size(), static_cast<std::uint32_t>(sequence_.size()));
  for (std::uint32_t r = 0; r < sequence_.size(); ++r) {
    ItemId id = sequence_[r];
    if (id >= sequence_.size() || rank_[id] != sequence_.size()) {
      throw Error("item order is not a permutation");
    }
    rank_[id] = r;
  }
}

ItemOrder ItemOrder::identity(std::size_t n) {
  std::vector<ItemId> seq(n);
  std::iota(seq.begin(), seq.end(), ItemId{0});
  return ItemOrder(std::move(seq));
}

namespace {

void check_known(const Database& db, std::span<const ItemId> itemset) {
  for (ItemId id : itemset) {
    if (id >= db.item_count()) throw QueryError("unknown item id " + std::to_string(id));
  }
}

bool contains_all(const Transaction& t, std::span<const ItemId> itemset) {
  return std::all_of(itemset.begin(), itemset.end(), [&](ItemId id) { return t.contains(id); });
}

}  // namespace

Utility transaction_utility(const Transaction& t) {
  return std::accumulate(t.utils.begin(), t.utils.end(), Utility{0});
}

Utility itemset_utility_in(const Transaction& t, std::span<const ItemId> itemset) {
  Utility sum = 0;
  for (ItemId id : itemset) {
    auto it = std::find(t.items.begin(), t.items.end(), id);
    if (it == t.items.end()) return 0;
    sum += t.utils[static_cast<std::size_t>(it - t.items.begin())];
  }
  return sum;
}

Utility itemset_utility(const Database& db, std::span<const ItemId> itemset) {
  check_known(db, itemset);
  if (itemset.empty()) return 0;
  Utility total = 0;
  for (const auto& t : db.transactions) total += itemset_utility_in(t, itemset);
  return total;
}

Utility remaining_utility_in(const Transaction& t, std::span<const ItemId> itemset,
                             const ItemOrder& order) {
  if (itemset.empty() || !contains_all(t, itemset)) return 0;
  std::uint32_t last = 0;
  for (ItemId id : itemset) last = std::max(last, order.rank(id));
  Utility sum = 0;
  for (std::size_t i = 0; i < t.items.size(); ++i) {
    if (order.rank(t.items[i]) > last) sum += t.utils[i];
  }
  return sum;
}

Utility remaining_utility(const Database& db, std::span<const ItemId> itemset,
                          const ItemOrder& order) {
  check_known(db, itemset);
  Utility total = 0;
  for (const auto& t : db.transactions) total += remaining_utility_in(t, itemset, order);
  return total;
}

Utility itemset_twu(const Database& db, std::span<const ItemId> itemset) {
  check_known(db, itemset);
  Utility total = 0;
  for (const auto& t : db.transactions) {
    if (contains_all(t, itemset)) total += t.tu;
  }
  return total;
}

std::uint32_t itemset_support(const Database& db, std::span<const ItemId> itemset) {
  check_known(db, itemset);
  std::uint32_t n = 0;
  for (const auto& t : db.transactions) n += contains_all(t, itemset) ? 1 : 0;
  return n;
}

ItemStats compute_item_stats(const Database& db) {
  std::vector<ItemStat> stats(db.item_count());
  for (const auto& t : db.transactions) {
    for (std::size_t i = 0; i < t.items.size(); ++i) {
      ItemStat& s = stats[t.items[i]];
      Utility u = t.utils[i];
      s.twu += t.tu;
      s.riu += u;
      if (s.support == 0) {
        s.miu = u;
        s.mau = u;
      } else {
        s.miu = std::min(s.miu, u);
        s.mau = std::max(s.mau, u);
      }
      ++s.support;
    }
  }
  return ItemStats(std::move(stats));
}

Utility itemset_miu(const ItemStats& stats, std::span<const ItemId> itemset, std::uint32_t sup) {
  Utility sum = 0;
  for (ItemId id : itemset) sum += stats.present(id).miu;
  return sum * static_cast<Utility>(sup);
}

Utility itemset_mau(const ItemStats& stats, std::span<const ItemId> itemset, std::uint32_t sup) {
  Utility sum = 0;
  for (ItemId id : itemset) sum += stats.present(id).mau;
  return sum * static_cast<Utility>(sup);
}

ItemOrder twu_order(const ItemStats& stats) {
  std::vector<ItemId> seq(stats.size());
  std::iota(seq.begin(), seq.end(), ItemId{0});
  std::stable_sort(seq.begin(), seq.end(),
                   [&](ItemId a, ItemId b) { return stats[a].twu < stats[b].twu; });
  return ItemOrder(std::move(seq));
}

Database apply_dgu(const Database& db, const ItemStats& stats, Utility delta) {
  Database out;
  out.items = db.items;
  out.transactions.reserve(db.size());
  for (const auto& t : db.transactions) {
    Transaction kept;
    for (std::size_t i = 0; i < t.items.size(); ++i) {
      if (stats[t.items[i]].twu >= delta) {
        kept.items.push_back(t.items[i]);
        kept.utils.push_back(t.utils[i]);
      }
    }
    if (kept.items.empty()) continue;
    kept.tu = transaction_utility(kept);
    kept.tid = static_cast<Tid>(out.transactions.size() + 1);
    out.transactions.push_back(std::move(kept));
  }
  return out;
}

Database reorder_database(const Database& db, const ItemOrder& order) {
  Database out;
  out.items = db.items;
  out.transactions.reserve(db.size());
  std::vector<std::size_t> perm;
  for (const auto& t : db.transactions) {
    perm.resize(t.items.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
      return order.rank(t.items[a]) < order.rank(t.items[b]);
    });
    Transaction r;
    r.tid = t.tid;
    r.tu = t.tu;
    r.items.reserve(perm.size());
    r.utils.reserve(perm.size());
    for (std::size_t p : perm) {
      r.items.push_back(t.items[p]);
      r.utils.push_back(t.utils[p]);
    }
    out.transactions.push_back(std::move(r));
  }
  return out;
}

void validate(const Database& db) {
  for (std::size_t j = 0; j < db.transactions.size(); ++j) {
    const auto& t = db.transactions[j];
    if (t.tid != j + 1) throw Error("transaction tids must be 1..n in order");
    if (t.items.size() != t.utils.size()) throw Error("items/utils length mismatch");
    std::vector<ItemId> sorted = t.items;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw Error("duplicate item in transaction " + std::to_string(t.tid));
    }
    for (std::size_t i = 0; i < t.items.size(); ++i) {
      if (t.items[i] >= db.item_count()) throw Error("transaction references unknown item");
      if (t.utils[i] < 1) throw Error("item utilities must be positive");
    }
    if (t.tu != transaction_utility(t)) throw Error("cached transaction utility is stale");
  }
}

}  // namespace tkhui
