#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace tkhui {

/// Money units: external profit times internal quantity, pre-scaled to integers.
using Utility = std::int64_t;

/// Dense item index assigned at ingest.
using ItemId = std::uint32_t;

/// Original integer token found in the input file.
using Label = std::uint64_t;

/// Transaction sequence number, 1-based.
using Tid = std::uint32_t;

/// Items of an itemset as dense ids. Canonical form is ascending under the
/// active item order.
using Itemset = std::vector<ItemId>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A query named an item that does not occur where it must.
class QueryError : public Error {
 public:
  using Error::Error;
};

struct Transaction {
  Tid tid = 0;
  std::vector<ItemId> items;
  std::vector<Utility> utils;
  Utility tu = 0;

  std::size_t size() const { return items.size(); }
  /// Utility of `item` in this transaction, 0 when absent.
  Utility utility_of(ItemId item) const;
  bool contains(ItemId item) const;
};

/// Bijection between dense ids and external labels. Ids ascend with labels.
class ItemTable {
 public:
  ItemTable() = default;
  explicit ItemTable(std::vector<Label> sorted_labels);

  std::size_t size() const { return labels_.size(); }
  Label label(ItemId id) const { return labels_.at(id); }
  bool has_label(Label label) const { return index_.count(label) != 0; }
  ItemId id(Label label) const;
  const std::vector<Label>& labels() const { return labels_; }

  bool operator==(const ItemTable& other) const { return labels_ == other.labels_; }

 private:
  std::vector<Label> labels_;
  std::unordered_map<Label, ItemId> index_;
};

struct Database {
  std::vector<Transaction> transactions;
  ItemTable items;

  std::size_t size() const { return transactions.size(); }
  bool empty() const { return transactions.empty(); }
  std::size_t item_count() const { return items.size(); }

  /// Translates labels to ids; throws QueryError for labels not in the table.
  Itemset ids_of(std::span<const Label> labels) const;
  std::vector<Label> labels_of(std::span<const ItemId> ids) const;
};

struct ItemStat {
  Utility twu = 0;
  Utility riu = 0;
  std::uint32_t support = 0;
  Utility miu = 0;
  Utility mau = 0;
};

/// Per-item first-scan aggregates, indexed by ItemId.
class ItemStats {
 public:
  ItemStats() = default;
  explicit ItemStats(std::vector<ItemStat> per_item) : stats_(std::move(per_item)) {}

  std::size_t size() const { return stats_.size(); }
  const ItemStat& operator[](ItemId id) const { return stats_[id]; }
  /// Like operator[] but throws QueryError for unknown or unsupported items.
  const ItemStat& present(ItemId id) const;
  const std::vector<ItemStat>& all() const { return stats_; }

 private:
  std::vector<ItemStat> stats_;
};

/// Total order over every item of a table.
class ItemOrder {
 public:
  ItemOrder() = default;
  /// `sequence` must be a permutation of 0..n-1.
  explicit ItemOrder(std::vector<ItemId> sequence);

  std::size_t size() const { return sequence_.size(); }
  std::uint32_t rank(ItemId id) const { return rank_[id]; }
  bool precedes(ItemId a, ItemId b) const { return rank_[a] < rank_[b]; }
  const std::vector<ItemId>& sequence() const { return sequence_; }

  /// Order by ascending id (equivalently ascending label).
  static ItemOrder identity(std::size_t n);

 private:
  std::vector<ItemId> sequence_;
  std::vector<std::uint32_t> rank_;
};

Utility transaction_utility(const Transaction& t);

/// U(X): summed over every transaction containing all of X.
Utility itemset_utility(const Database& db, std::span<const ItemId> itemset);

/// U(X, T); 0 when T does not contain X.
Utility itemset_utility_in(const Transaction& t, std::span<const ItemId> itemset);

/// RU(X): utility of items placed after every item of X under `order`.
Utility remaining_utility(const Database& db, std::span<const ItemId> itemset, const ItemOrder& order);
Utility remaining_utility_in(const Transaction& t, std::span<const ItemId> itemset, const ItemOrder& order);

/// TWU(X).
Utility itemset_twu(const Database& db, std::span<const ItemId> itemset);

/// Number of transactions containing X.
std::uint32_t itemset_support(const Database& db, std::span<const ItemId> itemset);

ItemStats compute_item_stats(const Database& db);

/// (sum of miu over X) * sup.
Utility itemset_miu(const ItemStats& stats, std::span<const ItemId> itemset, std::uint32_t sup);
/// (sum of mau over X) * sup.
Utility itemset_mau(const ItemStats& stats, std::span<const ItemId> itemset, std::uint32_t sup);

/// Ascending TWU, ties by ascending id.
ItemOrder twu_order(const ItemStats& stats);

/// Removes every item with TWU < delta in one pass, recomputes TUs, drops
/// emptied transactions and renumbers tids.
Database apply_dgu(const Database& db, const ItemStats& stats, Utility delta);

/// Sorts each transaction's items (and utilities) ascending under `order`.
Database reorder_database(const Database& db, const ItemOrder& order);

/// Debug check of the structural invariants; throws Error on violation.
void validate(const Database& db);

}  // namespace tkhui
