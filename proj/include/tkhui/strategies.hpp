#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tkhui/core.hpp"

namespace tkhui {

enum class PairKind { PeLowerBound, PmudLowerBound, RsdExact, EucstTwu, CudmExact };

std::string_view to_string(PairKind kind);

struct PairEntry {
  ItemId first;
  ItemId second;
  Utility value;
};

/// Associative map from an unordered item pair to an accumulated utility.
/// Keys are stored with the smaller id first; lookups accept either order.
class SparsePairMatrix {
 public:
  explicit SparsePairMatrix(PairKind kind) : kind_(kind) {}

  PairKind kind() const { return kind_; }
  void add(ItemId a, ItemId b, Utility value) { cells_[key(a, b)] += value; }
  /// Creates a zero cell if the pair is absent.
  void touch(ItemId a, ItemId b) { cells_.try_emplace(key(a, b), 0); }
  /// Absent pairs read as 0.
  Utility at(ItemId a, ItemId b) const;
  bool contains(ItemId a, ItemId b) const { return cells_.count(key(a, b)) != 0; }
  std::size_t size() const { return cells_.size(); }
  std::vector<Utility> values() const;
  /// Entries sorted by (first, second).
  std::vector<PairEntry> entries() const;

 private:
  static std::uint64_t key(ItemId a, ItemId b) {
    if (b < a) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
  }

  PairKind kind_;
  std::unordered_map<std::uint64_t, Utility> cells_;
};

struct AuditEntry {
  std::string strategy;
  Utility old_delta;
  Utility new_delta;
};

/// Current minimum utility threshold with the log of every attempt to raise it.
class ThresholdState {
 public:
  explicit ThresholdState(Utility initial = 0) : delta_(initial) {}

  Utility delta() const { return delta_; }
  const std::vector<AuditEntry>& audit() const { return audit_; }
  /// Appends an audit row; delta becomes max(delta, candidate).
  void propose(std::string_view strategy, Utility candidate);
  /// Records only actual increases (used for the many RUC updates).
  void raise_if_higher(std::string_view strategy, Utility candidate);

 private:
  Utility delta_;
  std::vector<AuditEntry> audit_;
};

/// Kth highest value with multiset semantics; nullopt when fewer than k values.
std::optional<Utility> kth_highest(std::span<const Utility> values, std::size_t k);

/// Shared kernel of the NU/MD/MC/SE/SEP/RIU/PE/CUD/COV raises: when at least k
/// values exist and the kth highest exceeds delta, delta takes that value.
/// An audit row is written either way. Returns the resulting delta.
Utility raise_to_kth(std::span<const Utility> values, std::size_t k, ThresholdState& state,
                     std::string_view tag);

/// Pairs formed by the first listed item of each transaction and each of the
/// others, accumulating U(first, T) + U(other, T). Reads items in input order,
/// so call it before reorder_database.
SparsePairMatrix build_pe_matrix(const Database& db);

/// Same as PE but anchored on the item with the largest external utility
/// (ties to the smallest id). Throws Error when an item has no profit.
SparsePairMatrix build_pmud_matrix(const Database& db,
                                   const std::unordered_map<Label, Utility>& profits);

Utility riu_raise(const ItemStats& stats, std::size_t k, ThresholdState& state);

/// The ceil(n/2) most supported and floor(n/2) least supported items, most
/// supported first (support ties rank the smaller id higher).
std::vector<ItemId> rsd_selection(const ItemStats& stats, std::size_t n);

/// Exact pair utilities over every pair of the RSD selection; pairs that never
/// co-occur are present with value 0. Only items that occur are ranked.
/// Throws Error unless 2 <= n <= number of occurring items.
SparsePairMatrix build_rsd_matrix(const Database& db, const ItemStats& stats, std::size_t n);

Utility rsd_raise(const SparsePairMatrix& rsd, std::size_t k, ThresholdState& state);

/// Throws Error unless `cudm` is CUDM-exact.
Utility cud_raise(const SparsePairMatrix& cudm, std::size_t k, ThresholdState& state);

/// Items y != x with g(x) a subset of g(y), ascending by id. Throws QueryError
/// when x does not occur.
std::vector<ItemId> coverage(const Database& db, ItemId x);

/// Lower bounds riu(x) + sum(miu(y) for y in S) * Sup(x) for every non-empty
/// S of C(x), at most `cap` subsets per item, smallest subsets first. Keyed by
/// the sorted itemset {x} + S; the larger bound wins on collisions.
std::map<Itemset, Utility> cov_lower_bounds(const Database& db, const ItemStats& stats,
                                            std::size_t cap);

Utility cov_raise(const Database& db, const ItemStats& stats, std::size_t k, std::size_t cap,
                  ThresholdState& state);

/// Bounded candidate list holding the K best (itemset, utility) pairs seen so
/// far. Better means higher utility, then lexicographically smaller itemset.
/// Itemsets must be sorted ascending by id.
class TopKHeap {
 public:
  struct Entry {
    Itemset itemset;
    Utility utility;
  };

  TopKHeap(std::size_t capacity, Utility floor);

  std::size_t capacity() const { return capacity_; }
  std::size_t size() const { return entries_.size(); }
  bool full() const { return entries_.size() == capacity_; }
  Utility floor() const { return floor_; }
  /// max(floor, kth utility) once full, floor before that.
  Utility current_delta() const;

  /// Inserts when u >= current_delta, the itemset is new and it beats the
  /// current worst entry of a full heap. Returns the updated current_delta.
  Utility offer(const Itemset& itemset, Utility u);
  Utility offer(Itemset&& itemset, Utility u);

  /// Best first.
  std::vector<Entry> sorted() const;

  static bool better(const Entry& a, const Entry& b) {
    if (a.utility != b.utility) return a.utility > b.utility;
    return a.itemset < b.itemset;
  }

 private:
  struct Better {
    bool operator()(const Entry& a, const Entry& b) const { return better(a, b); }
  };

  std::size_t capacity_;
  Utility floor_;
  std::set<Entry, Better> entries_;
};

}  // namespace tkhui
