#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tkhui/core.hpp"
#include "tkhui/strategies.hpp"

namespace tkhui {

struct ULElement {
  Tid tid;
  Utility iutil;
  Utility rutil;
};

/// Vertical view of one itemset: a (tid, U(X,T), RU(X,T)) triple for every
/// covering transaction, ascending by tid.
struct UtilityList {
  Itemset itemset;
  Utility sum_iutil = 0;
  Utility sum_rutil = 0;
  std::vector<ULElement> elements;

  ItemId last_item() const { return itemset.back(); }
  bool empty() const { return elements.empty(); }
  std::size_t bytes() const { return elements.size() * sizeof(ULElement) + itemset.size() * sizeof(ItemId); }
};

/// One list per occurring item, in `order`. `db` must already be reordered
/// under `order` (throws Error otherwise).
std::vector<UtilityList> build_1item_ulists(const Database& db, const ItemOrder& order);

std::vector<Tid> tidset(const UtilityList& ul);

struct EarlyAbandon {
  bool enabled = false;
  Utility delta = 0;
};

/// Builds UL(R + x + y) from UL(R + x) and UL(R + y); `prefix` is UL(R) or
/// null for the empty prefix. With early abandonment enabled, returns nullopt
/// as soon as the utility mass of x still able to join drops below delta.
/// Throws Error unless x's last item precedes y's under `order`.
std::optional<UtilityList> join_ulists(const UtilityList* prefix, const UtilityList& x,
                                       const UtilityList& y, const ItemOrder& order,
                                       const EarlyAbandon& ea = {});

/// Sum of iutil over elements with non-zero rutil.
Utility nzeu(const UtilityList& ul);

/// Pair -> summed TU of transactions containing both.
SparsePairMatrix build_eucst(const Database& db);

/// Pair -> exact pair utility.
SparsePairMatrix build_cudm(const Database& db);

/// `labels: U=.. RU=..` followed by one `<tid, iutil, rutil>` line per element.
std::string dump(const UtilityList& ul, const ItemTable& items);

}  // namespace tkhui
