#include "tkhui/strategies.hpp"

#include <algorithm>
#include <numeric>

namespace tkhui {

std::string_view to_string(PairKind kind) {
  switch (kind) {
    case PairKind::PeLowerBound: return "pe-lower-bound";
    case PairKind::PmudLowerBound: return "pmud-lower-bound";
    case PairKind::RsdExact: return "rsd-exact";
    case PairKind::EucstTwu: return "eucst-twu";
    case PairKind::CudmExact: return "cudm-exact";
  }
  return "unknown";
}

Utility SparsePairMatrix::at(ItemId a, ItemId b) const {
  auto it = cells_.find(key(a, b));
  return it == cells_.end() ? 0 : it->second;
}

std::vector<Utility> SparsePairMatrix::values() const {
  std::vector<Utility> out;
  out.reserve(cells_.size());
  for (const auto& [k, v] : cells_) out.push_back(v);
  return out;
}

std::vector<PairEntry> SparsePairMatrix::entries() const {
  std::vector<PairEntry> out;
  out.reserve(cells_.size());
  for (const auto& [k, v] : cells_) {
    out.push_back({static_cast<ItemId>(k >> 32), static_cast<ItemId>(k & 0xffffffffu), v});
  }
  std::sort(out.begin(), out.end(), [](const PairEntry& x, const PairEntry& y) {
    return std::tie(x.first, x.second) < std::tie(y.first, y.second);
  });
  return out;
}

void ThresholdState::propose(std::string_view strategy, Utility candidate) {
  Utility old = delta_;
  delta_ = std::max(delta_, candidate);
  audit_.push_back({std::string(strategy), old, delta_});
}

void ThresholdState::raise_if_higher(std::string_view strategy, Utility candidate) {
  if (candidate > delta_) propose(strategy, candidate);
}

std::optional<Utility> kth_highest(std::span<const Utility> values, std::size_t k) {
  if (k == 0 || values.size() < k) return std::nullopt;
  std::vector<Utility> copy(values.begin(), values.end());
  auto nth = copy.begin() + static_cast<std::ptrdiff_t>(k - 1);
  std::nth_element(copy.begin(), nth, copy.end(), std::greater<>{});
  return *nth;
}

Utility raise_to_kth(std::span<const Utility> values, std::size_t k, ThresholdState& state,
                     std::string_view tag) {
  if (k == 0) throw Error("k must be at least 1");
  auto kth = kth_highest(values, k);
  state.propose(tag, kth.value_or(state.delta()));
  return state.delta();
}

namespace {

SparsePairMatrix anchored_pairs(const Database& db, PairKind kind,
                                const auto& anchor_index) {
  SparsePairMatrix m(kind);
  for (const auto& t : db.transactions) {
    if (t.items.size() < 2) continue;
    std::size_t a = anchor_index(t);
    for (std::size_t i = 0; i < t.items.size(); ++i) {
      if (i == a) continue;
      m.add(t.items[a], t.items[i], t.utils[a] + t.utils[i]);
    }
  }
  return m;
}

}  // namespace

SparsePairMatrix build_pe_matrix(const Database& db) {
  return anchored_pairs(db, PairKind::PeLowerBound, [](const Transaction&) { return std::size_t{0}; });
}

SparsePairMatrix build_pmud_matrix(const Database& db,
                                   const std::unordered_map<Label, Utility>& profits) {
  std::vector<Utility> eu(db.item_count(), 0);
  for (ItemId id = 0; id < db.item_count(); ++id) {
    auto it = profits.find(db.items.label(id));
    if (it != profits.end()) eu[id] = it->second;
  }
  for (const auto& t : db.transactions) {
    for (ItemId id : t.items) {
      if (eu[id] <= 0) {
        throw Error("no external utility for item " + std::to_string(db.items.label(id)));
      }
    }
  }
  return anchored_pairs(db, PairKind::PmudLowerBound, [&](const Transaction& t) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < t.items.size(); ++i) {
      ItemId cur = t.items[i], top = t.items[best];
      if (eu[cur] > eu[top] || (eu[cur] == eu[top] && cur < top)) best = i;
    }
    return best;
  });
}

Utility riu_raise(const ItemStats& stats, std::size_t k, ThresholdState& state) {
  std::vector<Utility> values;
  for (const auto& s : stats.all()) {
    if (s.support > 0) values.push_back(s.riu);
  }
  return raise_to_kth(values, k, state, "riu");
}

std::vector<ItemId> rsd_selection(const ItemStats& stats, std::size_t n) {
  std::vector<ItemId> ranked;
  for (ItemId id = 0; id < stats.size(); ++id) {
    if (stats[id].support > 0) ranked.push_back(id);
  }
  if (n < 2 || n > ranked.size()) {
    throw Error("RSD item count must lie in [2, " + std::to_string(ranked.size()) + "]");
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [&](ItemId a, ItemId b) { return stats[a].support > stats[b].support; });
  std::size_t high = (n + 1) / 2, low = n / 2;
  std::vector<ItemId> out(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(high));
  out.insert(out.end(), ranked.end() - static_cast<std::ptrdiff_t>(low), ranked.end());
  return out;
}

SparsePairMatrix build_rsd_matrix(const Database& db, const ItemStats& stats, std::size_t n) {
  auto selected = rsd_selection(stats, n);
  std::vector<bool> chosen(db.item_count(), false);
  for (ItemId id : selected) chosen[id] = true;
  SparsePairMatrix m(PairKind::RsdExact);
  for (std::size_t i = 0; i < selected.size(); ++i) {
    for (std::size_t j = i + 1; j < selected.size(); ++j) m.touch(selected[i], selected[j]);
  }
  std::vector<std::size_t> pos;
  for (const auto& t : db.transactions) {
    pos.clear();
    for (std::size_t i = 0; i < t.items.size(); ++i) {
      if (chosen[t.items[i]]) pos.push_back(i);
    }
    for (std::size_t i = 0; i < pos.size(); ++i) {
      for (std::size_t j = i + 1; j < pos.size(); ++j) {
        m.add(t.items[pos[i]], t.items[pos[j]], t.utils[pos[i]] + t.utils[pos[j]]);
      }
    }
  }
  return m;
}

Utility rsd_raise(const SparsePairMatrix& rsd, std::size_t k, ThresholdState& state) {
  if (rsd.kind() != PairKind::RsdExact) throw Error("rsd_raise needs an RSD matrix");
  return raise_to_kth(rsd.values(), k, state, "rsd");
}

Utility cud_raise(const SparsePairMatrix& cudm, std::size_t k, ThresholdState& state) {
  if (cudm.kind() != PairKind::CudmExact) throw Error("cud_raise needs a CUDM matrix");
  return raise_to_kth(cudm.values(), k, state, "cud");
}

namespace {

/// For every occurring item, the ids covering it (ascending).
std::vector<std::vector<ItemId>> all_coverages(const Database& db) {
  std::vector<std::vector<ItemId>> cover(db.item_count());
  std::vector<bool> started(db.item_count(), false);
  std::vector<ItemId> scratch;
  std::vector<std::uint32_t> mark(db.item_count(), 0);
  std::uint32_t stamp = 0;
  for (const auto& t : db.transactions) {
    ++stamp;
    for (ItemId id : t.items) mark[id] = stamp;
    for (ItemId x : t.items) {
      auto& c = cover[x];
      if (!started[x]) {
        started[x] = true;
        for (ItemId y : t.items) {
          if (y != x) c.push_back(y);
        }
        std::sort(c.begin(), c.end());
      } else if (!c.empty()) {
        scratch.clear();
        for (ItemId y : c) {
          if (mark[y] == stamp) scratch.push_back(y);
        }
        c.swap(scratch);
      }
    }
  }
  return cover;
}

}  // namespace

std::vector<ItemId> coverage(const Database& db, ItemId x) {
  if (x >= db.item_count()) throw QueryError("unknown item id " + std::to_string(x));
  std::vector<ItemId> cover;
  bool started = false;
  for (const auto& t : db.transactions) {
    if (!t.contains(x)) continue;
    if (!started) {
      started = true;
      for (ItemId y : t.items) {
        if (y != x) cover.push_back(y);
      }
      std::sort(cover.begin(), cover.end());
    } else {
      std::erase_if(cover, [&](ItemId y) { return !t.contains(y); });
    }
  }
  if (!started) throw QueryError("item id " + std::to_string(x) + " does not occur");
  return cover;
}

std::map<Itemset, Utility> cov_lower_bounds(const Database& db, const ItemStats& stats,
                                            std::size_t cap) {
  if (cap < 1) throw Error("COV subset cap must be at least 1");
  std::map<Itemset, Utility> bounds;
  auto cover = all_coverages(db);
  std::vector<std::size_t> idx;
  for (ItemId x = 0; x < db.item_count(); ++x) {
    const auto& c = cover[x];
    if (stats[x].support == 0 || c.empty()) continue;
    const auto sup = static_cast<Utility>(stats[x].support);
    std::size_t emitted = 0;
    for (std::size_t r = 1; r <= c.size() && emitted < cap; ++r) {
      // lexicographic r-combinations of c
      idx.resize(r);
      std::iota(idx.begin(), idx.end(), std::size_t{0});
      while (emitted < cap) {
        Itemset key{x};
        Utility lb = stats[x].riu;
        for (std::size_t i : idx) {
          key.push_back(c[i]);
          lb += stats[c[i]].miu * sup;
        }
        std::sort(key.begin(), key.end());
        auto [it, inserted] = bounds.try_emplace(std::move(key), lb);
        if (!inserted) it->second = std::max(it->second, lb);
        ++emitted;
        std::size_t i = r;
        while (i > 0 && idx[i - 1] == c.size() - r + i - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < r; ++j) idx[j] = idx[j - 1] + 1;
      }
    }
  }
  return bounds;
}

Utility cov_raise(const Database& db, const ItemStats& stats, std::size_t k, std::size_t cap,
                  ThresholdState& state) {
  auto bounds = cov_lower_bounds(db, stats, cap);
  std::vector<Utility> values;
  values.reserve(bounds.size());
  for (const auto& [set, lb] : bounds) values.push_back(lb);
  return raise_to_kth(values, k, state, "cov");
}

TopKHeap::TopKHeap(std::size_t capacity, Utility floor) : capacity_(capacity), floor_(floor) {
  if (capacity < 1) throw Error("top-k capacity must be at least 1");
}

Utility TopKHeap::current_delta() const {
  if (!full()) return floor_;
  return std::max(floor_, std::prev(entries_.end())->utility);
}

Utility TopKHeap::offer(const Itemset& itemset, Utility u) { return offer(Itemset(itemset), u); }

Utility TopKHeap::offer(Itemset&& itemset, Utility u) {
  if (u < current_delta()) return current_delta();
  Entry e{std::move(itemset), u};
  if (full() && !better(e, *std::prev(entries_.end()))) return current_delta();
  for (const auto& existing : entries_) {
    if (existing.itemset == e.itemset) return current_delta();
  }
  entries_.insert(std::move(e));
  if (entries_.size() > capacity_) entries_.erase(std::prev(entries_.end()));
  return current_delta();
}

std::vector<TopKHeap::Entry> TopKHeap::sorted() const {
  return {entries_.begin(), entries_.end()};
}

}  // namespace tkhui
