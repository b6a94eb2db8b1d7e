#include "tkhui/ulist.hpp"

#include <sstream>

namespace tkhui {

std::vector<UtilityList> build_1item_ulists(const Database& db, const ItemOrder& order) {
  std::vector<UtilityList> by_item(db.item_count());
  for (const auto& t : db.transactions) {
    for (std::size_t i = 1; i < t.items.size(); ++i) {
      if (!order.precedes(t.items[i - 1], t.items[i])) {
        throw Error("transaction " + std::to_string(t.tid) + " is not sorted under the item order");
      }
    }
    Utility remaining = t.tu;
    for (std::size_t i = 0; i < t.items.size(); ++i) {
      remaining -= t.utils[i];
      auto& ul = by_item[t.items[i]];
      ul.elements.push_back({t.tid, t.utils[i], remaining});
      ul.sum_iutil += t.utils[i];
      ul.sum_rutil += remaining;
    }
  }
  std::vector<UtilityList> out;
  for (ItemId id : order.sequence()) {
    auto& ul = by_item[id];
    if (ul.elements.empty()) continue;
    ul.itemset = {id};
    out.push_back(std::move(ul));
  }
  return out;
}

std::vector<Tid> tidset(const UtilityList& ul) {
  std::vector<Tid> out;
  out.reserve(ul.elements.size());
  for (const auto& e : ul.elements) out.push_back(e.tid);
  return out;
}

std::optional<UtilityList> join_ulists(const UtilityList* prefix, const UtilityList& x,
                                       const UtilityList& y, const ItemOrder& order,
                                       const EarlyAbandon& ea) {
  if (x.itemset.empty() || y.itemset.empty() || !order.precedes(x.last_item(), y.last_item())) {
    throw Error("join requires x's last item to precede y's");
  }
  UtilityList xy;
  xy.itemset = x.itemset;
  xy.itemset.push_back(y.last_item());
  xy.elements.reserve(std::min(x.elements.size(), y.elements.size()));

  Utility mass = x.sum_iutil + x.sum_rutil;
  std::size_t j = 0, p = 0;
  const auto& ye = y.elements;
  for (const auto& ex : x.elements) {
    while (j < ye.size() && ye[j].tid < ex.tid) ++j;
    if (j == ye.size() || ye[j].tid != ex.tid) {
      if (ea.enabled) {
        mass -= ex.iutil + ex.rutil;
        if (mass < ea.delta) return std::nullopt;
      }
      continue;
    }
    Utility iutil = ex.iutil + ye[j].iutil;
    if (prefix != nullptr) {
      const auto& pe = prefix->elements;
      while (p < pe.size() && pe[p].tid < ex.tid) ++p;
      iutil -= pe[p].iutil;
    }
    xy.elements.push_back({ex.tid, iutil, ye[j].rutil});
    xy.sum_iutil += iutil;
    xy.sum_rutil += ye[j].rutil;
  }
  return xy;
}

Utility nzeu(const UtilityList& ul) {
  Utility sum = 0;
  for (const auto& e : ul.elements) {
    if (e.rutil > 0) sum += e.iutil;
  }
  return sum;
}

SparsePairMatrix build_eucst(const Database& db) {
  SparsePairMatrix m(PairKind::EucstTwu);
  for (const auto& t : db.transactions) {
    for (std::size_t i = 0; i < t.items.size(); ++i) {
      for (std::size_t j = i + 1; j < t.items.size(); ++j) m.add(t.items[i], t.items[j], t.tu);
    }
  }
  return m;
}

SparsePairMatrix build_cudm(const Database& db) {
  SparsePairMatrix m(PairKind::CudmExact);
  for (const auto& t : db.transactions) {
    for (std::size_t i = 0; i < t.items.size(); ++i) {
      for (std::size_t j = i + 1; j < t.items.size(); ++j) {
        m.add(t.items[i], t.items[j], t.utils[i] + t.utils[j]);
      }
    }
  }
  return m;
}

std::string dump(const UtilityList& ul, const ItemTable& items) {
  std::ostringstream out;
  for (std::size_t i = 0; i < ul.itemset.size(); ++i) {
    if (i) out << ' ';
    out << items.label(ul.itemset[i]);
  }
  out << ": U=" << ul.sum_iutil << " RU=" << ul.sum_rutil << '\n';
  for (const auto& e : ul.elements) {
    out << "  <" << e.tid << ", " << e.iutil << ", " << e.rutil << ">\n";
  }
  return out.str();
}

}  // namespace tkhui
