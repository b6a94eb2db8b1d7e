#include "oracle.hpp"

#include <algorithm>
#include <set>

#include "tkhui/ingest.hpp"

namespace oracle {

std::string data_path(const std::string& name) { return std::string(TKHUI_TEST_DATA) + "/" + name; }

const Database& sample_db() {
  static const Database db = tkhui::load_dataset(data_path("sample.txt"));
  return db;
}

std::vector<ItemId> ids(const Database& db, const std::string& letters) {
  std::vector<ItemId> out;
  for (char c : letters) out.push_back(db.items.id(static_cast<Label>(c - 'a' + 1)));
  return out;
}

std::vector<Label> labels(const std::string& letters) {
  std::vector<Label> out;
  for (char c : letters) out.push_back(static_cast<Label>(c - 'a' + 1));
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

/// Label -> utility for each transaction.
std::vector<std::map<Label, Utility>> rows(const Database& db) {
  std::vector<std::map<Label, Utility>> out;
  for (const auto& t : db.transactions) {
    std::map<Label, Utility> row;
    for (std::size_t i = 0; i < t.items.size(); ++i) row[db.items.label(t.items[i])] = t.utils[i];
    out.push_back(std::move(row));
  }
  return out;
}

Utility utility_in_rows(const std::vector<std::map<Label, Utility>>& rs, const std::vector<Label>& x) {
  Utility total = 0;
  for (const auto& row : rs) {
    Utility u = 0;
    bool all = true;
    for (Label l : x) {
      auto it = row.find(l);
      if (it == row.end()) {
        all = false;
        break;
      }
      u += it->second;
    }
    if (all) total += u;
  }
  return total;
}

bool better(const ResultItemset& a, const ResultItemset& b) {
  if (a.utility != b.utility) return a.utility > b.utility;
  return a.itemset < b.itemset;
}

}  // namespace

Utility utility(const Database& db, const std::vector<Label>& itemset) {
  return utility_in_rows(rows(db), itemset);
}

std::vector<ResultItemset> all_itemsets(const Database& db) {
  auto rs = rows(db);
  std::set<Label> present;
  for (const auto& row : rs) {
    for (const auto& [l, u] : row) present.insert(l);
  }
  std::vector<Label> items(present.begin(), present.end());
  if (items.size() > 20) throw std::runtime_error("too many items for subset enumeration");
  std::vector<ResultItemset> out;
  for (std::uint32_t mask = 1; mask < (1u << items.size()); ++mask) {
    std::vector<Label> x;
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (mask & (1u << i)) x.push_back(items[i]);
    }
    Utility u = utility_in_rows(rs, x);
    if (u > 0) out.push_back({x, u});
  }
  std::sort(out.begin(), out.end(), better);
  return out;
}

std::vector<ResultItemset> topk(const Database& db, std::size_t k) {
  auto all = all_itemsets(db);
  if (all.size() > k) all.resize(k);
  return all;
}

Utility delta_f(const Database& db, std::size_t k) {
  auto all = all_itemsets(db);
  return all.size() >= k ? all[k - 1].utility : 0;
}

std::vector<ResultItemset> huis(const Database& db, Utility delta) {
  auto all = all_itemsets(db);
  std::vector<ResultItemset> out;
  for (auto& r : all) {
    if (r.utility >= delta) out.push_back(r);
  }
  return out;
}

std::map<std::pair<Label, Label>, Utility> pair_utilities(const Database& db) {
  std::map<std::pair<Label, Label>, Utility> out;
  for (const auto& row : rows(db)) {
    for (auto a = row.begin(); a != row.end(); ++a) {
      for (auto b = std::next(a); b != row.end(); ++b) out[{a->first, b->first}] += a->second + b->second;
    }
  }
  return out;
}

Database random_db(std::uint64_t seed) {
  tkhui::RandomDbSpec spec;
  spec.seed = seed;
  spec.max_items = 12;
  spec.max_trans = 20;
  spec.max_len = 6;
  spec.util_range = {1, 10};
  return tkhui::gen_random_db(spec);
}

}  // namespace oracle
