#include <algorithm>
#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "tkhui/ingest.hpp"
#include "tkhui/strategies.hpp"

using namespace tkhui;
using oracle::ids;
using oracle::sample_db;

namespace {

Label L(char c) { return static_cast<Label>(c - 'a' + 1); }

/// Pair lower bounds anchored on one item per transaction, recomputed from
/// the raw rows. `anchor` picks the index of the anchor within a transaction.
template <class Pick>
std::vector<Utility> anchored_values(const Database& db, Pick anchor) {
  std::map<std::pair<ItemId, ItemId>, Utility> cells;
  for (const auto& t : db.transactions) {
    std::size_t a = anchor(t);
    for (std::size_t i = 0; i < t.items.size(); ++i) {
      if (i == a) continue;
      auto key = std::minmax(t.items[a], t.items[i]);
      cells[{key.first, key.second}] += t.utils[a] + t.utils[i];
    }
  }
  std::vector<Utility> v;
  for (const auto& [k, u] : cells) v.push_back(u);
  std::sort(v.rbegin(), v.rend());
  return v;
}

std::vector<Utility> oracle_pair_values(const Database& db) {
  std::vector<Utility> v;
  for (const auto& [k, u] : oracle::pair_utilities(db)) v.push_back(u);
  std::sort(v.rbegin(), v.rend());
  return v;
}

}  // namespace

TEST_CASE("pair matrix keys are unordered") {
  SparsePairMatrix m(PairKind::CudmExact);
  m.add(3, 1, 5);
  m.add(1, 3, 2);
  m.touch(4, 2);
  CHECK(m.at(1, 3) == 7);
  CHECK(m.at(3, 1) == 7);
  CHECK(m.contains(2, 4));
  CHECK(m.at(2, 4) == 0);
  CHECK(m.at(9, 8) == 0);
  CHECK(m.size() == 2);
  auto e = m.entries();
  REQUIRE(e.size() == 2);
  CHECK(e[0].first == 1);
  CHECK(e[0].second == 3);
  CHECK(to_string(m.kind()) == "cudm-exact");
}

TEST_CASE("threshold state and kth selection") {
  ThresholdState s(10);
  s.propose("x", 5);
  CHECK(s.delta() == 10);
  s.propose("y", 12);
  CHECK(s.delta() == 12);
  s.raise_if_higher("z", 12);
  CHECK(s.audit().size() == 2);
  CHECK(s.audit()[1].old_delta == 10);
  CHECK(s.audit()[1].new_delta == 12);

  std::vector<Utility> v{4, 9, 1, 9, 3};
  CHECK(kth_highest(v, 1) == 9);
  CHECK(kth_highest(v, 2) == 9);
  CHECK(kth_highest(v, 3) == 4);
  CHECK_FALSE(kth_highest(v, 6).has_value());
  ThresholdState t;
  CHECK(raise_to_kth(v, 6, t, "few") == 0);
  CHECK(t.audit().size() == 1);
  CHECK_THROWS_AS(raise_to_kth(v, 0, t, "bad"), Error);
}

TEST_CASE("PE raise") {
  const auto& db = sample_db();
  auto pe = build_pe_matrix(db);
  CHECK(pe.kind() == PairKind::PeLowerBound);
  // T1 is anchored on its first item a
  for (const char* p : {"ac", "ad", "ae", "af"}) {
    auto x = ids(db, p);
    CHECK(pe.contains(x[0], x[1]));
  }
  CHECK_FALSE(pe.contains(ids(db, "c")[0], ids(db, "d")[0]));
  auto expected = anchored_values(db, [](const Transaction&) { return std::size_t{0}; });
  auto got = pe.values();
  std::sort(got.rbegin(), got.rend());
  CHECK(got == expected);
  ThresholdState s;
  CHECK(raise_to_kth(pe.values(), 6, s, "pe") == expected[5]);
  CHECK(s.delta() == 18);
}

TEST_CASE("PMUD raise") {
  const auto& db = sample_db();
  auto profits = load_profits(oracle::data_path("sample_profits.txt"));
  auto m = build_pmud_matrix(db, profits);
  // T4 = b c d e is anchored on e, the item of highest profit
  for (const char* p : {"eb", "ed", "ec"}) {
    auto x = ids(db, p);
    CHECK(m.contains(x[0], x[1]));
  }
  auto expected = anchored_values(db, [&](const Transaction& t) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < t.items.size(); ++i) {
      Utility pi = profits.at(db.items.label(t.items[i])), pb = profits.at(db.items.label(t.items[best]));
      if (pi > pb || (pi == pb && t.items[i] < t.items[best])) best = i;
    }
    return best;
  });
  auto got = m.values();
  std::sort(got.rbegin(), got.rend());
  CHECK(got == expected);
  ThresholdState s;
  CHECK(raise_to_kth(m.values(), 6, s, "pmud") == 18);

  profits.erase(1);
  CHECK_THROWS_AS(build_pmud_matrix(db, profits), Error);
}

TEST_CASE("RIU raise") {
  auto stats = compute_item_stats(sample_db());
  ThresholdState s;
  CHECK(riu_raise(stats, 6, s) == 14);
  CHECK(riu_raise(stats, 1, s) == 45);
  ThresholdState held(18);
  riu_raise(stats, 6, held);
  CHECK(held.delta() == 18);
}

TEST_CASE("RSD raise") {
  const auto& db = sample_db();
  auto stats = compute_item_stats(db);
  auto sel = rsd_selection(stats, 4);
  std::vector<Label> labels = db.labels_of(sel);
  std::sort(labels.begin(), labels.end());
  CHECK(labels == oracle::labels("cefg"));
  CHECK_THROWS_AS(rsd_selection(stats, 1), Error);
  CHECK_THROWS_AS(rsd_selection(stats, 8), Error);

  auto m = build_rsd_matrix(db, stats, 4);
  CHECK(m.size() == 6);
  auto pairs = oracle::pair_utilities(db);
  auto ce = ids(db, "ce");
  CHECK(m.at(ce[0], ce[1]) == pairs.at({L('c'), L('e')}));
  CHECK(m.at(ce[0], ce[1]) == 51);
  auto fg = ids(db, "fg");
  CHECK(m.contains(fg[0], fg[1]));
  CHECK(m.at(fg[0], fg[1]) == 0);

  CHECK(kth_highest(m.values(), 6) == 0);
  ThresholdState s(18);
  CHECK(rsd_raise(m, 6, s) == 18);
  CHECK(s.delta() == 18);
  CHECK_THROWS_AS(rsd_raise(build_pe_matrix(db), 6, s), Error);
}

TEST_CASE("CUD raise") {
  const auto& db = sample_db();
  auto expected = oracle_pair_values(db);
  CHECK(expected[0] == 67);
  ThresholdState s;
  CHECK(expected[5] == 47);
  CHECK(cud_raise(build_cudm(db), 6, s) == 47);
  CHECK(cud_raise(build_cudm(db), 1, s) == 67);
  CHECK(s.delta() == 67);
}

TEST_CASE("coverage") {
  const auto& db = sample_db();
  auto cg = db.labels_of(coverage(db, ids(db, "g")[0]));
  std::sort(cg.begin(), cg.end());
  CHECK(cg == oracle::labels("ce"));
  CHECK(coverage(db, ids(db, "c")[0]).empty());
  auto ca = db.labels_of(coverage(db, ids(db, "a")[0]));
  std::sort(ca.begin(), ca.end());
  CHECK(ca == oracle::labels("c"));
  CHECK_THROWS_AS(coverage(db, static_cast<ItemId>(db.item_count())), QueryError);
}

TEST_CASE("COV lower bounds") {
  const auto& db = sample_db();
  auto stats = compute_item_stats(db);
  auto lbs = cov_lower_bounds(db, stats, 1024);
  auto key = [&](const char* s) {
    auto x = ids(db, s);
    std::sort(x.begin(), x.end());
    return x;
  };
  CHECK(lbs.at(key("ge")) == 13);
  CHECK(lbs.at(key("gc")) == 9);
  CHECK(lbs.at(key("gec")) == 15);
  for (const auto& [x, lb] : lbs) CHECK(lb <= itemset_utility(db, x));
}

TEST_CASE("COV bounds are sound on random databases") {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    auto db = oracle::random_db(seed);
    auto stats = compute_item_stats(db);
    for (const auto& [x, lb] : cov_lower_bounds(db, stats, 64)) {
      REQUIRE(lb <= oracle::utility(db, db.labels_of(x)));
    }
  }
}

TEST_CASE("top-k heap") {
  const auto& db = sample_db();
  auto table = oracle::huis(db, 59);
  REQUIRE(table.size() == 12);
  auto feed = [&](TopKHeap& h) {
    for (auto it = table.rbegin(); it != table.rend(); ++it) h.offer(db.ids_of(it->itemset), it->utility);
  };
  TopKHeap h3(3, 0);
  feed(h3);
  CHECK(h3.current_delta() == 73);
  auto top = h3.sorted();
  REQUIRE(top.size() == 3);
  CHECK(db.labels_of(top[2].itemset) == oracle::labels("fdac"));

  TopKHeap h7(7, 0);
  feed(h7);
  CHECK(h7.current_delta() == 67);

  TopKHeap floor(3, 100);
  CHECK(floor.offer(Itemset{1}, 90) == 100);
  CHECK(floor.size() == 0);

  TopKHeap dup(3, 0);
  dup.offer(Itemset{1, 2}, 5);
  dup.offer(Itemset{1, 2}, 5);
  CHECK(dup.size() == 1);
}

TEST_CASE("heap agrees with a full sort") {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 100; ++round) {
    std::size_t k = 1 + rng() % 10;
    std::vector<TopKHeap::Entry> all;
    for (ItemId i = 0; i < 40; ++i) all.push_back({Itemset{i}, static_cast<Utility>(rng() % 15)});
    TopKHeap h(k, 0);
    for (const auto& e : all) h.offer(e.itemset, e.utility);
    std::sort(all.begin(), all.end(), TopKHeap::better);
    all.resize(k);
    auto got = h.sorted();
    REQUIRE(got.size() == k);
    for (std::size_t i = 0; i < k; ++i) {
      CHECK(got[i].itemset == all[i].itemset);
      CHECK(got[i].utility == all[i].utility);
    }
    CHECK(h.current_delta() == all.back().utility);
  }
}

TEST_CASE("pre-search raises never pass the optimal threshold") {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    auto db = oracle::random_db(seed);
    auto stats = compute_item_stats(db);
    std::size_t occurring = 0;
    for (const auto& s : stats.all()) occurring += s.support > 0 ? 1 : 0;
    for (std::size_t k : {1, 5, 10}) {
      Utility df = oracle::delta_f(db, k);
      ThresholdState s;
      raise_to_kth(build_pe_matrix(db).values(), k, s, "pe");
      riu_raise(stats, k, s);
      cud_raise(build_cudm(db), k, s);
      if (occurring >= 2) rsd_raise(build_rsd_matrix(db, stats, std::min<std::size_t>(4, occurring)), k, s);
      cov_raise(db, stats, k, 1024, s);
      REQUIRE(s.delta() <= df);
    }
  }
}
