#include "tkhui/miners.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

namespace tkhui {

MinerOptions MinerOptions::tko() {
  MinerOptions o;
  o.pe = true;
  o.ruz = true;
  o.epb = true;
  return o;
}

MinerOptions MinerOptions::khmc() {
  MinerOptions o;
  o.riu = true;
  o.cud = true;
  o.cov = true;
  o.ea = true;
  o.eucs = true;
  return o;
}

bool u_prune(const UtilityList& ul, Utility delta) { return ul.sum_iutil + ul.sum_rutil < delta; }

bool ruz_prune(const UtilityList& ul, Utility delta) { return nzeu(ul) + ul.sum_rutil < delta; }

std::vector<const UtilityList*> epb_order(const std::vector<UtilityList>& uls) {
  std::vector<const UtilityList*> out;
  out.reserve(uls.size());
  for (const auto& ul : uls) out.push_back(&ul);
  std::stable_sort(out.begin(), out.end(), [](const UtilityList* a, const UtilityList* b) {
    return a->sum_iutil + a->sum_rutil > b->sum_iutil + b->sum_rutil;
  });
  return out;
}

bool eucs_skip(const SparsePairMatrix& eucst, ItemId x, ItemId y, Utility delta) {
  if (eucst.kind() != PairKind::EucstTwu) throw Error("eucs_skip needs an EUCST matrix");
  return eucst.at(x, y) < delta;
}

namespace {

using Clock = std::chrono::steady_clock;

Itemset sorted_ids(const Itemset& s) {
  Itemset key = s;
  std::sort(key.begin(), key.end());
  return key;
}

std::vector<ResultItemset> to_result(const Database& db, const std::vector<TopKHeap::Entry>& entries) {
  std::vector<ResultItemset> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back({db.labels_of(e.itemset), e.utility});
  return out;
}

/// Candidate sink for top-k runs: the RUC heap.
class TopKSink {
 public:
  TopKSink(std::size_t k, ThresholdState& state) : heap_(k, state.delta()), state_(state) {}

  Utility delta() const { return heap_.current_delta(); }
  void offer(const UtilityList& ul) {
    Utility d = heap_.offer(sorted_ids(ul.itemset), ul.sum_iutil);
    state_.raise_if_higher("ruc", d);
  }
  const TopKHeap& heap() const { return heap_; }

 private:
  TopKHeap heap_;
  ThresholdState& state_;
};

/// Candidate sink for fixed-threshold runs.
class ThresholdSink {
 public:
  explicit ThresholdSink(Utility delta) : delta_(delta) {}
  Utility delta() const { return delta_; }
  void offer(const UtilityList& ul) { found_.push_back({sorted_ids(ul.itemset), ul.sum_iutil}); }
  std::vector<TopKHeap::Entry>& found() { return found_; }

 private:
  Utility delta_;
  std::vector<TopKHeap::Entry> found_;
};

/// Depth-first set-enumeration over utility lists.
template <class Sink>
class Search {
 public:
  Search(const ItemOrder& order, const MinerOptions& opts, const SparsePairMatrix* eucst,
         Sink& sink, MiningStats& stats)
      : order_(order), opts_(opts), eucst_(eucst), sink_(sink), stats_(stats) {}

  void run(std::vector<UtilityList>& roots) {
    stats_.candidates_visited += roots.size();
    for (const auto& ul : roots) track(ul, +1);
    explore(nullptr, roots);
  }

 private:
  void explore(const UtilityList* prefix, std::vector<UtilityList>& uls) {
    std::vector<std::size_t> visit(uls.size());
    std::iota(visit.begin(), visit.end(), std::size_t{0});
    if (opts_.epb) {
      std::stable_sort(visit.begin(), visit.end(), [&](std::size_t a, std::size_t b) {
        return uls[a].sum_iutil + uls[a].sum_rutil > uls[b].sum_iutil + uls[b].sum_rutil;
      });
    }
    for (std::size_t i : visit) {
      const UtilityList& x = uls[i];
      if (x.sum_iutil >= sink_.delta()) sink_.offer(x);
      if (x.sum_rutil == 0 || i + 1 == uls.size()) continue;
      if (opts_.ruz) {
        if (ruz_prune(x, sink_.delta())) {
          ++stats_.prunes["ruz"];
          continue;
        }
      } else if (opts_.uprune && u_prune(x, sink_.delta())) {
        ++stats_.prunes["uprune"];
        continue;
      }
      std::vector<UtilityList> ext;
      for (std::size_t j = i + 1; j < uls.size(); ++j) {
        const UtilityList& y = uls[j];
        if (eucst_ != nullptr && eucs_skip(*eucst_, x.last_item(), y.last_item(), sink_.delta())) {
          ++stats_.prunes["eucs"];
          continue;
        }
        ++stats_.joins_performed;
        auto xy = join_ulists(prefix, x, y, order_, {opts_.ea, sink_.delta()});
        if (!xy) {
          ++stats_.prunes["ea"];
          continue;
        }
        if (xy->empty()) continue;
        ++stats_.candidates_visited;
        track(*xy, +1);
        ext.push_back(std::move(*xy));
      }
      if (!ext.empty()) explore(&x, ext);
      for (const auto& ul : ext) track(ul, -1);
    }
  }

  void track(const UtilityList& ul, int sign) {
    if (sign > 0) {
      live_ += ul.bytes();
      stats_.peak_mem_bytes = std::max(stats_.peak_mem_bytes, live_);
    } else {
      live_ -= ul.bytes();
    }
  }

  const ItemOrder& order_;
  const MinerOptions& opts_;
  const SparsePairMatrix* eucst_;
  Sink& sink_;
  MiningStats& stats_;
  std::size_t live_ = 0;
};

MiningResult run_topk(const Database& db, std::size_t k, const MinerOptions& opts) {
  if (k < 1) throw Error("k must be at least 1");
  if (!opts.ruc) throw Error("RUC cannot be disabled for top-k mining");
  auto start = Clock::now();
  MiningResult result;
  if (db.empty()) return result;

  ItemStats stats = compute_item_stats(db);
  ThresholdState state(0);
  if (opts.pe) raise_to_kth(build_pe_matrix(db).values(), k, state, "pe");
  if (opts.pmud) {
    if (!opts.profits) throw Error("PMUD needs external utilities (profits)");
    raise_to_kth(build_pmud_matrix(db, *opts.profits).values(), k, state, "pmud");
  }
  if (opts.riu) riu_raise(stats, k, state);

  Database working;
  if (opts.dgu) {
    working = apply_dgu(db, stats, state.delta());
    std::uint64_t removed = 0;
    for (const auto& s : stats.all()) removed += (s.support > 0 && s.twu < state.delta()) ? 1 : 0;
    if (removed) result.stats.prunes["dgu"] += removed;
  } else {
    working = db;
  }
  ItemOrder order = twu_order(stats);
  working = reorder_database(working, order);

  ItemStats working_stats = compute_item_stats(working);
  if (opts.rsd) {
    std::size_t occurring = 0;
    for (const auto& s : working_stats.all()) occurring += s.support > 0 ? 1 : 0;
    std::size_t n = std::min(opts.rsd_n, occurring);
    if (n >= 2) rsd_raise(build_rsd_matrix(working, working_stats, n), k, state);
  }
  if (opts.cud) cud_raise(build_cudm(working), k, state);
  if (opts.cov) cov_raise(working, working_stats, k, opts.cov_cap, state);

  std::optional<SparsePairMatrix> eucst;
  if (opts.eucs) eucst = build_eucst(working);

  auto roots = build_1item_ulists(working, order);
  TopKSink sink(k, state);
  Search<TopKSink> search(order, opts, eucst ? &*eucst : nullptr, sink, result.stats);
  search.run(roots);

  result.topk = to_result(db, sink.heap().sorted());
  result.delta_final = sink.heap().full() ? result.topk.back().utility : state.delta();
  result.audit = state.audit();
  result.stats.elapsed_ms =
      std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return result;
}

}  // namespace

MiningResult tko_mine(const Database& db, std::size_t k, const MinerOptions& opts) {
  return run_topk(db, k, opts);
}

MiningResult khmc_mine(const Database& db, std::size_t k, const MinerOptions& opts) {
  return run_topk(db, k, opts);
}

MiningResult oracle_topk(const Database& db, std::size_t k, std::size_t max_items) {
  if (k < 1) throw Error("k must be at least 1");
  auto start = Clock::now();
  // tidset per occurring item; U(X,T) summed item by item from a dense table
  std::vector<std::vector<Tid>> tids(db.item_count());
  std::vector<std::vector<Utility>> util(db.size() + 1, std::vector<Utility>(db.item_count(), 0));
  for (const auto& t : db.transactions) {
    for (std::size_t i = 0; i < t.items.size(); ++i) {
      tids[t.items[i]].push_back(t.tid);
      util[t.tid][t.items[i]] = t.utils[i];
    }
  }
  std::vector<ItemId> items;
  for (ItemId id = 0; id < db.item_count(); ++id) {
    if (!tids[id].empty()) items.push_back(id);
  }
  if (items.size() > max_items) {
    throw OracleGuardError(std::to_string(items.size()) + " distinct items exceed the oracle limit of " +
                           std::to_string(max_items) + "; raise the limit to override");
  }

  std::vector<TopKHeap::Entry> all;
  Itemset current;
  auto dfs = [&](auto&& self, std::size_t from, const std::vector<Tid>& cover) -> void {
    for (std::size_t i = from; i < items.size(); ++i) {
      ItemId id = items[i];
      std::vector<Tid> next;
      if (current.empty()) {
        next = tids[id];
      } else {
        std::set_intersection(cover.begin(), cover.end(), tids[id].begin(), tids[id].end(),
                              std::back_inserter(next));
      }
      if (next.empty()) continue;
      current.push_back(id);
      Utility u = 0;
      for (Tid tid : next) {
        for (ItemId member : current) u += util[tid][member];
      }
      all.push_back({current, u});
      self(self, i + 1, next);
      current.pop_back();
    }
  };
  dfs(dfs, 0, {});
  std::sort(all.begin(), all.end(), TopKHeap::better);
  if (all.size() > k) all.resize(k);

  MiningResult result;
  result.topk = to_result(db, all);
  result.delta_final = (result.topk.size() == k) ? result.topk.back().utility : 0;
  result.stats.candidates_visited = all.size();
  result.stats.elapsed_ms =
      std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return result;
}

std::vector<ResultItemset> hui_mine(const Database& db, Utility delta) {
  if (delta < 1) throw Error("HUI threshold must be at least 1");
  if (db.empty()) return {};
  ItemStats stats = compute_item_stats(db);
  ItemOrder order = twu_order(stats);
  Database working = reorder_database(apply_dgu(db, stats, delta), order);
  auto roots = build_1item_ulists(working, order);

  MinerOptions opts;  // U-Prune only
  MiningStats mstats;
  ThresholdSink sink(delta);
  Search<ThresholdSink> search(order, opts, nullptr, sink, mstats);
  search.run(roots);
  auto& found = sink.found();
  std::sort(found.begin(), found.end(), TopKHeap::better);
  return to_result(db, found);
}

}  // namespace tkhui
