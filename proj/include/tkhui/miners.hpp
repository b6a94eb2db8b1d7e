#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "tkhui/core.hpp"
#include "tkhui/strategies.hpp"
#include "tkhui/ulist.hpp"

namespace tkhui {

/// Threshold-raising strategies and pruning properties applied by a run.
/// Pre-search raises run in a fixed sequence: pe, pmud, riu (first scan),
/// then rsd, cud, cov (after the item filter).
struct MinerOptions {
  bool pe = false;
  bool pmud = false;
  bool riu = false;
  bool rsd = false;
  bool cud = false;
  bool cov = false;
  bool ruc = true;

  /// Global filter of items with TWU < delta (DGU for TKO, TWDC for KHMC).
  bool dgu = true;
  bool uprune = true;
  bool ruz = false;
  bool epb = false;
  bool ea = false;
  bool eucs = false;

  std::size_t rsd_n = 4;
  std::size_t cov_cap = 1024;
  /// External utility per label; required by pmud.
  std::optional<std::unordered_map<Label, Utility>> profits;

  static MinerOptions tko();
  static MinerOptions khmc();
};

struct MiningStats {
  std::uint64_t candidates_visited = 0;
  std::uint64_t joins_performed = 0;
  /// property name -> number of times it cut something
  std::map<std::string, std::uint64_t> prunes;
  double elapsed_ms = 0.0;
  /// High-water mark of live utility-list storage.
  std::size_t peak_mem_bytes = 0;
};

struct ResultItemset {
  std::vector<Label> itemset;  // ascending labels
  Utility utility;

  bool operator==(const ResultItemset&) const = default;
};

struct MiningResult {
  /// Descending utility, ties by lexicographically smaller itemset.
  std::vector<ResultItemset> topk;
  Utility delta_final = 0;
  MiningStats stats;
  std::vector<AuditEntry> audit;
};

/// Cut iff U + RU < delta.
bool u_prune(const UtilityList& ul, Utility delta);
/// Cut all extensions iff NZEU + RU < delta.
bool ruz_prune(const UtilityList& ul, Utility delta);
/// Descending U + RU; ties keep the canonical (input) order.
std::vector<const UtilityList*> epb_order(const std::vector<UtilityList>& uls);
/// Skip the join of extensions ending in x and y iff EUCST(x, y) < delta.
bool eucs_skip(const SparsePairMatrix& eucst, ItemId x, ItemId y, Utility delta);

/// One-phase top-k miners sharing a utility-list search; they differ only in
/// the default strategy and pruning sets. Throws Error for k < 1 or when RUC
/// is disabled.
MiningResult tko_mine(const Database& db, std::size_t k, const MinerOptions& opts = MinerOptions::tko());
MiningResult khmc_mine(const Database& db, std::size_t k, const MinerOptions& opts = MinerOptions::khmc());

class OracleGuardError : public Error {
 public:
  using Error::Error;
};

constexpr std::size_t kOracleMaxItems = 20;

/// Exhaustive enumeration via tidset intersection. Throws OracleGuardError
/// when more than `max_items` distinct items occur.
MiningResult oracle_topk(const Database& db, std::size_t k, std::size_t max_items = kOracleMaxItems);

/// Every itemset with U >= delta, in result order. Throws Error for delta < 1.
std::vector<ResultItemset> hui_mine(const Database& db, Utility delta);

}  // namespace tkhui
