#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "tkhui/core.hpp"
#include "tkhui/miners.hpp"

namespace tkhui {

enum class OutputFormat { Text, Csv, Json };

OutputFormat parse_format(const std::string& name);

struct OutputFlags {
  bool stats = false;
  bool audit = false;
};

/// Text: one `labels #UTIL: u` line per itemset, then `#STAT` / `#AUDIT`
/// lines. CSV: `rank,itemset,utility` table, then optional `stat,value` and
/// `strategy,old_delta,new_delta` sections separated by blank lines.
void write_result(const MiningResult& result, const std::string& algo, std::size_t k,
                  OutputFormat format, const OutputFlags& flags, std::ostream& out);

/// Replace the strategy / pruning toggles of `opts` from comma-separated
/// token lists. Strategies: pe, pmud, riu, rsd, cud, cov, ruc (ruc is always
/// on). Pruning: dgu, uprune, ruz, epb, ea, eucs, or `none`. Throws Error on
/// unknown tokens.
void apply_strategy_list(MinerOptions& opts, const std::string& list);
void apply_prune_list(MinerOptions& opts, const std::string& list);

using MinerFn = std::function<MiningResult(const Database&, std::size_t)>;

struct NamedMiner {
  std::string name;
  MinerFn run;
};

/// Runs every miner and the oracle; prints a diff for each disagreement.
/// Returns true iff all agree exactly. OracleGuardError propagates.
bool verify_against_oracle(const Database& db, std::size_t k, const std::vector<NamedMiner>& miners,
                           std::size_t oracle_max_items, std::ostream& out);

struct RunRow {
  std::string dataset;
  std::string algo;
  std::size_t k = 0;
  double runtime_ms = 0.0;
  std::uint64_t candidates = 0;
  std::uint64_t joins = 0;
  std::size_t peak_mem_bytes = 0;
  Utility delta_final = 0;
  std::size_t topk_size = 0;
  /// Non-empty when the cell could not run.
  std::string error;
  std::vector<AuditEntry> audit;
};

struct RunReport {
  std::vector<RunRow> rows;
};

inline constexpr const char* kReportCsvHeader =
    "dataset,algo,k,runtime_ms,candidates,joins,peak_mem_bytes,delta_final,topk_size";

/// Error rows keep the dataset/algo/k columns and leave the rest empty.
void write_report_csv(const RunReport& report, std::ostream& out);
void write_report_json(const RunReport& report, bool include_audit, std::ostream& out);

struct DatasetSource {
  std::string name;
  /// Path to a dataset file, or empty when generated.
  std::string path;
  /// "mushroom_like" or "random" when path is empty.
  std::string generator;
  std::uint64_t seed = 1;
};

struct BenchConfig {
  std::vector<DatasetSource> datasets;
  std::vector<std::string> algos;
  std::vector<std::size_t> ks;
  std::size_t repetitions = 1;
  bool audit = false;
};

/// JSON: {"datasets":[{"name":..,"path":..} | {"name":..,"generate":"mushroom_like","seed":1}],
///        "algos":["tko","khmc"], "k":[100,500], "repetitions":3, "audit":false}
BenchConfig parse_bench_config(const std::string& json_text);

/// One row per (dataset, algo, k) cell with the median runtime and peak over
/// repetitions.
RunReport run_bench(const BenchConfig& config);

/// Subcommand entry points. `args` excludes the program and subcommand names.
/// Exit codes: 0 ok, 1 input/integrity/run error or verify mismatch,
/// 2 usage error, 3 oracle guard exceeded.
int cmd_mine(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int cmd_verify(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int cmd_bench(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int cmd_stats(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int cmd_gen(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Dispatches `argv[1]` to a subcommand.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tkhui
