#include "tkhui/bench.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "tkhui/ingest.hpp"

namespace tkhui {

using nlohmann::json;

OutputFormat parse_format(const std::string& name) {
  if (name == "text") return OutputFormat::Text;
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw Error("unknown output format '" + name + "'");
}

namespace {

std::string join_labels(const std::vector<Label>& labels) {
  std::string s;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(labels[i]);
  }
  return s;
}

std::vector<std::pair<std::string, std::string>> stat_rows(const MiningStats& s) {
  std::vector<std::pair<std::string, std::string>> rows;
  rows.emplace_back("candidates_visited", std::to_string(s.candidates_visited));
  rows.emplace_back("joins_performed", std::to_string(s.joins_performed));
  for (const auto& [name, n] : s.prunes) rows.emplace_back("prune_" + name, std::to_string(n));
  rows.emplace_back("peak_mem_bytes", std::to_string(s.peak_mem_bytes));
  std::ostringstream ms;
  ms << std::fixed << std::setprecision(3) << s.elapsed_ms;
  rows.emplace_back("elapsed_ms", ms.str());
  return rows;
}

json stats_json(const MiningStats& s) {
  json j;
  j["candidates_visited"] = s.candidates_visited;
  j["joins_performed"] = s.joins_performed;
  j["prunes"] = s.prunes;
  j["peak_mem_bytes"] = s.peak_mem_bytes;
  j["elapsed_ms"] = s.elapsed_ms;
  return j;
}

json audit_json(const std::vector<AuditEntry>& audit) {
  json a = json::array();
  for (const auto& e : audit) {
    a.push_back({{"strategy", e.strategy}, {"old_delta", e.old_delta}, {"new_delta", e.new_delta}});
  }
  return a;
}

std::vector<std::string> split_tokens(const std::string& list) {
  std::vector<std::string> out;
  std::stringstream ss(list);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok.erase(0, tok.find_first_not_of(" \t"));
    tok.erase(tok.find_last_not_of(" \t") + 1);
    if (!tok.empty()) out.push_back(tok);
  }
  return out;
}

}  // namespace

void write_result(const MiningResult& result, const std::string& algo, std::size_t k,
                  OutputFormat format, const OutputFlags& flags, std::ostream& out) {
  switch (format) {
    case OutputFormat::Text:
      for (const auto& r : result.topk) out << join_labels(r.itemset) << " #UTIL: " << r.utility << '\n';
      if (flags.stats) {
        out << "#STAT delta_final " << result.delta_final << '\n';
        for (const auto& [name, v] : stat_rows(result.stats)) out << "#STAT " << name << ' ' << v << '\n';
      }
      if (flags.audit) {
        for (const auto& e : result.audit) {
          out << "#AUDIT " << e.strategy << ' ' << e.old_delta << ' ' << e.new_delta << '\n';
        }
      }
      break;
    case OutputFormat::Csv:
      out << "rank,itemset,utility\n";
      for (std::size_t i = 0; i < result.topk.size(); ++i) {
        out << i + 1 << ',' << join_labels(result.topk[i].itemset) << ',' << result.topk[i].utility << '\n';
      }
      if (flags.stats) {
        out << "\nstat,value\n";
        out << "delta_final," << result.delta_final << '\n';
        for (const auto& [name, v] : stat_rows(result.stats)) out << name << ',' << v << '\n';
      }
      if (flags.audit) {
        out << "\nstrategy,old_delta,new_delta\n";
        for (const auto& e : result.audit) {
          out << e.strategy << ',' << e.old_delta << ',' << e.new_delta << '\n';
        }
      }
      break;
    case OutputFormat::Json: {
      json j;
      j["algo"] = algo;
      j["k"] = k;
      j["delta_final"] = result.delta_final;
      j["topk"] = json::array();
      for (const auto& r : result.topk) j["topk"].push_back({{"itemset", r.itemset}, {"utility", r.utility}});
      if (flags.stats) j["stats"] = stats_json(result.stats);
      if (flags.audit) j["audit"] = audit_json(result.audit);
      out << j.dump(2) << '\n';
      break;
    }
  }
}

void apply_strategy_list(MinerOptions& opts, const std::string& list) {
  opts.pe = opts.pmud = opts.riu = opts.rsd = opts.cud = opts.cov = false;
  opts.ruc = true;
  for (const auto& tok : split_tokens(list)) {
    if (tok == "pe") opts.pe = true;
    else if (tok == "pmud") opts.pmud = true;
    else if (tok == "riu") opts.riu = true;
    else if (tok == "rsd") opts.rsd = true;
    else if (tok == "cud") opts.cud = true;
    else if (tok == "cov") opts.cov = true;
    else if (tok == "ruc" || tok == "none") continue;
    else throw Error("unknown strategy '" + tok + "'");
  }
}

void apply_prune_list(MinerOptions& opts, const std::string& list) {
  opts.dgu = opts.uprune = opts.ruz = opts.epb = opts.ea = opts.eucs = false;
  for (const auto& tok : split_tokens(list)) {
    if (tok == "dgu" || tok == "twdc") opts.dgu = true;
    else if (tok == "uprune") opts.uprune = true;
    else if (tok == "ruz") opts.ruz = true;
    else if (tok == "epb") opts.epb = true;
    else if (tok == "ea") opts.ea = true;
    else if (tok == "eucs") opts.eucs = true;
    else if (tok == "none") continue;
    else throw Error("unknown pruning property '" + tok + "'");
  }
}

bool verify_against_oracle(const Database& db, std::size_t k, const std::vector<NamedMiner>& miners,
                           std::size_t oracle_max_items, std::ostream& out) {
  MiningResult truth = oracle_topk(db, k, oracle_max_items);
  bool all_ok = true;
  for (const auto& m : miners) {
    MiningResult got = m.run(db, k);
    if (got.topk == truth.topk) {
      out << m.name << ": OK (" << got.topk.size() << " itemsets, delta " << got.delta_final << ")\n";
      continue;
    }
    all_ok = false;
    out << m.name << ": MISMATCH\n";
    std::size_t n = std::max(got.topk.size(), truth.topk.size());
    for (std::size_t i = 0; i < n; ++i) {
      auto show = [](const std::vector<ResultItemset>& v, std::size_t i) {
        if (i >= v.size()) return std::string("-");
        return "{" + join_labels(v[i].itemset) + "}:" + std::to_string(v[i].utility);
      };
      std::string a = show(truth.topk, i), b = show(got.topk, i);
      out << (a == b ? "  " : "! ") << i + 1 << " oracle " << a << "  " << m.name << ' ' << b << '\n';
    }
  }
  return all_ok;
}

void write_report_csv(const RunReport& report, std::ostream& out) {
  out << kReportCsvHeader << '\n';
  for (const auto& r : report.rows) {
    out << r.dataset << ',' << r.algo << ',' << r.k << ',';
    if (!r.error.empty()) {
      out << ",,,,,\n";
      continue;
    }
    out << std::fixed << std::setprecision(3) << r.runtime_ms << std::defaultfloat << ','
        << r.candidates << ',' << r.joins << ',' << r.peak_mem_bytes << ',' << r.delta_final << ','
        << r.topk_size << '\n';
  }
}

void write_report_json(const RunReport& report, bool include_audit, std::ostream& out) {
  json rows = json::array();
  for (const auto& r : report.rows) {
    json j = {{"dataset", r.dataset}, {"algo", r.algo}, {"k", r.k}};
    if (!r.error.empty()) {
      j["error"] = r.error;
    } else {
      j["runtime_ms"] = r.runtime_ms;
      j["candidates"] = r.candidates;
      j["joins"] = r.joins;
      j["peak_mem_bytes"] = r.peak_mem_bytes;
      j["delta_final"] = r.delta_final;
      j["topk_size"] = r.topk_size;
      if (include_audit) j["audit"] = audit_json(r.audit);
    }
    rows.push_back(std::move(j));
  }
  out << json{{"rows", rows}}.dump(2) << '\n';
}

BenchConfig parse_bench_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(std::string("bad bench config: ") + e.what());
  }
  BenchConfig c;
  try {
    for (const auto& d : j.at("datasets")) {
      DatasetSource s;
      s.name = d.at("name").get<std::string>();
      if (d.contains("path")) {
        s.path = d["path"].get<std::string>();
      } else {
        s.generator = d.at("generate").get<std::string>();
        s.seed = d.value("seed", std::uint64_t{1});
      }
      c.datasets.push_back(std::move(s));
    }
    c.algos = j.at("algos").get<std::vector<std::string>>();
    c.ks = j.at("k").get<std::vector<std::size_t>>();
    c.repetitions = j.value("repetitions", std::size_t{1});
    c.audit = j.value("audit", false);
  } catch (const json::exception& e) {
    throw Error(std::string("bad bench config: ") + e.what());
  }
  for (const auto& a : c.algos) {
    if (a != "tko" && a != "khmc") throw Error("bench supports algos tko and khmc, not '" + a + "'");
  }
  for (auto k : c.ks) {
    if (k < 1) throw Error("bench k values must be at least 1");
  }
  if (c.repetitions < 1) throw Error("bench repetitions must be at least 1");
  return c;
}

namespace {

Database load_source(const DatasetSource& s) {
  if (!s.path.empty()) return load_dataset(s.path);
  if (s.generator == "mushroom_like") return gen_categorical_db(mushroom_like_spec(s.seed));
  if (s.generator == "random") {
    RandomDbSpec spec;
    spec.seed = s.seed;
    spec.max_items = 12;
    spec.max_trans = 20;
    return gen_random_db(spec);
  }
  throw Error("unknown dataset generator '" + s.generator + "'");
}

template <class T>
T median(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

}  // namespace

RunReport run_bench(const BenchConfig& config) {
  RunReport report;
  for (const auto& src : config.datasets) {
    std::optional<Database> db;
    std::string load_error;
    try {
      db = load_source(src);
    } catch (const std::exception& e) {
      load_error = e.what();
    }
    for (const auto& algo : config.algos) {
      for (auto k : config.ks) {
        RunRow row;
        row.dataset = src.name;
        row.algo = algo;
        row.k = k;
        if (!db) {
          row.error = load_error;
          report.rows.push_back(std::move(row));
          continue;
        }
        std::vector<double> times;
        std::vector<std::size_t> peaks;
        for (std::size_t rep = 0; rep < config.repetitions; ++rep) {
          MiningResult r = algo == "tko" ? tko_mine(*db, k) : khmc_mine(*db, k);
          times.push_back(r.stats.elapsed_ms);
          peaks.push_back(r.stats.peak_mem_bytes);
          if (rep == 0) {
            row.candidates = r.stats.candidates_visited;
            row.joins = r.stats.joins_performed;
            row.delta_final = r.delta_final;
            row.topk_size = r.topk.size();
            row.audit = r.audit;
          }
        }
        row.runtime_ms = median(times);
        row.peak_mem_bytes = median(peaks);
        report.rows.push_back(std::move(row));
      }
    }
  }
  return report;
}

namespace {

/// Runs `body` after parsing; maps failures onto the documented exit codes.
int run_parsed(CLI::App& app, const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err, const std::function<int()>& body) {
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n' << app.help();
    return 2;
  }
  try {
    return body();
  } catch (const OracleGuardError& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

/// Opens --output or falls back to `out`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw Error("cannot write '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

}  // namespace

int cmd_mine(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mine the top-k high utility itemsets", "mine"};
  std::string input, algo = "tko", strategies, prune, output, format = "text", profits;
  std::size_t k = 0, rsd_n = 4, cov_cap = 1024;
  bool stats = false, audit = false, lenient = false;
  app.add_option("--input", input, "dataset file")->required();
  app.add_option("--k", k, "number of itemsets")->required()->check(CLI::PositiveNumber);
  app.add_option("--algo", algo)->check(CLI::IsMember({"tko", "khmc", "oracle"}));
  app.add_option("--strategies", strategies, "comma list: pe,pmud,riu,rsd,cud,cov,ruc");
  app.add_option("--prune", prune, "comma list: dgu,uprune,ruz,epb,ea,eucs or none");
  app.add_option("--rsd-n", rsd_n)->check(CLI::Range(std::size_t{2}, std::size_t{1} << 30));
  app.add_option("--cov-cap", cov_cap)->check(CLI::PositiveNumber);
  app.add_option("--profits", profits, "label/profit table for pmud");
  app.add_option("--output", output);
  app.add_option("--format", format)->check(CLI::IsMember({"text", "csv", "json"}));
  app.add_flag("--stats", stats);
  app.add_flag("--audit", audit);
  app.add_flag("--lenient", lenient, "repair TU mismatches instead of failing");
  return run_parsed(app, args, out, err, [&] {
    MinerOptions opts = algo == "khmc" ? MinerOptions::khmc() : MinerOptions::tko();
    try {
      if (app.count("--strategies")) apply_strategy_list(opts, strategies);
      if (app.count("--prune")) apply_prune_list(opts, prune);
    } catch (const Error& e) {
      err << "usage error: " << e.what() << '\n';
      return 2;
    }
    opts.rsd_n = rsd_n;
    opts.cov_cap = cov_cap;
    if (!profits.empty()) opts.profits = load_profits(profits);
    Database db = load_dataset(input, ParseOptions{!lenient});
    MiningResult r = algo == "oracle" ? oracle_topk(db, k)
                     : algo == "khmc" ? khmc_mine(db, k, opts)
                                      : tko_mine(db, k, opts);
    Sink sink(output, out);
    write_result(r, algo, k, parse_format(format), {stats, audit}, sink.get());
    return 0;
  });
}

int cmd_verify(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Check miners against the exhaustive oracle", "verify"};
  std::string input, algo = "all";
  std::size_t k = 0, max_items = kOracleMaxItems;
  app.add_option("--input", input)->required();
  app.add_option("--k", k)->required()->check(CLI::PositiveNumber);
  app.add_option("--algo", algo)->check(CLI::IsMember({"tko", "khmc", "all"}));
  app.add_option("--max-items", max_items, "oracle item limit")->check(CLI::PositiveNumber);
  return run_parsed(app, args, out, err, [&] {
    Database db = load_dataset(input);
    std::vector<NamedMiner> miners;
    if (algo != "khmc") miners.push_back({"tko", [](const Database& d, std::size_t kk) { return tko_mine(d, kk); }});
    if (algo != "tko") miners.push_back({"khmc", [](const Database& d, std::size_t kk) { return khmc_mine(d, kk); }});
    return verify_against_oracle(db, k, miners, max_items, out) ? 0 : 1;
  });
}

int cmd_bench(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Run the comparative benchmark grid", "bench"};
  std::string config_path, output, format = "csv";
  app.add_option("--config", config_path)->required();
  app.add_option("--output", output);
  app.add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
  return run_parsed(app, args, out, err, [&] {
    std::ifstream in(config_path);
    if (!in) throw Error("cannot open config '" + config_path + "'");
    std::stringstream text;
    text << in.rdbuf();
    BenchConfig config = parse_bench_config(text.str());
    RunReport report = run_bench(config);
    Sink sink(output, out);
    if (format == "json") {
      write_report_json(report, config.audit, sink.get());
    } else {
      write_report_csv(report, sink.get());
    }
    int status = 0;
    for (const auto& r : report.rows) {
      if (!r.error.empty()) {
        err << "error: " << r.dataset << ": " << r.error << '\n';
        status = 1;
      }
    }
    return status;
  });
}

int cmd_stats(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Print dataset characteristics", "stats"};
  std::string input;
  app.add_option("--input", input)->required();
  return run_parsed(app, args, out, err, [&] {
    auto s = dataset_summary(load_dataset(input));
    out << "trans_count " << s.trans_count << '\n'
        << "item_count " << s.item_count << '\n'
        << std::fixed << std::setprecision(4) << "avg_len " << s.avg_len << '\n'
        << "density_pct " << s.density_pct << '\n';
    return 0;
  });
}

int cmd_gen(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Write a synthetic dataset", "gen"};
  std::string kind = "mushroom_like", output;
  std::uint64_t seed = 1;
  RandomDbSpec spec;
  app.add_option("--kind", kind)->check(CLI::IsMember({"mushroom_like", "random"}));
  app.add_option("--seed", seed);
  app.add_option("--max-items", spec.max_items);
  app.add_option("--max-trans", spec.max_trans);
  app.add_option("--max-len", spec.max_len);
  app.add_option("--output", output);
  return run_parsed(app, args, out, err, [&] {
    spec.seed = seed;
    Database db = kind == "random" ? gen_random_db(spec) : gen_categorical_db(mushroom_like_spec(seed));
    Sink sink(output, out);
    write_dataset(db, sink.get());
    return 0;
  });
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  static const char* usage =
      "usage: tkhui <mine|verify|bench|stats|gen> [options]\n"
      "       tkhui <command> --help\n";
  if (argc < 2) {
    err << usage;
    return 2;
  }
  std::string cmd = argv[1];
  std::vector<std::string> args(argv + 2, argv + argc);
  if (cmd == "mine") return cmd_mine(args, out, err);
  if (cmd == "verify") return cmd_verify(args, out, err);
  if (cmd == "bench") return cmd_bench(args, out, err);
  if (cmd == "stats") return cmd_stats(args, out, err);
  if (cmd == "gen") return cmd_gen(args, out, err);
  if (cmd == "--help" || cmd == "-h") {
    out << usage;
    return 0;
  }
  err << "unknown command '" << cmd << "'\n" << usage;
  return 2;
}

}  // namespace tkhui
