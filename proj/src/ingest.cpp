#include "tkhui/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

namespace tkhui {

namespace {

struct RawLine {
  std::size_t line_no;
  std::vector<Label> labels;
  std::vector<Utility> utils;
  Utility declared_tu;
};

std::vector<std::uint64_t> parse_tokens(std::string_view field, std::size_t line_no,
                                        const char* what) {
  std::vector<std::uint64_t> out;
  std::size_t pos = 0;
  while (pos < field.size()) {
    while (pos < field.size() && (field[pos] == ' ' || field[pos] == '\t')) ++pos;
    if (pos >= field.size()) break;
    std::size_t end = pos;
    while (end < field.size() && field[end] != ' ' && field[end] != '\t') ++end;
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(field.data() + pos, field.data() + end, value);
    if (ec != std::errc{} || ptr != field.data() + end) {
      throw ParseError(line_no, std::string("bad ") + what + " token '" +
                                    std::string(field.substr(pos, end - pos)) + "'");
    }
    out.push_back(value);
    pos = end;
  }
  return out;
}

RawLine parse_line(std::string_view line, std::size_t line_no) {
  auto c1 = line.find(':');
  auto c2 = c1 == std::string_view::npos ? c1 : line.find(':', c1 + 1);
  if (c2 == std::string_view::npos || line.find(':', c2 + 1) != std::string_view::npos) {
    throw ParseError(line_no, "expected 'items:TU:utilities'");
  }
  RawLine raw;
  raw.line_no = line_no;
  raw.labels = parse_tokens(line.substr(0, c1), line_no, "item");
  auto tu = parse_tokens(line.substr(c1 + 1, c2 - c1 - 1), line_no, "TU");
  auto utils = parse_tokens(line.substr(c2 + 1), line_no, "utility");
  if (tu.size() != 1) throw ParseError(line_no, "expected exactly one TU token");
  if (raw.labels.empty()) throw ParseError(line_no, "transaction has no items");
  if (utils.size() != raw.labels.size()) {
    throw ParseError(line_no, std::to_string(raw.labels.size()) + " items but " +
                                  std::to_string(utils.size()) + " utilities");
  }
  std::vector<Label> sorted = raw.labels;
  std::sort(sorted.begin(), sorted.end());
  if (auto dup = std::adjacent_find(sorted.begin(), sorted.end()); dup != sorted.end()) {
    throw ParseError(line_no, "duplicate item " + std::to_string(*dup));
  }
  for (auto u : utils) {
    if (u == 0) throw ParseError(line_no, "item utilities must be positive");
    raw.utils.push_back(static_cast<Utility>(u));
  }
  raw.declared_tu = static_cast<Utility>(tu[0]);
  return raw;
}

}  // namespace

Database parse_dataset(std::istream& in, const ParseOptions& opts) {
  std::vector<RawLine> raws;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view view(line);
    auto first = view.find_first_not_of(" \t");
    if (first == std::string_view::npos) continue;
    char c = view[first];
    if (c == '#' || c == '%' || c == '@') continue;
    RawLine raw = parse_line(view, line_no);
    Utility sum = std::accumulate(raw.utils.begin(), raw.utils.end(), Utility{0});
    if (sum != raw.declared_tu) {
      if (opts.strict) {
        throw IntegrityError(line_no, "declared TU " + std::to_string(raw.declared_tu) +
                                          " but utilities sum to " + std::to_string(sum));
      }
      raw.declared_tu = sum;
    }
    raws.push_back(std::move(raw));
  }

  std::vector<Label> labels;
  for (const auto& r : raws) labels.insert(labels.end(), r.labels.begin(), r.labels.end());
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());

  Database db;
  db.items = ItemTable(std::move(labels));
  db.transactions.reserve(raws.size());
  for (auto& r : raws) {
    Transaction t;
    t.tid = static_cast<Tid>(db.transactions.size() + 1);
    t.items.reserve(r.labels.size());
    for (Label l : r.labels) t.items.push_back(db.items.id(l));
    t.utils = std::move(r.utils);
    t.tu = r.declared_tu;
    db.transactions.push_back(std::move(t));
  }
  return db;
}

Database parse_dataset(std::string_view text, const ParseOptions& opts) {
  std::istringstream in{std::string(text)};
  return parse_dataset(in, opts);
}

Database load_dataset(const std::string& path, const ParseOptions& opts) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open dataset '" + path + "'");
  return parse_dataset(in, opts);
}

void write_dataset(const Database& db, std::ostream& out) {
  for (const auto& t : db.transactions) {
    for (std::size_t i = 0; i < t.items.size(); ++i) {
      if (i) out << ' ';
      out << db.items.label(t.items[i]);
    }
    out << ':' << t.tu << ':';
    for (std::size_t i = 0; i < t.utils.size(); ++i) {
      if (i) out << ' ';
      out << t.utils[i];
    }
    out << '\n';
  }
}

std::string write_dataset(const Database& db) {
  std::ostringstream out;
  write_dataset(db, out);
  return out.str();
}

std::unordered_map<Label, Utility> parse_profits(std::istream& in) {
  std::unordered_map<Label, Utility> profits;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    auto tokens = parse_tokens(line, line_no, "profit");
    if (tokens.size() != 2) throw ParseError(line_no, "expected 'label profit'");
    if (tokens[1] == 0) throw ParseError(line_no, "profits must be positive");
    profits[tokens[0]] = static_cast<Utility>(tokens[1]);
  }
  return profits;
}

std::unordered_map<Label, Utility> load_profits(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open profit table '" + path + "'");
  return parse_profits(in);
}

DatasetSummary dataset_summary(const Database& db) {
  if (db.empty()) throw Error("dataset summary of an empty database");
  std::vector<bool> seen(db.item_count(), false);
  std::size_t total_len = 0;
  for (const auto& t : db.transactions) {
    total_len += t.items.size();
    for (ItemId id : t.items) seen[id] = true;
  }
  DatasetSummary s;
  s.trans_count = db.size();
  s.item_count = static_cast<std::size_t>(std::count(seen.begin(), seen.end(), true));
  s.avg_len = static_cast<double>(total_len) / static_cast<double>(s.trans_count);
  s.density_pct = 100.0 * s.avg_len / static_cast<double>(s.item_count);
  return s;
}

namespace {

// Portable across standard libraries: mt19937_64 output is fully specified,
// the distributions are not.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
    return lo + engine_() % (hi - lo + 1);
  }
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

Database assemble(std::vector<std::pair<std::vector<Label>, std::vector<Utility>>> rows) {
  std::vector<Label> labels;
  for (const auto& r : rows) labels.insert(labels.end(), r.first.begin(), r.first.end());
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  Database db;
  db.items = ItemTable(std::move(labels));
  for (auto& [ls, us] : rows) {
    Transaction t;
    t.tid = static_cast<Tid>(db.transactions.size() + 1);
    for (Label l : ls) t.items.push_back(db.items.id(l));
    t.utils = std::move(us);
    t.tu = transaction_utility(t);
    db.transactions.push_back(std::move(t));
  }
  return db;
}

}  // namespace

Database gen_random_db(const RandomDbSpec& spec) {
  if (spec.max_items < 1 || spec.max_trans < 1 || spec.max_len < 1 ||
      spec.max_len > spec.max_items || spec.util_range.lo < 1 ||
      spec.util_range.hi < spec.util_range.lo) {
    throw Error("invalid random database spec");
  }
  Rng rng(spec.seed);
  auto n = static_cast<std::uint32_t>(rng.uniform((spec.max_trans + 1) / 2, spec.max_trans));
  std::vector<std::pair<std::vector<Label>, std::vector<Utility>>> rows;
  std::vector<Label> pool(spec.max_items);
  std::iota(pool.begin(), pool.end(), Label{1});
  for (std::uint32_t j = 0; j < n; ++j) {
    auto len = static_cast<std::size_t>(rng.uniform(1, spec.max_len));
    // partial Fisher-Yates
    for (std::size_t i = 0; i < len; ++i) {
      auto pick = static_cast<std::size_t>(rng.uniform(i, pool.size() - 1));
      std::swap(pool[i], pool[pick]);
    }
    std::vector<Label> ls(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(len));
    std::vector<Utility> us;
    for (std::size_t i = 0; i < len; ++i) {
      us.push_back(static_cast<Utility>(rng.uniform(static_cast<std::uint64_t>(spec.util_range.lo),
                                                    static_cast<std::uint64_t>(spec.util_range.hi))));
    }
    rows.emplace_back(std::move(ls), std::move(us));
  }
  return assemble(std::move(rows));
}

Database gen_categorical_db(const CategoricalDbSpec& spec) {
  if (spec.attribute_sizes.empty() || spec.trans_count < 1 || spec.profit_range.lo < 1 ||
      spec.quantity_range.lo < 1 || spec.profit_range.hi < spec.profit_range.lo ||
      spec.quantity_range.hi < spec.quantity_range.lo) {
    throw Error("invalid categorical database spec");
  }
  Rng rng(spec.seed);
  struct Attribute {
    Label first_label;
    std::vector<double> cumulative;
  };
  std::vector<Attribute> attrs;
  std::vector<Utility> profit;
  Label next = 1;
  for (auto size : spec.attribute_sizes) {
    if (size < 1) throw Error("attribute with no values");
    Attribute a{next, {}};
    double ratio = 0.3 + 0.6 * rng.unit();
    double w = 1.0, acc = 0.0;
    for (std::uint32_t v = 0; v < size; ++v, w *= ratio) {
      acc += w;
      a.cumulative.push_back(acc);
      profit.push_back(static_cast<Utility>(
          rng.uniform(static_cast<std::uint64_t>(spec.profit_range.lo),
                      static_cast<std::uint64_t>(spec.profit_range.hi))));
    }
    next += size;
    attrs.push_back(std::move(a));
  }
  std::vector<std::pair<std::vector<Label>, std::vector<Utility>>> rows;
  rows.reserve(spec.trans_count);
  for (std::uint32_t j = 0; j < spec.trans_count; ++j) {
    std::vector<Label> ls;
    std::vector<Utility> us;
    for (const auto& a : attrs) {
      double r = rng.unit() * a.cumulative.back();
      auto v = static_cast<std::size_t>(
          std::upper_bound(a.cumulative.begin(), a.cumulative.end(), r) - a.cumulative.begin());
      v = std::min(v, a.cumulative.size() - 1);
      // the first rows cycle through every value so each item occurs
      if (j < a.cumulative.size()) v = j;
      Label label = a.first_label + v;
      ls.push_back(label);
      auto qty = static_cast<Utility>(
          rng.uniform(static_cast<std::uint64_t>(spec.quantity_range.lo),
                      static_cast<std::uint64_t>(spec.quantity_range.hi)));
      us.push_back(profit[label - 1] * qty);
    }
    rows.emplace_back(std::move(ls), std::move(us));
  }
  return assemble(std::move(rows));
}

CategoricalDbSpec mushroom_like_spec(std::uint64_t seed) {
  CategoricalDbSpec spec;
  spec.seed = seed;
  spec.trans_count = 8124;
  // 4 attributes of 6 values and 19 of 5: 119 items.
  spec.attribute_sizes.assign(4, 6);
  spec.attribute_sizes.insert(spec.attribute_sizes.end(), 19, 5);
  return spec;
}

}  // namespace tkhui
