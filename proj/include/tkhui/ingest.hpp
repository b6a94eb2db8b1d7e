#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tkhui/core.hpp"

namespace tkhui {

/// Malformed input line. `line()` is 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Declared transaction utility disagrees with the sum of item utilities.
class IntegrityError : public ParseError {
 public:
  using ParseError::ParseError;
};

struct ParseOptions {
  /// When false, a TU mismatch is repaired by recomputation instead of thrown.
  bool strict = true;
};

/// Reads `i1 .. iN:TU:u1 .. uN` lines. Lines starting with '#', '%' or '@'
/// and blank lines are skipped. Dense ids are assigned in ascending label
/// order; items keep their in-line order.
Database parse_dataset(std::istream& in, const ParseOptions& opts = {});
Database parse_dataset(std::string_view text, const ParseOptions& opts = {});
/// Throws Error if the file cannot be opened.
Database load_dataset(const std::string& path, const ParseOptions& opts = {});

void write_dataset(const Database& db, std::ostream& out);
std::string write_dataset(const Database& db);

/// `label profit` pairs, one per line; used by the PMUD anchor.
std::unordered_map<Label, Utility> parse_profits(std::istream& in);
std::unordered_map<Label, Utility> load_profits(const std::string& path);

struct DatasetSummary {
  std::size_t trans_count = 0;
  std::size_t item_count = 0;
  double avg_len = 0.0;
  double density_pct = 0.0;
};

/// item_count counts distinct items that occur. Throws Error on an empty db.
DatasetSummary dataset_summary(const Database& db);

struct UtilRange {
  Utility lo = 1;
  Utility hi = 10;
};

struct RandomDbSpec {
  std::uint64_t seed = 0;
  std::uint32_t max_items = 10;
  std::uint32_t max_trans = 20;
  std::uint32_t max_len = 5;
  UtilRange util_range;
};

/// Uniform random database: between ceil(max_trans/2) and max_trans
/// transactions, each of 1..max_len distinct items drawn from labels
/// 1..max_items. Bit-stable for a given seed.
Database gen_random_db(const RandomDbSpec& spec);

/// Attribute/value style data in the shape of the classic dense corpora:
/// every transaction holds exactly one value per attribute, values follow a
/// per-attribute geometric popularity, utility = profit(item) * quantity.
struct CategoricalDbSpec {
  std::uint64_t seed = 0;
  std::uint32_t trans_count = 1000;
  std::vector<std::uint32_t> attribute_sizes;
  UtilRange profit_range{1, 10};
  UtilRange quantity_range{1, 5};
};

Database gen_categorical_db(const CategoricalDbSpec& spec);

/// 8124 transactions over 119 items in 23 attributes (avg length 23).
CategoricalDbSpec mushroom_like_spec(std::uint64_t seed = 1);

}  // namespace tkhui
