// Tabular emitters shared by the command implementations.
//
// CSV: first line "# hcircle-csv v<N> command=<cmd> ..." then a header row,
// then data rows, LF endings; trailing "# " lines carry notes and summary
// values. JSON: {"meta": {...}, "rows": [...], "notes": [...], "summary": {...}}.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

namespace hcircle {

using Json = nlohmann::ordered_json;

inline constexpr int kOutputVersion = 1;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { csv, json, svg };
Format parse_format(const std::string& s);

// Shortest decimal that reads back to the same binary64.
std::string format_double(double v);

using Cell = std::variant<std::monostate, std::int64_t, std::uint64_t, double, bool, std::string>;

class Table {
 public:
  Table(std::string command, std::vector<std::string> columns);

  // meta entries appear in the CSV header comment and the JSON "meta" object
  void set_meta(const std::string& key, Json value);
  void add_row(std::vector<Cell> row);
  void add_note(std::string note);
  void set_summary(const std::string& key, Json value);

  std::size_t row_count() const { return rows_.size(); }

  void write(std::ostream& os, Format format) const;
  void write_csv(std::ostream& os) const;
  Json to_json() const;

 private:
  std::string command_;
  std::vector<std::string> columns_;
  std::vector<std::pair<std::string, Json>> meta_;
  std::vector<std::vector<Cell>> rows_;
  std::vector<std::string> notes_;
  std::vector<std::pair<std::string, Json>> summary_;
};

}  // namespace hcircle
