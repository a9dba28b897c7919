#include "hcircle/output.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace hcircle {

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  if (s == "svg") return Format::svg;
  throw UsageError("unknown format '" + s + "' (expected csv, json or svg)");
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

Table::Table(std::string command, std::vector<std::string> columns)
    : command_(std::move(command)), columns_(std::move(columns)) {}

void Table::set_meta(const std::string& key, Json value) { meta_.emplace_back(key, std::move(value)); }

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size()) throw std::logic_error("Table::add_row: wrong number of cells");
  rows_.push_back(std::move(row));
}

void Table::add_note(std::string note) { notes_.push_back(std::move(note)); }

void Table::set_summary(const std::string& key, Json value) { summary_.emplace_back(key, std::move(value)); }

namespace {

std::string csv_cell(const Cell& c) {
  struct Visitor {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(std::uint64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const std::string& v) const {
      if (v.find_first_of(",\"\n") == std::string::npos) return v;
      std::string out = "\"";
      for (char ch : v) {
        if (ch == '"') out += '"';
        out += ch;
      }
      return out + "\"";
    }
  };
  return std::visit(Visitor{}, c);
}

Json json_cell(const Cell& c) {
  struct Visitor {
    Json operator()(std::monostate) const { return nullptr; }
    Json operator()(std::int64_t v) const { return v; }
    Json operator()(std::uint64_t v) const { return v; }
    Json operator()(double v) const {
      if (!std::isfinite(v)) return nullptr;
      return v;
    }
    Json operator()(bool v) const { return v; }
    Json operator()(const std::string& v) const { return v; }
  };
  return std::visit(Visitor{}, c);
}

std::string plain(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return format_double(v.get<double>());
  return v.dump();
}

}  // namespace

void Table::write_csv(std::ostream& os) const {
  os << "# hcircle-csv v" << kOutputVersion << " command=" << command_;
  for (const auto& [k, v] : meta_) os << ' ' << k << '=' << plain(v);
  os << '\n';
  for (std::size_t i = 0; i < columns_.size(); ++i) os << (i ? "," : "") << columns_[i];
  os << '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
    os << '\n';
  }
  for (const auto& n : notes_) os << "# note: " << n << '\n';
  for (const auto& [k, v] : summary_) os << "# summary " << k << '=' << plain(v) << '\n';
}

Json Table::to_json() const {
  Json j;
  Json meta;
  meta["command"] = command_;
  meta["version"] = std::to_string(kOutputVersion);
  for (const auto& [k, v] : meta_) meta[k] = v;
  j["meta"] = meta;
  Json rows = Json::array();
  for (const auto& row : rows_) {
    Json r;
    for (std::size_t i = 0; i < row.size(); ++i) r[columns_[i]] = json_cell(row[i]);
    rows.push_back(std::move(r));
  }
  j["rows"] = rows;
  j["notes"] = notes_;
  Json summary = Json::object();
  for (const auto& [k, v] : summary_) summary[k] = v;
  j["summary"] = summary;
  return j;
}

void Table::write(std::ostream& os, Format format) const {
  switch (format) {
    case Format::csv:
      write_csv(os);
      return;
    case Format::json:
      os << to_json().dump(2) << '\n';
      return;
    case Format::svg:
      throw UsageError("svg output is only available for the plot command");
  }
}

}  // namespace hcircle
