#include <cstdio>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "divsum/cli.hpp"

namespace divsum::cli {

void Table::column(std::string name, bool is_raw) {
  columns.push_back(std::move(name));
  raw.push_back(is_raw);
}

void Table::add(std::vector<std::string> row) {
  if (row.size() != columns.size()) throw std::logic_error("row width does not match header");
  rows.push_back(std::move(row));
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_bool(bool b) { return b ? "true" : "false"; }

namespace {

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + '"';
}

void write_delimited(const Table& t, char sep, std::ostream& out) {
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << sep;
      out << (sep == ',' ? csv_cell(cells[i]) : cells[i]);
    }
    out << '\n';
  };
  line(t.columns);
  for (const auto& r : t.rows) line(r);
}

void write_json(const Table& t, std::ostream& out) {
  out << '[';
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    out << (r ? ",\n  {" : "\n  {");
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
      if (i) out << ", ";
      out << nlohmann::json(t.columns[i]).dump() << ": ";
      const std::string& v = t.rows[r][i];
      if (t.raw[i])
        out << (v.empty() || v == "nan" || v == "inf" || v == "-inf" ? "null" : v);
      else
        out << nlohmann::json(v).dump();
    }
    out << '}';
  }
  out << (t.rows.empty() ? "]\n" : "\n]\n");
}

}  // namespace

void write(const Table& t, Format f, std::ostream& out) {
  switch (f) {
    case Format::kCsv: write_delimited(t, ',', out); break;
    case Format::kTsv: write_delimited(t, '\t', out); break;
    case Format::kJson: write_json(t, out); break;
  }
}

}  // namespace divsum::cli
