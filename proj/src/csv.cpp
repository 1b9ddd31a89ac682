#include "sgiga/csv.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace sgiga {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  if (res.ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw std::invalid_argument("parse_double: not a number: '" + text + "'");
  return v;
}

namespace {

void append_row(std::string& text, const std::vector<std::string>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) text += ',';
    text += row[i];
  }
  text += '\n';
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
  append_row(text_, header);
}

void CsvWriter::add_row(const std::vector<std::string>& row) {
  if (row.size() != columns_) throw std::invalid_argument("CsvWriter: row width does not match header");
  append_row(text_, row);
}

std::string CsvWriter::str() const { return text_; }

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw std::invalid_argument("CsvTable: no column named " + name);
}

CsvTable parse_csv(const std::string& text) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split(line);
    if (first) {
      table.header = std::move(fields);
      first = false;
      continue;
    }
    if (fields.size() != table.header.size())
      throw std::invalid_argument("parse_csv: row width does not match header");
    table.rows.push_back(std::move(fields));
  }
  if (first) throw std::invalid_argument("parse_csv: missing header row");
  return table;
}

}  // namespace sgiga
