// Copyright 2026 The oqs-toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "oqs/analysis/csv.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace oqs {

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, ptr);
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const char* b = s.data();
  const char* e = b + s.size();
  const auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr != e) throw std::invalid_argument("parse_double: not a number: '" + s + "'");
  return v;
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == name) return c;
  }
  throw std::out_of_range("CsvTable: no column '" + name + "'");
}

double CsvTable::number(std::size_t row, const std::string& name) const { return parse_double(rows.at(row).at(column(name))); }

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

void write_row(std::ostream& os, const std::vector<std::string>& cells) {
  for (std::size_t c = 0; c < cells.size(); ++c) {
    if (cells[c].find_first_of(",\n") != std::string::npos) throw std::invalid_argument("write_csv: cell contains a separator");
    os << (c ? "," : "") << cells[c];
  }
  os << '\n';
}

}  // namespace

void write_csv(std::ostream& os, const CsvTable& table) {
  for (const auto& c : table.comments) os << "# " << c << '\n';
  write_row(os, table.header);
  for (const auto& r : table.rows) {
    if (r.size() != table.header.size()) throw std::invalid_argument("write_csv: row width differs from header");
    write_row(os, r);
  }
}

CsvTable read_csv(std::istream& is) {
  CsvTable t;
  std::string line;
  bool have_header = false;
  while (std::getline(is, line)) {
    if (!have_header && line.rfind("#", 0) == 0) {
      t.comments.push_back(line.size() > 2 ? line.substr(2) : "");
      continue;
    }
    if (line.empty()) continue;
    if (!have_header) {
      t.header = split(line);
      have_header = true;
    } else {
      t.rows.push_back(split(line));
    }
  }
  return t;
}

void write_csv_file(const std::string& path, const CsvTable& table) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_csv(os, table);
  if (!os) throw std::runtime_error("failed writing '" + path + "'");
}

CsvTable read_csv_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open '" + path + "'");
  return read_csv(is);
}

CsvTable evolution_table(const EvolutionRecord& rec) {
  CsvTable t;
  t.header.push_back("time");
  for (const auto& n : rec.observable_names) t.header.push_back(n);
  for (std::size_t k = 0; k < rec.times.size(); ++k) {
    std::vector<std::string> row{format_double(rec.times[k])};
    for (double v : rec.values[k]) row.push_back(format_double(v));
    t.rows.push_back(std::move(row));
  }
  return t;
}

CsvTable ensemble_table(const EnsembleResult& res) {
  CsvTable t;
  t.comments.push_back("master_seed=" + std::to_string(res.master_seed));
  t.header = {"time", "observable", "mean", "stderr", "M"};
  for (const auto& row : res.estimates) {
    for (const auto& e : row) {
      t.rows.push_back({format_double(e.time), e.observable, format_double(e.mean), format_double(e.std_error),
                        std::to_string(e.count)});
    }
  }
  return t;
}

CsvTable scan_table(const std::vector<ScanPoint>& points) {
  CsvTable t;
  t.header = {"param1", "param2", "stable_count", "densities"};
  for (const auto& p : points) {
    std::string dens;
    for (std::size_t k = 0; k < p.densities.size(); ++k) dens += (k ? ";" : "") + format_double(p.densities[k]);
    t.rows.push_back({format_double(p.p1), format_double(p.p2), std::to_string(p.stable_count), dens});
  }
  return t;
}

CsvTable sweep_table(const std::vector<SweepPoint>& points, const std::string& branch) {
  CsvTable t;
  t.header = {"parameter", "branch", "n_r", "D_value", "restarts_used"};
  for (const auto& p : points) {
    t.rows.push_back({format_double(p.parameter), branch, format_double(p.n_r), format_double(p.D_value),
                      std::to_string(p.restarts_used)});
  }
  return t;
}

}  // namespace oqs
