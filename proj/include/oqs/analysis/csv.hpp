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

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "oqs/liouvillian/integrate.hpp"
#include "oqs/meanfield/meanfield.hpp"
#include "oqs/trajectories/ensemble.hpp"
#include "oqs/variational/variational.hpp"

namespace oqs {

/// Shortest-round-trip-safe rendering: 17 significant digits, '.' separator,
/// independent of the global locale.
std::string format_double(double v);
double parse_double(const std::string& s);

struct CsvTable {
  /// Lines starting with '#' before the header, without the marker.
  std::vector<std::string> comments;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const;
  double number(std::size_t row, const std::string& name) const;
};

void write_csv(std::ostream& os, const CsvTable& table);
CsvTable read_csv(std::istream& is);
void write_csv_file(const std::string& path, const CsvTable& table);
CsvTable read_csv_file(const std::string& path);

/// time, then one column per observable.
CsvTable evolution_table(const EvolutionRecord& rec);
/// time, observable, mean, stderr, M; master seed in a comment line.
CsvTable ensemble_table(const EnsembleResult& res);
/// param1, param2, stable_count, densities (semicolon-joined).
CsvTable scan_table(const std::vector<ScanPoint>& points);
/// parameter, branch, n_r, D_value, restarts_used.
CsvTable sweep_table(const std::vector<SweepPoint>& points, const std::string& branch);

}  // namespace oqs
