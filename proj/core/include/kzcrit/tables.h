// Copyright 2026 The kzcrit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef KZCRIT_TABLES_H
#define KZCRIT_TABLES_H

#include <string>
#include <string_view>
#include <vector>

#include "kzcrit/scaling.h"

namespace kzcrit {

// Every table starts with `#` comment lines (units, provenance) followed by a header row.

/// Header `T,t,x,value,stderr`.
std::string correlations_to_csv(const std::vector<DataPoint> &points, const std::string &comment = "");
/// Reads the format above; columns may come in any order. Throws ArgumentError.
std::vector<DataPoint> correlations_from_csv(std::string_view csv);

/// Header `nu,eta,chi2_per_dof`; failed cells are written as `nan`.
std::string surface_to_csv(const ScanResult &scan);
/// Rebuilds the grid from a surface table (argmin and bounds recomputed with `bounds_factor`).
ScanResult surface_from_csv(std::string_view csv, double bounds_factor = 1.2);

/// Splits one CSV line on commas (no quoting; none of our tables need it).
std::vector<std::string> split_csv_line(std::string_view line);

/// Shortest round-tripping decimal form.
std::string format_double(double v);

}  // namespace kzcrit

#endif
