// Copyright 2026 The wirenl Authors.
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

#ifndef WIRENL_CLI_H_
#define WIRENL_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace wirenl {

// One compared value of the reproduction report. status is PASS, FAIL or
// FLAG; FLAG marks a known disagreement with the published value.
struct ReportCell {
  std::string table;
  std::string cell;
  std::string computed;
  std::string published;
  std::string status;
};

struct Report {
  std::vector<ReportCell> cells;

  // True when every cell is PASS.
  bool ok() const;
};

// Recomputes every published value from the embedded fixtures.
Report ReproduceTables();

// Aligned columns, or one "table cell computed published status" record per
// line when machine is set. Values contain no spaces.
std::string FormatReport(const Report& report, bool machine);

// Command-line entry point. Returns 0 on success, 1 on usage or input errors
// and 2 when a reproduce run has FAIL or FLAG cells.
int Run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace wirenl

#endif  // WIRENL_CLI_H_
