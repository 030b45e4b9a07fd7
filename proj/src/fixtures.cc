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

#include "wirenl/fixtures.h"

#include <sstream>
#include <stdexcept>

#include "wirenl/wiring.h"

namespace wirenl {

const std::vector<std::pair<std::string, std::string>>& Fixtures() {
  static const auto* fixtures = new std::vector<std::pair<std::string, std::string>>{
#include "wirenl_fixture_data.inc"
  };
  return *fixtures;
}

const std::string& FixtureText(std::string_view name) {
  for (const auto& [n, text] : Fixtures()) {
    if (n == name) return text;
  }
  throw std::out_of_range("unknown fixture: " + std::string(name));
}

Box3 FixtureBox(std::string_view name) { return ParseBox(FixtureText(name)); }

std::vector<WiringTableRow> WiringTable(std::string_view label) {
  std::istringstream in(FixtureText("wiring_tables.txt"));
  std::vector<WiringTableRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string table, value, poly;
    int number;
    fields >> table >> number >> value;
    if (table != label) continue;
    std::getline(fields, poly);
    rows.push_back({number, ParseRational(value), ParseEta(poly)});
  }
  if (rows.empty()) throw std::out_of_range("unknown wiring table: " + std::string(label));
  return rows;
}

}  // namespace wirenl
