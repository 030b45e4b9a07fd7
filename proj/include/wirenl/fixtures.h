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

#ifndef WIRENL_FIXTURES_H_
#define WIRENL_FIXTURES_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wirenl/box.h"
#include "wirenl/rational.h"

namespace wirenl {

// Reference boxes and wiring tables compiled in from data/.
//   trilocal.box       trilocal box outside TOBL in cut 3:12
//   tight_bound.box    fully bilocal box with a tight signaling-weight bound
//   tts_box{1,2}.box, nns_box{1,2}.box   class representatives
//   wiring_tables.txt  canonical wirings with nonzero class value
const std::vector<std::pair<std::string, std::string>>& Fixtures();

// Throws std::out_of_range for unknown names.
const std::string& FixtureText(std::string_view name);
Box3 FixtureBox(std::string_view name);

struct WiringTableRow {
  int number;
  Rational wn;
  uint8_t eta;
};

// Rows for "NNS", "TTS", "NSS" or "TSS" in file order. Throws
// std::out_of_range for other labels.
std::vector<WiringTableRow> WiringTable(std::string_view label);

}  // namespace wirenl

#endif  // WIRENL_FIXTURES_H_
